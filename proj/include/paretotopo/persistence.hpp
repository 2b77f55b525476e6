#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "paretotopo/rips.hpp"

namespace paretotopo {

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;

  double persistence() const noexcept { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Birth-death pairs over Z/2. Essential classes carry death == delta_max.
struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
  double delta_max = 0.0;
  int max_dim = 0;                            ///< homology dimensions 0..max_dim were computed
  std::vector<std::size_t> zero_persistence;  ///< per dimension, pairs with birth == death

  std::vector<PersistencePair> in_dim(int dim) const;
  std::size_t count(int dim, bool essential) const;
};

struct PersistenceOptions {
  /// Highest homology dimension to compute. Defaults to the filtration's
  /// maxdim; classes in that top dimension can never die and are reported
  /// as essential.
  std::optional<int> max_dim;
  /// Keep birth == death pairs in `pairs` (normally only counted).
  bool keep_zero_persistence = false;
};

PersistenceDiagram compute_persistence(const Filtration& filtration, const PersistenceOptions& options = {});

/// Betti numbers beta_0..beta_max_dim of K_delta read off the diagram:
/// pairs with birth <= delta < death, essential ones while delta <= delta_max.
std::vector<int> betti_at(const PersistenceDiagram& diagram, double delta);

/// Betti numbers of the complex by dense Gaussian elimination over Z/2.
/// Independent of compute_persistence; intended for small complexes.
std::vector<int> homology_rank_oracle(const Filtration& complex, std::size_t max_simplices = 2000);

/// Rows (dim, birth, death, essential).
void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& d);

} // namespace paretotopo
