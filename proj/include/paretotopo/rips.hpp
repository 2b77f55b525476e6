#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "paretotopo/pointset.hpp"

namespace paretotopo {

struct Simplex {
  std::vector<Index> vertices; // strictly increasing
  double diameter = 0.0;

  int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Default cap on the number of simplices a single build may produce.
inline constexpr std::size_t kDefaultSimplexCap = 50'000'000;

/// Simplex-count cap, honouring the PARETOTOPO_SIMPLEX_CAP environment variable.
std::size_t default_simplex_cap();

/// Rips simplices up to `maxdim`, sorted by (diameter, dimension, vertices).
///
/// Storage is flat: vertex lists use a fixed stride of maxdim+1 so that a
/// few million triangles fit in a compact buffer.
class Filtration {
public:
  Filtration() = default;

  /// Builds a filtration from an explicit simplex list in the given order.
  /// Checks face closure, faces-before-cofaces and non-decreasing diameter;
  /// the order among equal diameters is taken as is.
  static Filtration from_simplices(std::span<const Simplex> simplices, std::size_t num_points, int maxdim,
                                   double delta_max);

  std::size_t size() const noexcept { return diam_.size(); }
  bool empty() const noexcept { return diam_.empty(); }
  int maxdim() const noexcept { return maxdim_; }
  double delta_max() const noexcept { return delta_max_; }
  std::size_t num_points() const noexcept { return num_points_; }

  int dim(std::size_t i) const { return dim_[i]; }
  double diameter(std::size_t i) const { return diam_[i]; }
  std::span<const Index> vertices(std::size_t i) const {
    return {verts_.data() + i * stride(), static_cast<std::size_t>(dim_[i]) + 1};
  }
  Simplex simplex(std::size_t i) const;

  /// Number of leading simplices with diameter <= delta.
  std::size_t prefix_size(double delta) const;
  /// The complex K_delta as its own filtration (delta_max = delta).
  Filtration restricted(double delta) const;

  /// Approximate bytes held by the simplex records.
  std::size_t memory_bytes() const noexcept;

private:
  friend class FiltrationBuilder;
  std::size_t stride() const noexcept { return static_cast<std::size_t>(maxdim_) + 1; }

  int maxdim_ = 0;
  double delta_max_ = 0.0;
  std::size_t num_points_ = 0;
  std::vector<Index> verts_;
  std::vector<double> diam_;
  std::vector<std::uint8_t> dim_;
};

/// K_delta^maxdim: every vertex set of size <= maxdim+1 with all pairwise
/// distances <= delta.
Filtration build_rips(const DistanceMatrix& dm, double delta, int maxdim,
                      std::size_t simplex_cap = default_simplex_cap());

/// Full Rips filtration up to delta_max (default: the largest pairwise distance).
Filtration build_filtration(const DistanceMatrix& dm, int maxdim, std::optional<double> delta_max = std::nullopt,
                            std::size_t simplex_cap = default_simplex_cap());

/// Simplex counts per dimension 0..maxdim.
std::vector<std::size_t> simplex_count_profile(const Filtration& f);

/// Debug dump: rows (dim, diameter, v0..vk).
void write_filtration_csv(const std::filesystem::path& path, const Filtration& f);

/// Strict weak order used for filtrations: (diameter, dimension, lexicographic vertices).
bool filtration_less(double da, std::span<const Index> va, double db, std::span<const Index> vb);

} // namespace paretotopo
