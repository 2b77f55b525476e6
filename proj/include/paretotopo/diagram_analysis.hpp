#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paretotopo/persistence.hpp"

namespace paretotopo {

/// Diagonal band of half-width `half_width`: a pair is noise iff
/// death - birth <= 2 * half_width.
struct ConfidenceBand {
  double half_width = 0.0;
  double alpha = 0.05;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<double> bootstrap_distances; ///< one per replicate, in replicate order
};

struct DiameterEstimate {
  double delta = 0.0;
  double max_birth = 0.0;
  double min_death = 0.0;
  bool consistent = false; ///< max_birth < min_death
};

/// Bottleneck distance between the dimension-`dim` parts of two diagrams.
/// Essential classes take part with their capped death.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

/// What each bootstrap replicate contributes to the quantile.
enum class BandMethod {
  /// Bottleneck distance between the replicate's diagram and the full diagram.
  bottleneck,
  /// 2 d_H(resample, sample), the stability bound on the replicate's
  /// bottleneck distance. No replicate diagrams are built.
  hausdorff,
};

struct BandOptions {
  BandMethod method = BandMethod::bottleneck;
  /// Filtration cap shared by the full sample and every replicate.
  std::optional<double> delta_max;
  /// Homology dimensions 0..homology_dim enter the distance; defaults to maxdim-1.
  std::optional<int> homology_dim;
  int jobs = 1;
};

/// Bootstrap band: B resamples with replacement, bottleneck distance of each
/// replicate's diagram to the full-sample diagram (max over dimensions), and
/// the empirical (1 - alpha) quantile (the ceil((1-alpha)B)-th smallest).
ConfidenceBand confidence_band(const PointCloud& pc, double alpha, int replicates, int maxdim, std::uint64_t seed,
                               const BandOptions& options = {});

/// Bottleneck bootstrap for a precomputed distance matrix and full-sample diagram.
ConfidenceBand confidence_band(const DistanceMatrix& dm, const PersistenceDiagram& full, double alpha,
                               int replicates, int maxdim, std::uint64_t seed, int jobs = 1);

/// Hausdorff bootstrap: the (1 - alpha) quantile of 2 d_H(resample, sample).
ConfidenceBand hausdorff_band(const DistanceMatrix& dm, double alpha, int replicates, std::uint64_t seed,
                              int jobs = 1);

/// Pairs above the band; essential classes always count as signal.
std::vector<PersistencePair> signal_pairs(const PersistenceDiagram& diagram, const ConfidenceBand& band);

/// Middle of the common lifetime: (max birth + min death) / 2 over the signal.
DiameterEstimate estimate_diameter(const std::vector<PersistencePair>& signal, double delta_max);

struct SvgOptions {
  int size = 480;
  std::string title;
  std::optional<double> delta; ///< marks the chosen diameter
};

/// Persistence diagram with the diagonal, the shaded 2c band, and one marker
/// shape per dimension (square, triangle, circle).
std::string render_diagram_svg(const PersistenceDiagram& diagram, const ConfidenceBand& band,
                               const SvgOptions& options = {});

} // namespace paretotopo
