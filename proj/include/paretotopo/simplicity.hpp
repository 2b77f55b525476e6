#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paretotopo/diagram_analysis.hpp"
#include "paretotopo/lp.hpp"
#include "paretotopo/persistence.hpp"

namespace paretotopo {

struct S1Verdict {
  double delta_used = 0.0;
  std::vector<int> betti; ///< beta_0..beta_k at delta_used
  bool violated = false;
  std::vector<std::string> reasons; ///< e.g. "beta_0 = 4 != 1"
};

/// violated iff beta_0 != 1 or beta_k != 0 for some k >= 1.
S1Verdict s1_verdict(std::vector<int> betti, double delta);

/// Betti numbers of K_delta^maxdim in dimensions 0..maxdim-1 (the top
/// dimension of a maxdim-skeleton cannot be filled, so it is not checked).
S1Verdict test_s1(const DistanceMatrix& dm, double delta, int maxdim);
inline S1Verdict test_s1(const PointCloud& pc, double delta, int maxdim) {
  return test_s1(pairwise_distances(pc), delta, maxdim);
}
/// Same, read off an existing diagram (delta <= diagram.delta_max).
S1Verdict test_s1(const PersistenceDiagram& diagram, double delta);

/// A simplex together with the images of its vertices.
struct MappedHull {
  std::vector<Index> vertices;
  Matrix image; ///< one row per vertex
};

/// Every simplex of the complex paired with its image vertex list.
std::vector<MappedHull> mapped_hull_family(const Filtration& complex, const Matrix& objectives);

struct S2Witness {
  std::vector<Index> sigma;
  std::vector<Index> tau;
  std::vector<double> a; ///< barycentric coefficients on sigma
  std::vector<double> b; ///< barycentric coefficients on tau
  double t = 0.0;        ///< min over a and b
};

struct S2Options {
  /// Simplex dimension whose pairs are tested; nullopt tests every pair of
  /// simplices of any dimensions.
  std::optional<int> pair_dim = 1;
  double eps = kDefaultStrictEps;
  /// Stop after this many witnesses (0 = enumerate everything).
  std::size_t max_witnesses = 16;
};

struct S2Verdict {
  bool violated = false;
  std::vector<S2Witness> witnesses;
  std::vector<int> dims;                ///< simplex dimensions taken part
  std::size_t simplices = 0;            ///< simplices taken part
  std::uint64_t pairs_total = 0;        ///< unordered pairs of distinct simplices
  std::uint64_t pairs_checked = 0;      ///< pairs whose image bounding boxes meet, up to the stop
  std::uint64_t lp_solves = 0;
  std::uint64_t inconclusive_pairs = 0; ///< LP numerical failures
  std::size_t degenerate_images = 0;    ///< simplices with affinely dependent images
  bool early_stop = false;
};

/// Looks for distinct simplices sigma, tau whose image hulls share a point
/// with strictly positive barycentric coordinates on both sides.
S2Verdict test_s2(const Filtration& complex, const Matrix& objectives, const S2Options& options = {});

struct PairOutcome {
  bool lp_solved = false;
  bool inconclusive = false; ///< the LP reported a numerical failure
};

/// Decides a single pair; returns the witness when the hull interiors meet.
std::optional<S2Witness> intersect_pair(std::span<const Index> sigma, std::span<const Index> tau,
                                        const Matrix& objectives, double eps, PairOutcome* outcome = nullptr);

enum class SubsetMode { full, all, up_to };

struct AnalysisConfig {
  SubsetMode subsets = SubsetMode::full;
  int max_subset_size = 0; ///< for SubsetMode::up_to
  double alpha = 0.05;
  int bootstrap = 100;
  int maxdim = 2;
  std::optional<double> delta;              ///< override of the estimate
  std::optional<double> delta_max = 1.0;    ///< nullopt: largest pairwise distance
  BandMethod band = BandMethod::hausdorff;
  bool run_s2 = true;
  S2Options s2;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct PhaseTimes {
  double distances = 0, filtration = 0, persistence = 0, band = 0, s1 = 0, s2 = 0;
};

struct SubsetResult {
  std::vector<int> subset; ///< objective indices
  std::size_t num_points = 0;
  std::optional<std::string> skipped; ///< set when tests could not run
  double delta_max = 0.0;
  std::vector<std::size_t> simplex_counts;
  PersistenceDiagram diagram;
  ConfidenceBand band;
  std::vector<PersistencePair> signal;
  std::optional<DiameterEstimate> estimate;
  double delta = 0.0;
  bool delta_overridden = false;
  S1Verdict s1;
  std::optional<S2Verdict> s2;
  PhaseTimes times;
};

struct SimplicityReport {
  AnalysisConfig config;
  std::size_t num_points = 0;
  std::size_t dim = 0;
  std::size_t num_objectives = 0;
  std::vector<SubsetResult> results; ///< ordered by subset size, then lexicographically
};

/// Objective subsets requested by the configuration, full set included.
std::vector<std::vector<int>> requested_subsets(std::size_t m, const AnalysisConfig& config);

/// Band seed of a subset: the configured seed for the full problem, a
/// derived stream otherwise.
std::uint64_t subset_seed(std::uint64_t seed, const std::vector<int>& subset, std::size_t m);

/// Non-dominated filter, diagram, band, diameter estimate, S1 and S2 for
/// each requested subset.
SimplicityReport analyze(const PointCloud& pc, const AnalysisConfig& config);

} // namespace paretotopo
