#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paretotopo/problems.hpp"
#include "paretotopo/simplicity.hpp"

namespace paretotopo {

struct TrialConfig {
  Problem problem = Problem::med;
  int trials = 10;
  std::uint64_t base_seed = 1; ///< trial i (0-based) uses base_seed + i
  std::size_t n_points = 300;
  SampleOptions sample;
  AnalysisConfig analysis; ///< its seed is replaced by the trial seed
  int jobs = 1;            ///< trials run concurrently
};

struct TrialRow {
  int trial = 0; ///< 1-based
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::size_t points = 0;
  double delta = 0.0;
  bool consistent = false;
  std::vector<int> betti;
  bool s1_violated = false;
  std::optional<bool> s2_violated;
  std::size_t witnesses = 0;
  double seconds = 0.0;
};

/// One line in the shape of the results table.
struct TrialSummary {
  std::string problem;
  int trials = 0;
  int completed = 0;
  double average_delta = 0.0;
  int s1_unsatisfied = 0;
  int s2_unsatisfied = 0;
};

struct TrialsResult {
  std::vector<TrialRow> rows;
  TrialSummary summary;
};

/// Sample + analyze per trial. Failures are recorded per row, not thrown.
TrialsResult run_trials(const TrialConfig& config);

/// Header: Problem,Trials,Completed,Average delta,S1_unsatisfied,S2_unsatisfied
std::string trial_summary_csv(const TrialSummary& summary);
/// One row per trial; failed trials carry status "failed" and the message.
std::string trial_rows_csv(const std::vector<TrialRow>& rows);

struct BenchConfig {
  Problem problem = Problem::med;
  std::vector<std::size_t> n_list{50, 100, 200};
  std::vector<int> maxdim_list{1, 2};
  std::optional<double> delta_max = 1.0; ///< nullopt: largest pairwise distance
  int repeats = 3;                       ///< wall times are medians over repeats
  std::uint64_t seed = 1;
  std::size_t simplex_cap = 0; ///< 0: default_simplex_cap()
};

struct BenchRow {
  std::size_t n = 0;
  int maxdim = 0;
  double delta_max = 0.0;
  bool finished = false;
  std::string note;
  std::vector<std::size_t> counts; ///< simplices per dimension
  std::size_t simplices = 0;
  std::size_t record_bytes = 0;    ///< bytes per stored simplex
  std::size_t memory_bytes = 0;    ///< simplices * record_bytes
  double t_distances = 0, t_filtration = 0, t_persistence = 0, t_total = 0;
};

/// Phase wall times and simplex counts over the (n, maxdim) grid. A tripped
/// simplex cap yields an unfinished (DNF) row instead of an error.
std::vector<BenchRow> run_bench(const BenchConfig& config);
std::string bench_csv(const std::vector<BenchRow>& rows, const BenchConfig& config);

} // namespace paretotopo
