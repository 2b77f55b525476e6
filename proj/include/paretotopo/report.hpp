#pragma once

#include <string>
#include <string_view>

#include "paretotopo/simplicity.hpp"

namespace paretotopo {

struct ReportOptions {
  bool timings = false; ///< wall-clock seconds per phase (breaks byte-identical output)
  bool diagram = true;  ///< full persistence diagram per subset
  std::string run = "{}"; ///< caller's run description, echoed verbatim as a JSON object
};

struct AnalysisRequest {
  AnalysisConfig config;
  ReportOptions report;
};

/// Parses an analysis configuration object. Recognised keys:
///   subsets ("full" | "all" | k), alpha, bootstrap, maxdim, delta (number|null),
///   delta_max (number | "auto"), band ("hausdorff" | "bottleneck"), s2 (bool),
///   pair_dim (k | "all"), eps, max_witnesses, seed, jobs, timings, diagram, run (object).
/// Missing keys keep their defaults; unknown keys are rejected.
AnalysisRequest parse_analysis_request(std::string_view json);

/// Normalised configuration as a JSON object.
std::string config_to_json(const AnalysisConfig& config);

/// Report document; identical input gives byte-identical output unless
/// timings are requested.
std::string report_to_json(const SimplicityReport& report, const ReportOptions& options = {});

std::string band_method_name(BandMethod m);

} // namespace paretotopo
