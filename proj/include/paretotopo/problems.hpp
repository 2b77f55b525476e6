#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paretotopo/pointset.hpp"

namespace paretotopo {

enum class Problem { med, gapped_med, dtlz5, dtlz7 };

struct ProblemSpec {
  Problem problem;
  std::string name;
  std::size_t n;             ///< decision variables
  std::size_t m;             ///< objectives
  std::vector<double> lower; ///< per-variable box (may be infinite)
  std::vector<double> upper;
};

/// (40,6)-MED, (40,6)-Gapped MED, (12,3)-DTLZ5, (22,3)-DTLZ7.
ProblemSpec problem_spec(Problem p);
/// Accepts "med", "gapped-med" (also "gapped_med", "gmed"), "dtlz5", "dtlz7".
Problem parse_problem(std::string_view name);
std::string problem_name(Problem p);

/// MED exponent p_i = exp((2i - 7) / 5), i = 1..6.
double med_exponent(int i);

/// f_i(x) = (||x - e_i|| / sqrt 2)^{p_i}, i = 1..6, x in R^40.
std::vector<double> med_eval(std::span<const double> x);
/// MED values g_i pushed through 2/3 g (g <= 1/2) or 2/3 g + 1/3 (g > 1/2).
std::vector<double> gapped_med_eval(std::span<const double> x);
double gap_transform(double g);

/// Standard DTLZ5 with M = 3 on [0,1]^12.
std::vector<double> dtlz5_eval(std::span<const double> x);
/// Standard DTLZ7 with M = 3 on [0,1]^22.
std::vector<double> dtlz7_eval(std::span<const double> x);

std::vector<double> evaluate(Problem p, std::span<const double> x);
Matrix evaluate_all(Problem p, const Matrix& x);

struct SampleOptions {
  /// DTLZ7 candidates drawn per requested point before non-dominated filtering.
  double oversample = 64.0;
};

/// Pareto-set sample with objectives filled in.
///  - MED / Gapped MED: uniform on the simplex [e_1..e_6] in R^40 (Dirichlet(1) weights).
///  - DTLZ5: x1, x2 uniform, distance variables at 0.5, then non-dominated filter.
///  - DTLZ7: x1, x2 uniform, distance variables at 0, oversampled and filtered
///    down to the first n_points survivors.
PointCloud sample_pareto(Problem p, std::size_t n_points, std::uint64_t seed, const SampleOptions& options = {});

/// max_i w_i (fx_i - z_i) with w on the standard simplex.
double chebyshev_scalarize(std::span<const double> fx, std::span<const double> w, std::span<const double> z);

} // namespace paretotopo
