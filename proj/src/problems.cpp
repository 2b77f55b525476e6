#include "paretotopo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "paretotopo/rng.hpp"

namespace paretotopo {

ProblemSpec problem_spec(Problem p) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (p) {
  case Problem::med:
    return {p, "med", 40, 6, std::vector<double>(40, -inf), std::vector<double>(40, inf)};
  case Problem::gapped_med:
    return {p, "gapped-med", 40, 6, std::vector<double>(40, -inf), std::vector<double>(40, inf)};
  case Problem::dtlz5:
    return {p, "dtlz5", 12, 3, std::vector<double>(12, 0.0), std::vector<double>(12, 1.0)};
  case Problem::dtlz7:
    return {p, "dtlz7", 22, 3, std::vector<double>(22, 0.0), std::vector<double>(22, 1.0)};
  }
  throw Error(Errc::invalid_argument, "unknown problem");
}

Problem parse_problem(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "med") return Problem::med;
  if (s == "gapped-med" || s == "gapped_med" || s == "gappedmed" || s == "gmed") return Problem::gapped_med;
  if (s == "dtlz5") return Problem::dtlz5;
  if (s == "dtlz7") return Problem::dtlz7;
  throw Error(Errc::invalid_argument, "unknown problem '" + std::string(name) +
                                          "' (expected med, gapped-med, dtlz5 or dtlz7)");
}

std::string problem_name(Problem p) { return problem_spec(p).name; }

double med_exponent(int i) { return std::exp((2.0 * i - 7.0) / 5.0); }

namespace {

void require_size(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() != n)
    throw Error(Errc::invalid_argument, std::string(what) + " expects " + std::to_string(n) + " variables, got " +
                                            std::to_string(x.size()));
  for (double v : x)
    if (!std::isfinite(v)) throw Error(Errc::invalid_argument, std::string(what) + ": non-finite input");
}

void require_unit_box(std::span<const double> x, const char* what) {
  for (double v : x)
    if (v < 0.0 || v > 1.0) throw Error(Errc::invalid_argument, std::string(what) + ": input outside [0,1]^n");
}

std::vector<double> med_base(std::span<const double> x) {
  std::vector<double> g(6);
  double sq = 0.0;
  for (double v : x) sq += v * v;
  for (std::size_t i = 0; i < 6; ++i) {
    // ||x - e_i||^2 = ||x||^2 - 2 x_i + 1
    const double d2 = std::max(0.0, sq - 2.0 * x[i] + 1.0);
    g[i] = std::pow(std::sqrt(d2) / std::numbers::sqrt2, med_exponent(static_cast<int>(i) + 1));
  }
  return g;
}

} // namespace

std::vector<double> med_eval(std::span<const double> x) {
  require_size(x, 40, "MED");
  return med_base(x);
}

double gap_transform(double g) { return g <= 0.5 ? (2.0 / 3.0) * g : (2.0 / 3.0) * g + 1.0 / 3.0; }

std::vector<double> gapped_med_eval(std::span<const double> x) {
  require_size(x, 40, "Gapped MED");
  auto g = med_base(x);
  for (double& v : g) v = gap_transform(v);
  return g;
}

std::vector<double> dtlz5_eval(std::span<const double> x) {
  require_size(x, 12, "DTLZ5");
  require_unit_box(x, "DTLZ5");
  double g = 0.0;
  for (std::size_t i = 2; i < 12; ++i) g += (x[i] - 0.5) * (x[i] - 0.5);
  const double half_pi = std::numbers::pi / 2.0;
  const double theta1 = x[0] * half_pi;
  const double theta2 = std::numbers::pi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[1]);
  return {(1.0 + g) * std::cos(theta1) * std::cos(theta2), (1.0 + g) * std::cos(theta1) * std::sin(theta2),
          (1.0 + g) * std::sin(theta1)};
}

std::vector<double> dtlz7_eval(std::span<const double> x) {
  require_size(x, 22, "DTLZ7");
  require_unit_box(x, "DTLZ7");
  double s = 0.0;
  for (std::size_t i = 2; i < 22; ++i) s += x[i];
  const double g = 1.0 + 9.0 / 20.0 * s;
  const double f1 = x[0], f2 = x[1];
  double h = 3.0;
  for (double f : {f1, f2}) h -= f / (1.0 + g) * (1.0 + std::sin(3.0 * std::numbers::pi * f));
  return {f1, f2, (1.0 + g) * h};
}

std::vector<double> evaluate(Problem p, std::span<const double> x) {
  switch (p) {
  case Problem::med: return med_eval(x);
  case Problem::gapped_med: return gapped_med_eval(x);
  case Problem::dtlz5: return dtlz5_eval(x);
  case Problem::dtlz7: return dtlz7_eval(x);
  }
  throw Error(Errc::invalid_argument, "unknown problem");
}

Matrix evaluate_all(Problem p, const Matrix& x) {
  const auto spec = problem_spec(p);
  Matrix f(x.rows(), spec.m);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto fi = evaluate(p, x.row(i));
    std::copy(fi.begin(), fi.end(), f.row(i).begin());
  }
  return f;
}

PointCloud sample_pareto(Problem p, std::size_t n_points, std::uint64_t seed, const SampleOptions& options) {
  if (n_points < 1) throw Error(Errc::invalid_argument, "n_points must be >= 1");
  const auto spec = problem_spec(p);
  CounterRng rng(seed);

  switch (p) {
  case Problem::med:
  case Problem::gapped_med: {
    Matrix x(n_points, spec.n, 0.0);
    for (std::size_t i = 0; i < n_points; ++i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 6; ++k) sum += (x(i, k) = rng.exponential());
      for (std::size_t k = 0; k < 6; ++k) x(i, k) /= sum;
    }
    Matrix f = evaluate_all(p, x);
    return PointCloud::make(std::move(x), std::move(f));
  }
  case Problem::dtlz5: {
    Matrix x(n_points, spec.n, 0.5);
    for (std::size_t i = 0; i < n_points; ++i) {
      x(i, 0) = rng.uniform();
      x(i, 1) = rng.uniform();
    }
    Matrix f = evaluate_all(p, x);
    const auto keep = non_dominated_filter(f, all_objectives(spec.m));
    return PointCloud::make(x.select_rows(keep), f.select_rows(keep));
  }
  case Problem::dtlz7: {
    if (!(options.oversample >= 1.0)) throw Error(Errc::invalid_argument, "oversampling factor must be >= 1");
    const auto candidates = static_cast<std::size_t>(std::ceil(options.oversample * static_cast<double>(n_points)));
    Matrix x(candidates, spec.n, 0.0);
    for (std::size_t i = 0; i < candidates; ++i) {
      x(i, 0) = rng.uniform();
      x(i, 1) = rng.uniform();
    }
    Matrix f = evaluate_all(p, x);
    auto keep = non_dominated_filter(f, all_objectives(spec.m));
    if (keep.size() < n_points)
      throw Error(Errc::insufficient_sample, "DTLZ7 filter kept " + std::to_string(keep.size()) + " of " +
                                                 std::to_string(candidates) + " candidates, fewer than the " +
                                                 std::to_string(n_points) + " requested; raise the oversampling factor");
    keep.resize(n_points);
    return PointCloud::make(x.select_rows(keep), f.select_rows(keep));
  }
  }
  throw Error(Errc::invalid_argument, "unknown problem");
}

double chebyshev_scalarize(std::span<const double> fx, std::span<const double> w, std::span<const double> z) {
  if (fx.empty() || fx.size() != w.size() || fx.size() != z.size())
    throw Error(Errc::invalid_argument, "objective, weight and ideal vectors must have equal non-zero length");
  double sum = 0.0;
  for (double wi : w) {
    if (!(wi >= 0.0)) throw Error(Errc::invalid_argument, "weights must be non-negative");
    sum += wi;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::invalid_argument, "weights must sum to 1");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fx.size(); ++i) best = std::max(best, w[i] * (fx[i] - z[i]));
  return best;
}

} // namespace paretotopo
