#include "paretotopo/simplicity.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "paretotopo/rng.hpp"

namespace paretotopo {

S1Verdict s1_verdict(std::vector<int> betti, double delta) {
  S1Verdict v;
  v.delta_used = delta;
  v.betti = std::move(betti);
  for (std::size_t k = 0; k < v.betti.size(); ++k) {
    const int expected = k == 0 ? 1 : 0;
    if (v.betti[k] != expected)
      v.reasons.push_back("beta_" + std::to_string(k) + " = " + std::to_string(v.betti[k]) + " != " +
                          std::to_string(expected));
  }
  v.violated = !v.reasons.empty();
  return v;
}

S1Verdict test_s1(const PersistenceDiagram& diagram, double delta) { return s1_verdict(betti_at(diagram, delta), delta); }

S1Verdict test_s1(const DistanceMatrix& dm, double delta, int maxdim) {
  const Filtration k = build_rips(dm, delta, maxdim);
  PersistenceOptions opt;
  opt.max_dim = std::max(maxdim - 1, 0);
  return test_s1(compute_persistence(k, opt), delta);
}

namespace {

void require_objectives(const Filtration& complex, const Matrix& objectives) {
  if (objectives.rows() < complex.num_points())
    throw Error(Errc::invalid_argument, "objective matrix has " + std::to_string(objectives.rows()) +
                                            " rows but the complex has " + std::to_string(complex.num_points()) +
                                            " vertices");
  if (objectives.cols() == 0) throw Error(Errc::invalid_argument, "objective matrix has no columns");
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Modified Gram-Schmidt with one reorthogonalisation pass. Columns whose
// remainder is below tol are reported as dependent and skipped.
struct Orthonormal {
  std::vector<std::vector<double>> q;
  std::vector<std::vector<double>> r; // r[j] = coefficients of column j on q[0..]
  bool full_rank = true;

  std::vector<double> reduce(std::vector<double> v, std::vector<double>* coef) const {
    if (coef) coef->assign(q.size(), 0.0);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double c = dot(q[i], v);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * q[i][k];
        if (coef) (*coef)[i] += c;
      }
    return v;
  }

  bool add(const std::vector<double>& col, double tol) {
    std::vector<double> coef;
    std::vector<double> v = reduce(col, &coef);
    const double n = norm(v);
    if (n <= tol) {
      full_rank = false;
      return false;
    }
    for (double& x : v) x /= n;
    coef.push_back(n);
    q.push_back(std::move(v));
    r.push_back(std::move(coef));
    return true;
  }
};

constexpr double kRankTol = 1e-9;
// Hull contacts that really happen (collinear or coplanar images) leave a
// residual at rounding level; among millions of generic pairs a looser
// threshold admits chance near misses as witnesses.
constexpr double kResidualTol = 1e-11;
constexpr double kWitnessTol = 1e-7;

std::vector<double> image_row(const Matrix& f, Index v) {
  auto r = f.row(static_cast<std::size_t>(v));
  return {r.begin(), r.end()};
}

bool affinely_dependent(std::span<const Index> vertices, const Matrix& f) {
  if (vertices.size() <= 1) return false;
  if (vertices.size() - 1 > f.cols()) return true;
  const auto base = image_row(f, vertices[0]);
  std::vector<std::vector<double>> cols;
  double scale = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto c = image_row(f, vertices[i]);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= base[k];
    scale = std::max(scale, norm(c));
    cols.push_back(std::move(c));
  }
  if (scale == 0.0) return true;
  Orthonormal o;
  for (const auto& c : cols)
    if (!o.add(c, kRankTol * scale)) return true;
  return false;
}

S2Witness make_witness(std::span<const Index> sigma, std::span<const Index> tau, std::vector<double> a,
                       std::vector<double> b) {
  S2Witness w;
  w.sigma.assign(sigma.begin(), sigma.end());
  w.tau.assign(tau.begin(), tau.end());
  w.t = std::min(*std::min_element(a.begin(), a.end()), *std::min_element(b.begin(), b.end()));
  w.a = std::move(a);
  w.b = std::move(b);
  return w;
}

double witness_residual(const S2Witness& w, const Matrix& f) {
  double worst = 0.0;
  for (std::size_t k = 0; k < f.cols(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.sigma.size(); ++i) s += w.a[i] * f(static_cast<std::size_t>(w.sigma[i]), k);
    for (std::size_t j = 0; j < w.tau.size(); ++j) s -= w.b[j] * f(static_cast<std::size_t>(w.tau[j]), k);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

std::optional<S2Witness> solve_pair_lp(std::span<const Index> sigma, std::span<const Index> tau, const Matrix& f,
                                       double eps, PairOutcome* outcome) {
  const std::size_t ns = sigma.size(), nt = tau.size(), m = f.cols();
  StrictFeasibilityProblem p;
  p.eq_matrix = Matrix(m, ns + nt);
  p.eq_rhs.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < ns; ++i) p.eq_matrix(k, i) = f(static_cast<std::size_t>(sigma[i]), k);
    for (std::size_t j = 0; j < nt; ++j) p.eq_matrix(k, ns + j) = -f(static_cast<std::size_t>(tau[j]), k);
  }
  p.positive_vars.resize(ns + nt);
  std::iota(p.positive_vars.begin(), p.positive_vars.end(), 0);
  p.groups.emplace_back(p.positive_vars.begin(), p.positive_vars.begin() + static_cast<std::ptrdiff_t>(ns));
  p.groups.emplace_back(p.positive_vars.begin() + static_cast<std::ptrdiff_t>(ns), p.positive_vars.end());

  const LpResult res = solve_strict_feasibility(p, eps);
  if (outcome) outcome->lp_solved = true;
  if (res.status == LpStatus::numerical_failure) {
    if (outcome) outcome->inconclusive = true;
    return std::nullopt;
  }
  if (res.status != LpStatus::feasible) return std::nullopt;
  std::vector<double> a(res.witness.begin(), res.witness.begin() + static_cast<std::ptrdiff_t>(ns));
  std::vector<double> b(res.witness.begin() + static_cast<std::ptrdiff_t>(ns), res.witness.end());
  return make_witness(sigma, tau, std::move(a), std::move(b));
}

// Quick rejection for two edges: true when the lines through the images are
// far apart (relative residual above 1e-6), where intersect_pair rejects too.
bool edge_lines_miss(const Matrix& f, Index a0, Index a1, Index b0, Index b1) {
  const std::size_t m = f.cols();
  const auto A = f.row(static_cast<std::size_t>(a0)), B = f.row(static_cast<std::size_t>(a1));
  const auto C = f.row(static_cast<std::size_t>(b0)), D = f.row(static_cast<std::size_t>(b1));
  double uu = 0, ww = 0, uw = 0, ur = 0, wr = 0, rr = 0;
  for (std::size_t d = 0; d < m; ++d) {
    const double u = B[d] - A[d], w = C[d] - D[d], r = C[d] - A[d];
    uu += u * u;
    ww += w * w;
    uw += u * w;
    ur += u * r;
    wr += w * r;
    rr += r * r;
  }
  const double scale2 = std::max({uu, ww, rr});
  if (scale2 == 0.0) return false;
  const double det = uu * ww - uw * uw;
  // Near-parallel or degenerate edges go to the careful path.
  if (det <= 1e-12 * uu * ww) return false;
  // Squared residual of the least-squares fit r ~ z1 u + z2 w.
  const double z1 = (ur * ww - wr * uw) / det, z2 = (wr * uu - ur * uw) / det;
  const double res2 = rr - z1 * ur - z2 * wr;
  // Leave a wide margin over rounding in the normal equations; borderline
  // pairs are settled by the orthogonalisation path.
  return res2 > 1e-12 * scale2;
}

} // namespace

std::vector<MappedHull> mapped_hull_family(const Filtration& complex, const Matrix& objectives) {
  require_objectives(complex, objectives);
  std::vector<MappedHull> out;
  out.reserve(complex.size());
  for (std::size_t s = 0; s < complex.size(); ++s) {
    auto v = complex.vertices(s);
    MappedHull h{{v.begin(), v.end()}, objectives.select_rows(v)};
    out.push_back(std::move(h));
  }
  return out;
}

std::optional<S2Witness> intersect_pair(std::span<const Index> sigma, std::span<const Index> tau,
                                        const Matrix& f, double eps, PairOutcome* outcome) {
  if (outcome) *outcome = {};
  if (sigma.empty() || tau.empty()) throw Error(Errc::invalid_argument, "empty simplex");
  const std::size_t k = sigma.size() - 1, l = tau.size() - 1;

  // g(x_0) + sum a_i (g(x_i) - g(x_0)) = g(y_0) + sum b_j (g(y_j) - g(y_0))
  const auto x0 = image_row(f, sigma[0]);
  const auto y0 = image_row(f, tau[0]);
  std::vector<std::vector<double>> cols;
  for (std::size_t i = 1; i <= k; ++i) {
    auto c = image_row(f, sigma[i]);
    for (std::size_t d = 0; d < c.size(); ++d) c[d] -= x0[d];
    cols.push_back(std::move(c));
  }
  for (std::size_t j = 1; j <= l; ++j) {
    auto c = image_row(f, tau[j]);
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = y0[d] - c[d];
    cols.push_back(std::move(c));
  }
  std::vector<double> rhs(f.cols());
  for (std::size_t d = 0; d < rhs.size(); ++d) rhs[d] = y0[d] - x0[d];

  double scale = norm(rhs);
  for (const auto& c : cols) scale = std::max(scale, norm(c));
  if (scale == 0.0) {
    // Every vertex maps to one point, so any interior coefficients work.
    std::vector<double> a(k + 1, 1.0 / static_cast<double>(k + 1)), b(l + 1, 1.0 / static_cast<double>(l + 1));
    if (std::min(a[0], b[0]) <= eps) return std::nullopt;
    return make_witness(sigma, tau, std::move(a), std::move(b));
  }
  Orthonormal o;
  for (const auto& c : cols) o.add(c, kRankTol * scale);
  const auto residual = o.reduce(rhs, nullptr);
  // The affine hulls of the two images do not meet.
  if (norm(residual) > kResidualTol * scale) return std::nullopt;

  if (o.full_rank) {
    // Unique meeting point of the affine hulls: read its coefficients off R z = Q^T rhs.
    const std::size_t p = cols.size();
    std::vector<double> qtb(p);
    for (std::size_t i = 0; i < p; ++i) qtb[i] = dot(o.q[i], rhs);
    std::vector<double> z(p, 0.0);
    for (std::size_t i = p; i-- > 0;) {
      double s = qtb[i];
      for (std::size_t j = i + 1; j < p; ++j) s -= o.r[j][i] * z[j];
      z[i] = s / o.r[i][i];
    }
    std::vector<double> a(k + 1), b(l + 1);
    a[0] = 1.0;
    b[0] = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      a[i + 1] = z[i];
      a[0] -= z[i];
    }
    for (std::size_t j = 0; j < l; ++j) {
      b[j + 1] = z[k + j];
      b[0] -= z[k + j];
    }
    const double t = std::min(*std::min_element(a.begin(), a.end()), *std::min_element(b.begin(), b.end()));
    if (t <= eps) return std::nullopt;
    S2Witness w = make_witness(sigma, tau, std::move(a), std::move(b));
    if (witness_residual(w, f) <= kWitnessTol) return w;
  }
  return solve_pair_lp(sigma, tau, f, eps, outcome);
}

S2Verdict test_s2(const Filtration& complex, const Matrix& objectives, const S2Options& options) {
  require_objectives(complex, objectives);
  if (options.pair_dim && (*options.pair_dim < 0 || *options.pair_dim > complex.maxdim()))
    throw Error(Errc::invalid_argument, "pair dimension " + std::to_string(*options.pair_dim) +
                                            " exceeds the complex dimension " + std::to_string(complex.maxdim()));
  if (!(options.eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be > 0");

  S2Verdict v;
  std::vector<std::size_t> chosen;
  for (std::size_t s = 0; s < complex.size(); ++s)
    if (!options.pair_dim || complex.dim(s) == *options.pair_dim) chosen.push_back(s);
  v.simplices = chosen.size();
  if (options.pair_dim) {
    v.dims = {*options.pair_dim};
  } else {
    for (int d = 0; d <= complex.maxdim(); ++d) v.dims.push_back(d);
  }
  const auto n = static_cast<std::uint64_t>(chosen.size());
  v.pairs_total = n < 2 ? 0 : n * (n - 1) / 2;

  const std::size_t m = objectives.cols();
  std::vector<double> lo(chosen.size() * m), hi(chosen.size() * m);
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    auto verts = complex.vertices(chosen[c]);
    if (affinely_dependent(verts, objectives)) ++v.degenerate_images;
    for (std::size_t d = 0; d < m; ++d) {
      double a = std::numeric_limits<double>::infinity(), b = -a;
      for (Index x : verts) {
        a = std::min(a, objectives(static_cast<std::size_t>(x), d));
        b = std::max(b, objectives(static_cast<std::size_t>(x), d));
      }
      lo[c * m + d] = a;
      hi[c * m + d] = b;
    }
  }

  // Sweep along the objective with the widest spread; disjoint boxes mean
  // disjoint hulls, so only overlapping pairs reach the exact test.
  std::size_t axis = 0;
  double best = -1.0;
  for (std::size_t d = 0; d < m; ++d) {
    double a = std::numeric_limits<double>::infinity(), b = -a;
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      a = std::min(a, lo[c * m + d]);
      b = std::max(b, hi[c * m + d]);
    }
    if (!chosen.empty() && b - a > best) {
      best = b - a;
      axis = d;
    }
  }
  std::vector<std::size_t> order(chosen.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double la = lo[a * m + axis], lb = lo[b * m + axis];
    return la != lb ? la < lb : a < b;
  });

  for (std::size_t i = 0; i < order.size() && !v.early_stop; ++i) {
    const std::size_t p = order[i];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const std::size_t q = order[j];
      if (lo[q * m + axis] > hi[p * m + axis]) break;
      bool overlap = true;
      for (std::size_t d = 0; d < m && overlap; ++d)
        overlap = lo[q * m + d] <= hi[p * m + d] && lo[p * m + d] <= hi[q * m + d];
      if (!overlap) continue;
      ++v.pairs_checked;
      // Keep sigma as the earlier simplex in filtration order.
      const std::size_t s1 = std::min(chosen[p], chosen[q]), s2 = std::max(chosen[p], chosen[q]);
      const auto vs = complex.vertices(s1), vt = complex.vertices(s2);
      if (vs.size() == 2 && vt.size() == 2 && edge_lines_miss(objectives, vs[0], vs[1], vt[0], vt[1])) continue;
      PairOutcome outcome;
      auto w = intersect_pair(vs, vt, objectives, options.eps, &outcome);
      if (outcome.lp_solved) ++v.lp_solves;
      if (outcome.inconclusive) ++v.inconclusive_pairs;
      if (w) {
        v.witnesses.push_back(std::move(*w));
        if (options.max_witnesses && v.witnesses.size() >= options.max_witnesses) {
          v.early_stop = true;
          break;
        }
      }
    }
  }
  v.violated = !v.witnesses.empty();
  return v;
}

std::vector<std::vector<int>> requested_subsets(std::size_t m, const AnalysisConfig& config) {
  if (m == 0) return {{}};
  std::vector<std::vector<int>> out;
  const std::vector<int> full = all_objectives(m);
  if (config.subsets == SubsetMode::full) return {full};
  std::size_t limit = m;
  if (config.subsets == SubsetMode::up_to) {
    if (config.max_subset_size < 1) throw Error(Errc::invalid_argument, "subset size budget must be >= 1");
    limit = std::min<std::size_t>(m, static_cast<std::size_t>(config.max_subset_size));
  }
  if (m > 20) throw Error(Errc::invalid_argument, "subset enumeration supports at most 20 objectives");
  std::vector<std::vector<int>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > limit) continue;
    std::vector<int> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(static_cast<int>(i));
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  if (limit < m) subsets.push_back(full);
  return subsets;
}

std::uint64_t subset_seed(std::uint64_t seed, const std::vector<int>& subset, std::size_t m) {
  if (subset.size() == m) return seed;
  std::uint64_t mask = 0;
  for (int i : subset) mask |= std::uint64_t{1} << i;
  return CounterRng(seed, mask + 1).next_u64();
}

namespace {

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

SubsetResult analyze_subset(const PointCloud& pc, const std::vector<int>& subset, const AnalysisConfig& config) {
  SubsetResult res;
  res.subset = subset;
  std::vector<Index> keep;
  if (pc.has_objectives()) {
    keep = non_dominated_filter(pc.objectives(), subset);
  } else {
    keep.resize(pc.size());
    std::iota(keep.begin(), keep.end(), Index{0});
  }
  res.num_points = keep.size();
  if (keep.size() < 2) {
    res.skipped = "insufficient sample: " + std::to_string(keep.size()) + " non-dominated point(s)";
    return res;
  }
  const Matrix x = pc.points().select_rows(keep);
  Matrix g;
  if (pc.has_objectives()) g = pc.objectives().select_rows(keep).select_cols(subset);

  auto t = Clock::now();
  const DistanceMatrix dm = pairwise_distances(x);
  res.times.distances = seconds_since(t);
  if (dm.max() == 0.0) {
    res.skipped = "degenerate sample: all non-dominated points coincide";
    return res;
  }

  double cap = config.delta_max.value_or(dm.max());
  if (config.delta) cap = std::max(cap, *config.delta);
  res.delta_max = cap;
  const int maxdim = std::min<int>(config.maxdim, static_cast<int>(keep.size()) - 1);

  t = Clock::now();
  const Filtration f = build_filtration(dm, maxdim, cap);
  res.times.filtration = seconds_since(t);
  res.simplex_counts = simplex_count_profile(f);

  t = Clock::now();
  PersistenceOptions popt;
  popt.max_dim = std::max(maxdim - 1, 0);
  res.diagram = compute_persistence(f, popt);
  res.times.persistence = seconds_since(t);

  t = Clock::now();
  const std::uint64_t seed = subset_seed(config.seed, subset, pc.num_objectives());
  res.band = config.band == BandMethod::hausdorff
                 ? hausdorff_band(dm, config.alpha, config.bootstrap, seed, config.jobs)
                 : confidence_band(dm, res.diagram, config.alpha, config.bootstrap, maxdim, seed, config.jobs);
  res.signal = signal_pairs(res.diagram, res.band);
  res.estimate = estimate_diameter(res.signal, cap);
  res.times.band = seconds_since(t);

  res.delta_overridden = config.delta.has_value();
  res.delta = config.delta.value_or(res.estimate->delta);

  t = Clock::now();
  res.s1 = test_s1(res.diagram, res.delta);
  res.times.s1 = seconds_since(t);

  if (config.run_s2) {
    t = Clock::now();
    S2Options s2 = config.s2;
    if (s2.pair_dim) s2.pair_dim = std::min(*s2.pair_dim, maxdim);
    res.s2 = test_s2(f.restricted(res.delta), g, s2);
    res.times.s2 = seconds_since(t);
  }
  return res;
}

} // namespace

SimplicityReport analyze(const PointCloud& pc, const AnalysisConfig& config) {
  if (config.run_s2 && !pc.has_objectives()) throw Error(Errc::invalid_argument, "S2 requires objectives");
  if (config.subsets != SubsetMode::full && !pc.has_objectives())
    throw Error(Errc::invalid_argument, "objective subsets require objectives");
  if (config.maxdim < 0 || config.maxdim > 10) throw Error(Errc::invalid_argument, "maxdim must lie in [0, 10]");
  if (config.delta && !(*config.delta >= 0.0)) throw Error(Errc::invalid_argument, "delta must be >= 0");
  if (config.delta_max && !(*config.delta_max > 0.0)) throw Error(Errc::invalid_argument, "delta_max must be > 0");
  if (config.bootstrap < 1) throw Error(Errc::invalid_argument, "bootstrap needs at least one replicate");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw Error(Errc::invalid_argument, "alpha must lie in (0, 1)");

  SimplicityReport report;
  report.config = config;
  report.num_points = pc.size();
  report.dim = pc.dim();
  report.num_objectives = pc.num_objectives();
  for (const auto& subset : requested_subsets(pc.num_objectives(), config))
    report.results.push_back(analyze_subset(pc, subset, config));
  return report;
}

} // namespace paretotopo
