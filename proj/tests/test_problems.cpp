#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "paretotopo/problems.hpp"
#include "test_util.hpp"

using namespace paretotopo;

namespace {

std::vector<double> basis(int i, std::size_t n = 40) {
  std::vector<double> e(n, 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

// Single-linkage cluster count at threshold delta (union-find).
int clusters(const DistanceMatrix& d, double delta) {
  std::vector<std::size_t> parent(d.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int count = static_cast<int>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d(i, j) <= delta && find(i) != find(j)) {
        parent[find(i)] = find(j);
        --count;
      }
  return count;
}

} // namespace

TEST_SUITE("problems") {

TEST_CASE("specs and names") {
  CHECK(problem_spec(Problem::med).n == 40);
  CHECK(problem_spec(Problem::med).m == 6);
  CHECK(problem_spec(Problem::gapped_med).n == 40);
  CHECK(problem_spec(Problem::dtlz5).n == 12);
  CHECK(problem_spec(Problem::dtlz5).m == 3);
  CHECK(problem_spec(Problem::dtlz7).n == 22);
  CHECK(problem_spec(Problem::dtlz7).m == 3);
  CHECK(parse_problem("gapped-med") == Problem::gapped_med);
  CHECK(parse_problem("DTLZ7") == Problem::dtlz7);
  CHECK_THROWS_AS(parse_problem("zdt1"), Error);
}

TEST_CASE("MED exponents and values") {
  CHECK(med_exponent(1) == doctest::Approx(std::exp(-1.0)));
  CHECK(med_exponent(6) == doctest::Approx(std::exp(1.0)));
  const auto f = med_eval(basis(0));
  CHECK(f[0] == 0.0);
  for (int i = 1; i < 6; ++i) CHECK(f[static_cast<std::size_t>(i)] == doctest::Approx(1.0).epsilon(1e-14));
  const auto z = med_eval(std::vector<double>(40, 0.0));
  for (int i = 0; i < 6; ++i)
    CHECK(z[static_cast<std::size_t>(i)] == doctest::Approx(std::pow(1.0 / std::sqrt(2.0), med_exponent(i + 1))));
  CHECK_THROWS_AS(med_eval(std::vector<double>(39, 0.0)), Error);
  std::vector<double> bad(40, 0.0);
  bad[3] = NAN;
  CHECK_THROWS_AS(med_eval(bad), Error);
}

TEST_CASE("gapped MED") {
  CHECK(gap_transform(0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(gap_transform(0.5 + 1e-12) == doctest::Approx(2.0 / 3.0 * (0.5 + 1e-12) + 1.0 / 3.0));
  const auto f = gapped_med_eval(basis(0));
  CHECK(f[0] == 0.0);
  for (int i = 1; i < 6; ++i) CHECK(f[static_cast<std::size_t>(i)] == doctest::Approx(1.0));

  // agrees with MED up to the 2/3 factor below the gap, 1/3 above it
  CounterRng rng(91);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(40);
    for (double& v : x) v = rng.uniform(-0.3, 0.6);
    const auto g = med_eval(x), h = gapped_med_eval(x);
    for (std::size_t i = 0; i < 6; ++i) {
      if (g[i] <= 0.5) CHECK(h[i] == doctest::Approx(2.0 / 3.0 * g[i]));
      else CHECK(h[i] - 2.0 / 3.0 * g[i] == doctest::Approx(1.0 / 3.0));
    }
  }
}

TEST_CASE("DTLZ5 and DTLZ7 hand values") {
  std::vector<double> x(12, 0.5);
  x[0] = 0.0;
  auto f = dtlz5_eval(x);
  CHECK(f[0] == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(f[1] == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(f[2] == doctest::Approx(0.0).epsilon(1e-15));
  x[0] = 1.0;
  f = dtlz5_eval(x);
  CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f[2] == doctest::Approx(1.0));
  const auto g = dtlz7_eval(std::vector<double>(22, 0.0));
  CHECK(g == std::vector<double>{0.0, 0.0, 6.0});
  CHECK_THROWS_AS(dtlz5_eval(std::vector<double>(12, 1.5)), Error);
  CHECK_THROWS_AS(dtlz7_eval(std::vector<double>(21, 0.0)), Error);
}

TEST_CASE("MED samples lie on the simplex of the first six basis vectors") {
  const PointCloud pc = sample_pareto(Problem::med, 300, 1);
  CHECK(pc.size() == 300);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 40; ++j) {
      if (j >= 6) CHECK(pc.points()(i, j) == 0.0);
      else CHECK(pc.points()(i, j) >= 0.0);
      if (j < 6) s += pc.points()(i, j);
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  // every sampled objective vector is non-dominated within the sample
  const std::vector<int> all{0, 1, 2, 3, 4, 5};
  CHECK(oracle::non_dominated(pc.objectives(), all).size() == 300);
}

TEST_CASE("DTLZ5 samples show the many-to-one signature") {
  const PointCloud pc = sample_pareto(Problem::dtlz5, 300, 2);
  CHECK(pc.size() == 300);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    CHECK(std::abs(pc.objectives()(i, 0) - pc.objectives()(i, 1)) <= 1e-12 + 0.0 * pc.points()(i, 1));
  }
}

TEST_CASE("DTLZ7 samples: 300 points in four clusters") {
  const PointCloud pc = sample_pareto(Problem::dtlz7, 300, 1);
  CHECK(pc.size() == 300);
  const std::vector<int> all{0, 1, 2};
  CHECK(oracle::non_dominated(pc.objectives(), all).size() == 300);
  CHECK(clusters(pairwise_distances(pc), 0.18) == 4);
  SampleOptions few;
  few.oversample = 1.0;
  CHECK_THROWS_AS(sample_pareto(Problem::dtlz7, 300, 1, few), Error);
}

TEST_CASE("samplers are deterministic per seed") {
  for (Problem p : {Problem::med, Problem::gapped_med, Problem::dtlz5, Problem::dtlz7}) {
    const PointCloud a = sample_pareto(p, 50, 9), b = sample_pareto(p, 50, 9), c = sample_pareto(p, 50, 10);
    CHECK(a.points() == b.points());
    CHECK(a.objectives() == b.objectives());
    CHECK_FALSE(a.points() == c.points());
  }
}

TEST_CASE("Chebyshev scalarization") {
  const std::vector<double> fx{1, 2}, half{0.5, 0.5}, e1{1, 0}, zero{0, 0};
  CHECK(chebyshev_scalarize(fx, half, zero) == 1.0);
  CHECK(chebyshev_scalarize(fx, e1, zero) == 1.0);
  CHECK(chebyshev_scalarize(fx, half, fx) == 0.0);
  // positively homogeneous in fx - z
  CounterRng rng(97);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> f(3), z(3), w(3), scaled(3);
    double s = 0.0;
    for (auto& v : w) s += (v = rng.uniform());
    for (auto& v : w) v /= s;
    const double lambda = rng.uniform(0.1, 10.0);
    for (std::size_t i = 0; i < 3; ++i) {
      f[i] = rng.uniform(-1, 1);
      z[i] = rng.uniform(-1, 1);
      scaled[i] = z[i] + lambda * (f[i] - z[i]);
    }
    CHECK(chebyshev_scalarize(scaled, w, z) == doctest::Approx(lambda * chebyshev_scalarize(f, w, z)));
  }
  const std::vector<double> neg{1.5, -0.5}, notsum{0.3, 0.3};
  CHECK_THROWS_AS(chebyshev_scalarize(fx, neg, zero), Error);
  CHECK_THROWS_AS(chebyshev_scalarize(fx, notsum, zero), Error);
}

} // TEST_SUITE
