#include <bit>
#include <cmath>
#include <fstream>
#include <string>
#include <cstdlib>

#include "doctest.h"
#include "paretotopo/problems.hpp"
#include "paretotopo/rips.hpp"
#include "test_util.hpp"

using namespace paretotopo;

namespace {

DistanceMatrix equilateral() {
  DistanceMatrix d(3);
  d.set(0, 1, 1.0);
  d.set(0, 2, 1.0);
  d.set(1, 2, 1.0);
  return d;
}

DistanceMatrix unit_square() { return pairwise_distances(Matrix(4, 2, {0, 0, 1, 0, 1, 1, 0, 1})); }

// Brute-force K_delta^maxdim simplex count from the distance matrix.
std::size_t count_rips(const DistanceMatrix& d, double delta, int maxdim) {
  const std::size_t n = d.size();
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > maxdim + 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && d(i, j) > delta) ok = false;
    count += ok;
  }
  return count;
}

} // namespace

TEST_SUITE("rips") {

TEST_CASE("equilateral triangle at and below threshold") {
  const Filtration at = build_rips(equilateral(), 1.0, 2);
  CHECK(simplex_count_profile(at) == std::vector<std::size_t>{3, 3, 1});
  const Filtration below = build_rips(equilateral(), 0.5, 2);
  CHECK(simplex_count_profile(below) == std::vector<std::size_t>{3, 0, 0});
}

TEST_CASE("complete complex on 10 points") {
  CounterRng rng(1);
  const DistanceMatrix d = pairwise_distances(random_matrix(rng, 10, 3));
  const Filtration f = build_rips(d, INFINITY, 2);
  CHECK(f.size() == 175);
  CHECK(simplex_count_profile(f) == std::vector<std::size_t>{10, 45, 120});
  const Filtration zero = build_rips(d, 0.0, 2);
  CHECK(simplex_count_profile(zero) == std::vector<std::size_t>{10, 0, 0});
}

TEST_CASE("maxdim out of range") {
  CHECK_THROWS_AS(build_rips(equilateral(), 1.0, 3), Error);
  CHECK_THROWS_AS(build_rips(equilateral(), 1.0, -1), Error);
  CHECK_THROWS_AS(build_rips(equilateral(), -1.0, 1), Error);
}

TEST_CASE("two points: order v0, v1, edge") {
  DistanceMatrix d(2);
  d.set(0, 1, 0.7);
  const Filtration f = build_filtration(d, 1);
  REQUIRE(f.size() == 3);
  CHECK(f.simplex(0) == Simplex{{0}, 0.0});
  CHECK(f.simplex(1) == Simplex{{1}, 0.0});
  CHECK(f.simplex(2) == Simplex{{0, 1}, 0.7});
  CHECK(f.delta_max() == 0.7);
}

TEST_CASE("unit square: edges at 1, diagonals and triangles at sqrt 2") {
  const Filtration f = build_filtration(unit_square(), 2);
  CHECK(simplex_count_profile(f) == std::vector<std::size_t>{4, 6, 4});
  const double r2 = std::sqrt(2.0);
  int edges1 = 0, diag = 0, tri = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.dim(i) == 1 && f.diameter(i) == 1.0) ++edges1;
    if (f.dim(i) == 1 && std::abs(f.diameter(i) - r2) < 1e-15) ++diag;
    if (f.dim(i) == 2) {
      ++tri;
      CHECK(std::abs(f.diameter(i) - r2) < 1e-15);
    }
  }
  CHECK(edges1 == 4);
  CHECK(diag == 2);
  CHECK(tri == 4);
  CHECK(f.prefix_size(1.0) == 8);
}

TEST_CASE("filtration invariants and prefix property on random clouds") {
  CounterRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng.below(8);
    const int maxdim = std::min(1 + static_cast<int>(rng.below(3)), static_cast<int>(n) - 1);
    const DistanceMatrix d = pairwise_distances(random_matrix(rng, n, 2));
    const Filtration f = build_filtration(d, maxdim);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) {
        CHECK(f.diameter(i - 1) <= f.diameter(i));
        CHECK(filtration_less(f.diameter(i - 1), f.vertices(i - 1), f.diameter(i), f.vertices(i)));
      }
      CHECK(f.diameter(i) <= f.delta_max());
      const auto v = f.vertices(i);
      double diam = 0.0;
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
          CHECK(v[a] < v[b]);
          diam = std::max(diam, d(v[a], v[b]));
        }
      CHECK(f.diameter(i) == diam);
    }
    // face closure: from_simplices validates closure and order
    std::vector<Simplex> all;
    for (std::size_t i = 0; i < f.size(); ++i) all.push_back(f.simplex(i));
    CHECK_NOTHROW(Filtration::from_simplices(all, n, maxdim, f.delta_max()));

    for (int k = 0; k < 4; ++k) {
      const double delta = rng.uniform(0.0, f.delta_max());
      const Filtration direct = build_rips(d, delta, maxdim);
      REQUIRE(direct.size() == f.prefix_size(delta));
      CHECK(direct.size() == count_rips(d, delta, maxdim));
      for (std::size_t i = 0; i < direct.size(); ++i) CHECK(direct.simplex(i) == f.simplex(i));
      const Filtration r = f.restricted(delta);
      CHECK(r.size() == direct.size());
    }
  }
}

TEST_CASE("from_simplices rejects broken filtrations") {
  std::vector<Simplex> missing_face{{{0}, 0.0}, {{0, 1}, 1.0}};
  CHECK_THROWS_AS(Filtration::from_simplices(missing_face, 2, 1, 1.0), Error);
  std::vector<Simplex> unsorted{{{0}, 0.0}, {{1}, 0.0}, {{2}, 0.0}, {{0, 1}, 2.0}, {{1, 2}, 1.0}};
  CHECK_THROWS_AS(Filtration::from_simplices(unsorted, 3, 1, 2.0), Error);
  std::vector<Simplex> over_cap{{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 3.0}};
  CHECK_THROWS_AS(Filtration::from_simplices(over_cap, 2, 1, 2.0), Error);
}

TEST_CASE("MED counts at 0.5 are deterministic") {
  const PointCloud pc = sample_pareto(Problem::med, 120, 1);
  const DistanceMatrix d = pairwise_distances(pc);
  const auto a = simplex_count_profile(build_rips(d, 0.5, 2));
  const auto b = simplex_count_profile(build_rips(d, 0.5, 2));
  CHECK(a == b);
  CHECK(a[0] == 120);
}

TEST_CASE("simplex guard cap") {
  CounterRng rng(9);
  const DistanceMatrix d = pairwise_distances(random_matrix(rng, 30, 2));
  try {
    build_filtration(d, 2, std::nullopt, 1000);
    FAIL("expected guard");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::guard_exceeded);
  }
  CHECK_NOTHROW(build_filtration(d, 2, std::nullopt, 10000));
}

TEST_CASE("simplex cap honours the environment") {
  ::setenv("PARETOTOPO_SIMPLEX_CAP", "1234", 1);
  CHECK(default_simplex_cap() == 1234);
  ::setenv("PARETOTOPO_SIMPLEX_CAP", "junk", 1);
  CHECK(default_simplex_cap() == kDefaultSimplexCap);
  ::unsetenv("PARETOTOPO_SIMPLEX_CAP");
  CHECK(default_simplex_cap() == kDefaultSimplexCap);
}

TEST_CASE("filtration csv dump") {
  TempDir dir;
  write_filtration_csv(dir.path / "f.csv", build_rips(equilateral(), 1.0, 2));
  std::ifstream in(dir.path / "f.csv");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "dim,diameter,v0,v1,v2");
  CHECK(lines[1] == "0,0,0");
  CHECK(lines[7] == "2,1,0,1,2");
}

} // TEST_SUITE
