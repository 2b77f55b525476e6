#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "paretotopo/persistence.hpp"
#include "test_util.hpp"

using namespace paretotopo;

namespace {

std::vector<PersistencePair> sorted_pairs(std::vector<PersistencePair> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return std::tie(a.dim, a.birth, a.death, a.essential) < std::tie(b.dim, b.birth, b.death, b.essential);
  });
  return v;
}

Matrix ring(int n, double radius = 1.0) {
  Matrix m(static_cast<std::size_t>(n), 2);
  for (int i = 0; i < n; ++i) {
    m(i, 0) = radius * std::cos(2 * std::numbers::pi * i / n);
    m(i, 1) = radius * std::sin(2 * std::numbers::pi * i / n);
  }
  return m;
}

} // namespace

TEST_SUITE("persistence") {

TEST_CASE("two points") {
  DistanceMatrix d(2);
  d.set(0, 1, 0.8);
  const Filtration f = build_filtration(d, 1, 2.0);
  const PersistenceDiagram dg = compute_persistence(f, {.max_dim = 0});
  REQUIRE(dg.pairs.size() == 2);
  const auto p = sorted_pairs(dg.pairs);
  CHECK(p[0] == PersistencePair{0, 0.0, 0.8, false});
  CHECK(p[1] == PersistencePair{0, 0.0, 2.0, true});
  CHECK(betti_at(dg, 0.5) == std::vector<int>{2});
  CHECK(betti_at(dg, 0.8) == std::vector<int>{1});
  CHECK(betti_at(dg, 2.0) == std::vector<int>{1});
  CHECK_THROWS_AS(betti_at(dg, 2.5), Error);
  CHECK_THROWS_AS(betti_at(dg, -0.1), Error);
}

TEST_CASE("unit square has one H1 pair (1, sqrt 2)") {
  const DistanceMatrix d = pairwise_distances(Matrix(4, 2, {0, 0, 1, 0, 1, 1, 0, 1}));
  const PersistenceDiagram dg = compute_persistence(build_filtration(d, 2));
  const auto h1 = dg.in_dim(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == 1.0);
  CHECK(h1[0].death == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(h1[0].essential);
  CHECK(dg.count(0, true) == 1);
  CHECK(dg.count(0, false) == 3);
}

TEST_CASE("8-point ring between gap and filling scale") {
  const DistanceMatrix d = pairwise_distances(ring(8));
  const Filtration f = build_filtration(d, 2);
  const PersistenceDiagram dg = compute_persistence(f, {.max_dim = 1});
  CHECK(betti_at(dg, 1.0) == std::vector<int>{1, 1});
  CHECK(oracle::rips_betti(d, 1.0, 2) == std::vector<int>{1, 1, 0});
  CHECK(homology_rank_oracle(f.restricted(1.0)) == std::vector<int>{1, 1, 0});
}

TEST_CASE("rank oracle examples") {
  std::vector<Simplex> tri{{{0}, 0}, {{1}, 0}, {{2}, 0}, {{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}, {{0, 1, 2}, 1}};
  CHECK(homology_rank_oracle(Filtration::from_simplices(tri, 3, 2, 1.0)) == std::vector<int>{1, 0, 0});
  tri.pop_back();
  CHECK(homology_rank_oracle(Filtration::from_simplices(tri, 3, 1, 1.0)) == std::vector<int>{1, 1});
  CounterRng rng(2);
  const Filtration big = build_filtration(pairwise_distances(random_matrix(rng, 40, 2)), 2);
  CHECK_THROWS_AS(homology_rank_oracle(big, 100), Error);
}

TEST_CASE("betti_at matches both rank oracles on random clouds") {
  CounterRng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    const DistanceMatrix d = pairwise_distances(random_matrix(rng, n, 1 + rng.below(3)));
    const int maxdim = static_cast<int>(std::min<std::size_t>(2, n - 1));
    const Filtration f = build_filtration(d, maxdim);
    const PersistenceDiagram dg = compute_persistence(f);
    for (int k = 0; k < 5; ++k) {
      const double delta = rng.uniform(0.0, f.delta_max());
      const auto want = oracle::rips_betti(d, delta, maxdim);
      CHECK(betti_at(dg, delta) == want);
      CHECK(homology_rank_oracle(f.restricted(delta)) == want);
    }
  }
}

TEST_CASE("diagram invariants") {
  CounterRng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng.below(20);
    const DistanceMatrix d = pairwise_distances(random_matrix(rng, n, 2));
    const PersistenceDiagram dg = compute_persistence(build_filtration(d, 2));
    for (const auto& p : dg.pairs) {
      CHECK(p.birth <= p.death);
      if (p.essential) CHECK(p.death == dg.delta_max);
      if (!p.essential) CHECK(p.birth < p.death); // zero-persistence pairs are not listed by default
    }
    CHECK(dg.count(0, true) == 1);
    // beta_0 is non-increasing in delta
    int last = static_cast<int>(n) + 1;
    for (int k = 0; k <= 20; ++k) {
      const int b0 = betti_at(dg, std::min(dg.delta_max, dg.delta_max * k / 20.0))[0];
      CHECK(b0 <= last);
      last = b0;
    }
  }
}

TEST_CASE("zero-persistence pairs are counted and optionally kept") {
  CounterRng rng(4);
  const DistanceMatrix d = pairwise_distances(random_matrix(rng, 12, 2));
  const Filtration f = build_filtration(d, 2);
  const PersistenceDiagram a = compute_persistence(f);
  const PersistenceDiagram b = compute_persistence(f, {.max_dim = std::nullopt, .keep_zero_persistence = true});
  std::size_t zeros = 0;
  for (const auto& p : b.pairs) zeros += !p.essential && p.birth == p.death;
  std::size_t counted = 0;
  for (std::size_t z : a.zero_persistence) counted += z;
  CHECK(zeros == counted);
  CHECK(b.pairs.size() == a.pairs.size() + zeros);
}

TEST_CASE("pairs do not depend on the tie-break order") {
  CounterRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    // integer distances create many ties
    const std::size_t n = 6;
    Matrix pts(n, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2; ++j) pts(i, j) = static_cast<double>(rng.below(3));
    const DistanceMatrix d = pairwise_distances(pts);
    if (d.max() == 0.0) continue;
    const Filtration f = build_filtration(d, 2);
    const auto base = compute_persistence(f);

    std::vector<Simplex> s;
    for (std::size_t i = 0; i < f.size(); ++i) s.push_back(f.simplex(i));
    std::vector<std::uint64_t> key(s.size());
    for (auto& k : key) k = rng.next_u64();
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::make_tuple(s[a].diameter, s[a].vertices.size(), key[a]) <
             std::make_tuple(s[b].diameter, s[b].vertices.size(), key[b]);
    });
    std::vector<Simplex> shuffled;
    for (std::size_t i : order) shuffled.push_back(s[i]);
    const auto other = compute_persistence(Filtration::from_simplices(shuffled, n, 2, f.delta_max()));
    CHECK(sorted_pairs(base.pairs) == sorted_pairs(other.pairs));
    for (int dim = 0; dim <= 2; ++dim)
      CHECK(base.count(dim, false) + base.count(dim, true) == other.count(dim, false) + other.count(dim, true));
  }
}

TEST_CASE("diagram csv") {
  TempDir dir;
  DistanceMatrix d(2);
  d.set(0, 1, 0.5);
  write_diagram_csv(dir.path / "d.csv", compute_persistence(build_filtration(d, 1, 1.0), {.max_dim = 0}));
  std::ifstream in(dir.path / "d.csv");
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all == "dim,birth,death,essential\n0,0,0.5,0\n0,0,1,1\n");
}

} // TEST_SUITE
