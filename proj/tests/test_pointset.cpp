#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "paretotopo/pointset.hpp"
#include "paretotopo/problems.hpp"
#include "paretotopo/rng.hpp"
#include "test_util.hpp"

using namespace paretotopo;

TEST_SUITE("pointset") {

TEST_CASE("load: 3x2 decision csv without objectives") {
  TempDir dir;
  const auto x = dir.write("x.csv", "x1,x2\n0,1\n2.5,3\n-1,1e-3\n");
  const PointCloud pc = load_point_cloud(x);
  CHECK(pc.size() == 3);
  CHECK(pc.dim() == 2);
  CHECK_FALSE(pc.has_objectives());
  CHECK(pc.points()(1, 0) == 2.5);
  CHECK(pc.points()(2, 1) == 1e-3);
}

TEST_CASE("load: row-count mismatch is reported") {
  TempDir dir;
  std::string xs = "x1\n", fs = "f1\n";
  for (int i = 0; i < 300; ++i) xs += std::to_string(i) + "\n";
  for (int i = 0; i < 299; ++i) fs += std::to_string(i) + "\n";
  const auto x = dir.write("x.csv", xs), f = dir.write("f.csv", fs);
  try {
    load_point_cloud(x, f);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::row_mismatch);
    CHECK(std::string(e.what()).find("row-count mismatch") != std::string::npos);
  }
}

TEST_CASE("load: malformed files carry file and line") {
  TempDir dir;
  const auto bad = dir.write("bad.csv", "x1,x2\n1,2\n3,abc\n");
  try {
    read_matrix_csv(bad, 'x');
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
  }
  CHECK_THROWS_AS(read_matrix_csv(dir.write("empty.csv", ""), 'x'), Error);
  CHECK_THROWS_AS(read_matrix_csv(dir.write("nohdr.csv", "1,2\n"), 'x'), Error);
  CHECK_THROWS_AS(read_matrix_csv(dir.write("ragged.csv", "x1,x2\n1\n"), 'x'), Error);
  CHECK_THROWS_AS(read_matrix_csv(dir.path / "missing.csv", 'x'), Error);
  CHECK_THROWS_AS(read_matrix_csv(dir.write("nan.csv", "x1\nnan\n"), 'x'), Error);
}

TEST_CASE("MED sample round-trips through CSV bit for bit") {
  TempDir dir;
  const PointCloud pc = sample_pareto(Problem::med, 50, 7);
  write_matrix_csv(dir.path / "s_x.csv", pc.points(), 'x');
  write_matrix_csv(dir.path / "s_f.csv", pc.objectives(), 'f');
  const PointCloud back = load_point_cloud(dir.path / "s_x.csv", dir.path / "s_f.csv");
  CHECK(back.points() == pc.points());
  CHECK(back.objectives() == pc.objectives());
}

TEST_CASE("PointCloud invariants") {
  CHECK_THROWS_AS(PointCloud::make(Matrix(0, 2)), Error);
  CHECK_THROWS_AS(PointCloud::make(Matrix(2, 0)), Error);
  CHECK_THROWS_AS(PointCloud::make(Matrix(1, 1, std::vector<double>{INFINITY})), Error);
  CHECK_THROWS_AS(PointCloud::make(Matrix(2, 1), Matrix(3, 1)), Error);
  CHECK_THROWS_AS(PointCloud::make(Matrix(2, 1), Matrix(2, 0)), Error);
  CHECK_THROWS_AS(PointCloud::make(Matrix(2, 1)).objectives(), Error);
}

TEST_CASE("pairwise distances: examples") {
  const DistanceMatrix d = pairwise_distances(Matrix(2, 2, {0, 0, 3, 4}));
  CHECK(d(0, 1) == 5.0);
  CHECK(d(1, 0) == 5.0);
  const DistanceMatrix one = pairwise_distances(Matrix(1, 3, {1, 2, 3}));
  CHECK(one.size() == 1);
  CHECK(one(0, 0) == 0.0);
  Matrix e(2, 40, 0.0);
  e(0, 0) = 1.0;
  e(1, 1) = 1.0;
  CHECK(pairwise_distances(e)(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("pairwise distances: metric properties on random clouds") {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(15), dim = 1 + rng.below(5);
    const Matrix m = random_matrix(rng, n, dim, -2.0, 2.0);
    const DistanceMatrix d = pairwise_distances(m);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(d(i, j) == d(j, i));
        CHECK(d(i, j) >= 0.0);
        for (std::size_t k = 0; k < n; ++k) CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-12);
      }
    }
  }
}

TEST_CASE("non-dominated filter: examples") {
  const Matrix f(3, 2, {0, 1, 1, 0, 1, 1});
  const std::vector<int> both{0, 1};
  CHECK(non_dominated_filter(f, both) == std::vector<Index>{0, 1});
  const std::vector<int> first{0};
  CHECK(non_dominated_filter(f, first) == std::vector<Index>{0});
  CHECK(non_dominated_filter(Matrix(1, 2, {4, 2}), both) == std::vector<Index>{0});
  // identical rows are all kept
  CHECK(non_dominated_filter(Matrix(3, 2, {1, 1, 1, 1, 2, 2}), both) == std::vector<Index>{0, 1});
  const std::vector<int> none;
  CHECK_THROWS_AS(non_dominated_filter(f, none), Error);
  const std::vector<int> out_of_range{0, 2};
  CHECK_THROWS_AS(non_dominated_filter(f, out_of_range), Error);
}

TEST_CASE("non-dominated filter agrees with the all-pairs oracle") {
  CounterRng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 50, m = 3;
    Matrix f(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < m; ++k)
        // coarse values so that ties occur
        f(i, k) = trial % 2 ? rng.uniform() : static_cast<double>(rng.below(4));
    for (const std::vector<int>& subset : std::vector<std::vector<int>>{{0, 1, 2}, {0}, {1, 2}, {2, 0}}) {
      const auto got = non_dominated_filter(f, subset);
      const auto want = oracle::non_dominated(f, subset);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);

      // idempotent
      const Matrix sub = f.select_rows(got);
      CHECK(non_dominated_filter(sub, subset).size() == got.size());
    }
    // S within T: a point that is non-dominated on S with a unique S-vector
    // is non-dominated on T.
    const std::vector<int> s01{0, 1}, all3{0, 1, 2};
    const auto on_t = non_dominated_filter(f, all3);
    for (Index x : non_dominated_filter(f, s01)) {
      bool unique = true;
      for (std::size_t y = 0; y < n; ++y)
        if (static_cast<Index>(y) != x && f(y, 0) == f(x, 0) && f(y, 1) == f(x, 1)) unique = false;
      if (unique) CHECK(std::find(on_t.begin(), on_t.end(), x) != on_t.end());
    }
  }
}

} // TEST_SUITE
