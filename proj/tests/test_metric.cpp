#include <doctest.h>

#include <algorithm>

#include "support/generators.hpp"
#include "treefree/errors.hpp"
#include "treefree/metric.hpp"

using namespace treefree;
using treefree::testing::Rng;

namespace {

FiniteMetric metric_from(std::vector<std::vector<long>> d, std::size_t base = 0) {
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> m;
  for (std::size_t i = 0; i < d.size(); ++i) {
    labels.push_back("p" + std::to_string(i));
    std::vector<Scalar> row;
    for (long v : d[i]) row.push_back(Scalar(v));
    m.push_back(row);
  }
  return FiniteMetric::validate(labels, m, base).metric;
}

}  // namespace

TEST_CASE("validates the discrete 3-point metric") {
  FiniteMetric m = metric_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(m.size() == 3);
  CHECK(m.base() == 0);
  CHECK(m.d(0, 1) == Scalar(1));
}

TEST_CASE("rejects triangle violations with a witness") {
  try {
    metric_from({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("expected TriangleViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TriangleViolation);
    REQUIRE(e.witness().size() == 3);
    CHECK(e.witness()[0] == 0);
    CHECK(e.witness()[1] == 1);
    CHECK(e.witness()[2] == 2);
  }
}

TEST_CASE("rejects asymmetry, negative entries, nonzero diagonal") {
  auto build = [](std::vector<std::vector<long>> d) { return metric_from(std::move(d)); };
  CHECK_THROWS_WITH_AS(build({{0, 1}, {2, 0}}), doctest::Contains("d(p0,p1)"), Error);
  try {
    build({{0, -1}, {-1, 0}});
    FAIL("expected NegativeDistance");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NegativeDistance);
  }
  try {
    build({{1, 1}, {1, 0}});
    FAIL("expected NonzeroDiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonzeroDiagonal);
  }
}

TEST_CASE("duplicate points: rejected by default, merged on request") {
  std::vector<std::string> labels{"a", "b"};
  std::vector<std::vector<Scalar>> zero{{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0)}};
  try {
    FiniteMetric::validate(labels, zero, 0);
    FAIL("expected DuplicatePoints");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DuplicatePoints);
  }

  auto merged = FiniteMetric::validate(labels, zero, 1, {.merge_duplicates = true});
  CHECK(merged.metric.size() == 1);
  CHECK(merged.relabeling.at(1) == 0);
  CHECK(merged.metric.base() == 0);
}

TEST_CASE("four-point condition on collinear points holds") {
  // {0,1,2,5} on the line
  FiniteMetric m = metric_from({{0, 1, 2, 5}, {1, 0, 1, 4}, {2, 1, 0, 3}, {5, 4, 3, 0}});
  CHECK(four_point_check(m).holds);
}

TEST_CASE("any 3-point metric satisfies the condition") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    // three random Gromov lengths give an arbitrary triangle
    Scalar x = rng.rational(0, 8, 4), y = rng.rational(0, 8, 4), z = rng.rational(0, 8, 4);
    if ((x + y).sign() == 0 || (x + z).sign() == 0 || (y + z).sign() == 0) continue;
    std::vector<std::vector<Scalar>> d{
        {Scalar(0), x + y, x + z}, {x + y, Scalar(0), y + z}, {x + z, y + z, Scalar(0)}};
    FiniteMetric m = FiniteMetric::validate({"0", "1", "2"}, d, 0).metric;
    CHECK(four_point_check(m).holds);
  }
}

TEST_CASE("unit square fails with the diagonal pairing as witness") {
  double r2 = std::sqrt(2.0);
  auto s = [](double v) { return Scalar::floating(v); };
  std::vector<std::vector<Scalar>> d{
      {s(0), s(1), s(1), s(r2)},
      {s(1), s(0), s(r2), s(1)},
      {s(1), s(r2), s(0), s(1)},
      {s(r2), s(1), s(1), s(0)},
  };
  FiniteMetric m = FiniteMetric::validate({"00", "10", "01", "11"}, d, 0).metric;
  FourPointVerdict v = four_point_check(m);
  REQUIRE(!v.holds);
  REQUIRE(v.witness);
  // the strict maximum is d(00,11)+d(10,01) = 2*sqrt(2)
  CHECK(v.witness->s1.to_double() == doctest::Approx(2 * r2));
  CHECK(v.witness->s2.to_double() == doctest::Approx(2));
  CHECK(v.witness->s3.to_double() == doctest::Approx(2));
  // witness pairs (a,b),(c,d) carry the maximal sum: {00,11} and {10,01}
  std::array<std::size_t, 4> expected{0, 3, 1, 2};
  CHECK(v.witness->points == expected);
}

TEST_CASE("exact four-cycle metric fails deterministically") {
  // path metric of the 4-cycle: the classic exact non-tree metric
  FiniteMetric m = metric_from({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
  FourPointVerdict v = four_point_check(m);
  REQUIRE(!v.holds);
  std::array<std::size_t, 4> expected{0, 2, 1, 3};
  CHECK(v.witness->points == expected);
  CHECK(v.witness->s1 == Scalar(4));
  CHECK(v.witness->s2 == Scalar(2));
  CHECK(v.witness->s3 == Scalar(2));
  // re-evaluating the pair sums on the witness confirms the strict maximum
  auto [a, b, c, dd] = v.witness->points;
  CHECK(m.d(a, b) + m.d(c, dd) > max(m.d(a, c) + m.d(b, dd), m.d(a, dd) + m.d(b, c)));
}

TEST_CASE("verdict is invariant under relabeling and scaling") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteMetric m = treefree::testing::random_quadruple_metric(rng);
    bool holds = four_point_check(m).holds;

    // scale by 7/3
    std::vector<std::vector<Scalar>> scaled(4, std::vector<Scalar>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) scaled[i][j] = m.d(i, j) * Scalar::rational(7, 3);
    FiniteMetric ms = FiniteMetric::validate(m.labels(), scaled, 0).metric;
    CHECK(four_point_check(ms).holds == holds);

    // relabel by a rotation
    std::vector<std::size_t> perm{2, 0, 3, 1};
    std::vector<std::vector<Scalar>> rel(4, std::vector<Scalar>(4));
    std::vector<std::string> labels;
    for (int i = 0; i < 4; ++i) {
      labels.push_back(m.label(perm[i]));
      for (int j = 0; j < 4; ++j) rel[i][j] = m.d(perm[i], perm[j]);
    }
    FiniteMetric mr = FiniteMetric::validate(labels, rel, 0).metric;
    CHECK(four_point_check(mr).holds == holds);
  }
}

TEST_CASE("random tree metrics always pass, exactly") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteMetric m = treefree::testing::random_tree_metric(rng, 3 + rng.below(8));
    CHECK(m.is_exact());
    CHECK(four_point_check(m).holds);
  }
}

TEST_CASE("parallel scan returns the same verdict and witness") {
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    // a non-tree metric: rounded Euclidean on 9 points
    std::vector<std::pair<long, long>> pts;
    for (int i = 0; i < 9; ++i) pts.emplace_back(rng.int_in(0, 20), rng.int_in(0, 20));
    std::vector<std::string> labels;
    std::vector<std::vector<Scalar>> d(9, std::vector<Scalar>(9));
    for (int i = 0; i < 9; ++i) {
      labels.push_back("p" + std::to_string(i));
      for (int j = 0; j < 9; ++j) {
        double dx = double(pts[i].first - pts[j].first), dy = double(pts[i].second - pts[j].second);
        d[i][j] = Scalar::floating(std::sqrt(dx * dx + dy * dy));
      }
    }
    FiniteMetric m;
    try {
      m = FiniteMetric::validate(labels, d, 0, {.merge_duplicates = true}).metric;
    } catch (const Error&) {
      continue;
    }
    FourPointVerdict v1 = four_point_check(m, 1);
    FourPointVerdict v4 = four_point_check(m, 4);
    CHECK(v1.holds == v4.holds);
    if (!v1.holds) {
      CHECK(v1.witness->points == v4.witness->points);
    }
  }
}

TEST_CASE("gromov product identities") {
  // equilateral side 1: (1|2)_0 = 1/2
  FiniteMetric eq = metric_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(gromov_product(eq, 1, 2, 0) == Scalar::rational(1, 2));
  // x = y collapses to d(x,z)
  CHECK(gromov_product(eq, 1, 1, 0) == Scalar(1));
  // collinear 0,1,2: (2|1)_0 = 1
  FiniteMetric line = metric_from({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(gromov_product(line, 2, 1, 0) == Scalar(1));

  // (x|y)_z + (x|z)_y = d(y,z) for all triples of a random space
  Rng rng(99);
  FiniteMetric m = treefree::testing::random_tree_metric(rng, 7);
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      for (std::size_t z = 0; z < m.size(); ++z)
        CHECK(gromov_product(m, x, y, z) + gromov_product(m, x, z, y) == m.d(y, z));
}

TEST_CASE("restrict_to and with_base") {
  FiniteMetric m = metric_from({{0, 1, 2, 5}, {1, 0, 1, 4}, {2, 1, 0, 3}, {5, 4, 3, 0}});
  FiniteMetric sub = m.restrict_to({1, 3}, 0);
  CHECK(sub.size() == 2);
  CHECK(sub.base() == 0);
  CHECK(sub.d(0, 1) == Scalar(4));
  CHECK(sub.label(0) == "p1");

  FiniteMetric rebased = m.with_base(2);
  CHECK(rebased.base() == 2);
  CHECK(rebased.d(0, 3) == m.d(0, 3));
}
