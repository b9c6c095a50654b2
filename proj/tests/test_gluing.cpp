#include <doctest.h>

#include "support/generators.hpp"
#include "treefree/errors.hpp"
#include "treefree/gluing.hpp"
#include "treefree/norms.hpp"

using namespace treefree;
using treefree::testing::Rng;

using treefree::testing::GluedFixture;
using treefree::testing::random_glued;

TEST_CASE("validate_glued computes the tightest cross bounds") {
  // two 2-point clusters of diameter 1 at mutual distance ~10
  std::vector<std::vector<long>> d{
      {0, 1, 10, 11}, {1, 0, 10, 11}, {10, 10, 0, 1}, {11, 11, 1, 0}};
  std::vector<std::vector<Scalar>> ds(4, std::vector<Scalar>(4));
  std::vector<std::string> labels{"a0", "a1", "b0", "b1"};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ds[i][j] = Scalar(d[i][j]);
  FiniteMetric m = FiniteMetric::validate(labels, ds, 0).metric;

  GluedSpace g = validate_glued(m, {{"a0", "A"}, {"a1", "A"}, {"b0", "B"}, {"b1", "B"}});
  REQUIRE(g.alpha);
  CHECK(*g.alpha == Scalar(10));
  CHECK(*g.beta == Scalar(11));
  CHECK(g.part_names[0] == "A");  // the base's part comes first
  CHECK(g.part_base[0] == 0);
  CHECK(g.part_base[1] == 2);  // smallest index in part B

  // explicit part base
  GluedSpace g2 = validate_glued(m, {{"a0", "A"}, {"a1", "A"}, {"b0", "B"}, {"b1", "B"}},
                                 {{"B", "b1"}});
  CHECK(g2.part_base[1] == 3);

  // a part base outside its part
  CHECK_THROWS_AS(validate_glued(m, {{"a0", "A"}, {"a1", "A"}, {"b0", "B"}, {"b1", "B"}},
                                 {{"B", "a0"}}),
                  Error);
  // unknown part
  try {
    validate_glued(m, {{"a0", "A"}, {"a1", "A"}, {"b0", "B"}, {"b1", "B"}}, {{"C", "b0"}});
    FAIL("expected EmptyPart");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyPart);
  }
  // partition must cover every point
  CHECK_THROWS_AS(validate_glued(m, {{"a0", "A"}, {"a1", "A"}, {"b0", "B"}}), Error);
}

TEST_CASE("single part is degenerate but allowed") {
  Rng rng(3);
  FiniteMetric m = treefree::testing::random_tree_metric(rng, 4);
  std::map<std::string, std::string> partition;
  for (std::size_t i = 0; i < m.size(); ++i) partition[m.label(i)] = "only";
  GluedSpace g = validate_glued(m, partition);
  CHECK(!g.alpha);
  Molecule mu = treefree::testing::random_molecule(rng, m);
  CHECK(decomposed_norm(g, mu) == lp_norm(m, mu).value);
  CHECK_NOTHROW(check_gluing_bounds(g, mu));
}

TEST_CASE("touching parts are rejected") {
  // bypass metric validation to craft a pseudometric with a zero cross
  // distance
  std::vector<std::vector<Scalar>> d(2, std::vector<Scalar>(2));
  d[0][1] = d[1][0] = Scalar(0);
  FiniteMetric m = FiniteMetric::trusted({"a", "b"}, d, 0);
  try {
    validate_glued(m, {{"a", "A"}, {"b", "B"}});
    FAIL("expected CrossSeparationZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CrossSeparationZero);
  }
}

TEST_CASE("decomposed norm on hand cases") {
  std::vector<std::vector<long>> d{
      {0, 2, 10, 11}, {2, 0, 10, 11}, {10, 10, 0, 3}, {11, 11, 3, 0}};
  std::vector<std::vector<Scalar>> ds(4, std::vector<Scalar>(4));
  std::vector<std::string> labels{"a0", "a1", "b0", "b1"};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ds[i][j] = Scalar(d[i][j]);
  FiniteMetric m = FiniteMetric::validate(labels, ds, 0).metric;
  GluedSpace g = validate_glued(m, {{"a0", "A"}, {"a1", "A"}, {"b0", "B"}, {"b1", "B"}});

  // supported in part 0 only: the decomposition collapses
  Molecule inside(m, {{1, Scalar(5)}});
  CHECK(decomposed_norm(g, inside) == lp_norm(m.restrict_to({0, 1}, 0), Molecule(m.restrict_to({0, 1}, 0), {{1, Scalar(5)}})).value);
  CHECK(decomposed_norm(g, inside) == Scalar(10));  // 5 * d(a0,a1)

  // the evaluation at a non-base part base: pure mass term
  Molecule at_base(m, {{2, Scalar(1)}});
  CHECK(decomposed_norm(g, at_base) == Scalar(1));

  // cross-part difference: within-part distances plus one unit of mass
  Molecule cross(m, {{1, Scalar(1)}, {3, Scalar(-1)}});
  CHECK(decomposed_norm(g, cross) == Scalar(2) + Scalar(3) + Scalar(1));
  // and the bounds hold around the true norm
  CHECK_NOTHROW(check_gluing_bounds(g, cross));
}

TEST_CASE("both operator bounds hold on random glued spaces") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    GluedFixture fx = random_glued(rng, 2 + rng.below(2), 8 + static_cast<long>(rng.below(8)));
    GluedSpace g = validate_glued(fx.metric, fx.partition);
    Molecule mu = treefree::testing::random_molecule(rng, fx.metric);
    GluingReport rep = check_gluing_bounds(g, mu);  // throws on violation
    CHECK(rep.decomposition_bounded);
    CHECK(rep.whole_bounded);

    // zero molecule: both sides vanish
    GluingReport zero = check_gluing_bounds(g, Molecule(fx.metric, {}));
    CHECK(zero.whole == Scalar(0));
    CHECK(zero.decomposed == Scalar(0));
  }
}

TEST_CASE("bounds transform consistently under rescaling") {
  Rng rng(11);
  GluedFixture fx = random_glued(rng, 2, 10);
  Molecule mu = treefree::testing::random_molecule(rng, fx.metric);
  for (long num : {1L, 2L}) {
    for (long den : {1L, 2L}) {
      Scalar t = Scalar::rational(num, den);
      std::vector<std::vector<Scalar>> d(fx.metric.size(), std::vector<Scalar>(fx.metric.size()));
      for (std::size_t i = 0; i < fx.metric.size(); ++i)
        for (std::size_t j = 0; j < fx.metric.size(); ++j) d[i][j] = fx.metric.d(i, j) * t;
      FiniteMetric scaled = FiniteMetric::validate(fx.metric.labels(), d, 0).metric;
      GluedSpace g = validate_glued(scaled, fx.partition);
      std::map<std::size_t, Scalar> coeffs = mu.coeffs();
      CHECK_NOTHROW(check_gluing_bounds(g, Molecule(scaled, coeffs)));
    }
  }
}

TEST_CASE("decomposed norm satisfies the norm axioms") {
  Rng rng(13);
  GluedFixture fx = random_glued(rng, 3, 12);
  GluedSpace g = validate_glued(fx.metric, fx.partition);
  for (int trial = 0; trial < 10; ++trial) {
    Molecule a = treefree::testing::random_molecule(rng, fx.metric);
    Molecule b = treefree::testing::random_molecule(rng, fx.metric);
    Scalar c = rng.rational(-4, 4, 3);
    CHECK(decomposed_norm(g, a.scaled(c)) == c.abs() * decomposed_norm(g, a));

    std::map<std::size_t, Scalar> sum = a.coeffs();
    for (const auto& [p, v] : b.coeffs()) {
      auto it = sum.find(p);
      if (it == sum.end()) sum[p] = v;
      else it->second += v;
    }
    CHECK(decomposed_norm(g, Molecule(fx.metric, sum)) <=
          decomposed_norm(g, a) + decomposed_norm(g, b));
  }
}

TEST_CASE("singleton parts with unit cross distances bridge to the discrete formula") {
  const std::size_t n = 5;
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> d(n, std::vector<Scalar>(n));
  std::map<std::string, std::string> partition;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    partition["p" + std::to_string(i)] = "P" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i][j] = Scalar(1);
  }
  FiniteMetric m = FiniteMetric::validate(labels, d, 0).metric;
  GluedSpace g = validate_glued(m, partition);

  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> alpha;
    std::map<std::size_t, Scalar> coeffs;
    for (std::size_t i = 1; i < n; ++i) {
      Scalar a = rng.rational(-5, 5, 2);
      alpha.push_back(a);
      coeffs[i] = a;
    }
    Molecule mu(m, coeffs);
    CHECK(lp_norm(m, mu).value == discrete_norm(alpha));
    // within-part norms vanish, so the decomposition is the total variation
    Scalar tv;
    for (const Scalar& a : alpha) tv += a.abs();
    CHECK(decomposed_norm(g, mu) == tv);
    CHECK_NOTHROW(check_gluing_bounds(g, mu));
  }
}
