#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "support.hpp"
#include "tastecomp/bounds.hpp"
#include "tastecomp/error.hpp"

using namespace tastecomp;
using V = std::vector<double>;

TEST_CASE("voigt") {
  CHECK(voigt(V{10, 30}, V{0.5, 0.5}) == doctest::Approx(20));
  CHECK(voigt(V{7}, V{1.0}) == 7);
  CHECK(voigt(V{0, 50, 100}, V{0.2, 0.3, 0.5}) == doctest::Approx(65).epsilon(1e-14));
  CHECK_THROWS_AS(voigt(V{1, 2}, V{1.0}), DimensionMismatch);
}

TEST_CASE("reuss") {
  CHECK(reuss(V{10, 30}, V{0.5, 0.5}) == doctest::Approx(15).epsilon(1e-14));
  CHECK(reuss(V{7}, V{1.0}) == doctest::Approx(7).epsilon(1e-14));
  CHECK(reuss(V{0, 10}, V{0.5, 0.5}, {0.01, 3}) ==
        doctest::Approx(1.0 / (0.5 / 0.01 + 0.05)).epsilon(1e-14));
  CHECK_THROWS_AS(reuss(V{1}, V{0.5, 0.5}), DimensionMismatch);
}

TEST_CASE("hs_auxiliary") {
  CHECK(hs_auxiliary(V{10, 30}, V{0.5, 0.5}, 10) == doctest::Approx(17.5).epsilon(1e-14));
  CHECK(hs_auxiliary(V{10, 30}, V{0.5, 0.5}, 30) == doctest::Approx(18.75).epsilon(1e-14));
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const double c = rng.uniform(0.5, 100);
    const double v = rng.uniform();
    CHECK(hs_auxiliary(V{c, c}, V{v, 1 - v}, rng.uniform(0, 100)) == doctest::Approx(c).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hs_auxiliary(V{1, 2}, V{0.5, 0.5}, -1.0), NumericalError);
}

TEST_CASE("hs_bounds") {
  const auto b = hs_bounds(V{10, 30}, V{0.5, 0.5});
  CHECK(std::abs(b.lower - 17.5) <= 1e-9);
  CHECK(std::abs(b.upper - 18.75) <= 1e-9);
  const auto flat = hs_bounds(V{42, 42, 42}, V{0.2, 0.3, 0.5});
  CHECK(flat.lower == doctest::Approx(42).epsilon(1e-14));
  CHECK(flat.upper == doctest::Approx(42).epsilon(1e-14));
}

TEST_CASE("two-phase bracket matches the classical formula") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double t1 = rng.uniform(0, 100), t2 = rng.uniform(0, 100), v = rng.uniform();
    const double d = rng.uniform(1.5, 10);
    const BoundsConfig cfg{0.01, d};
    const auto got = hs_bounds(V{t1, t2}, V{v, 1 - v}, cfg);
    const auto ref = oracle::two_phase_hs(std::max(t1, 0.01), std::max(t2, 0.01), v, d);
    CHECK(std::abs(got.lower - ref.lower) <= 1e-9);
    CHECK(std::abs(got.upper - ref.upper) <= 1e-9);
  }
}

TEST_CASE("ordering reuss <= hs_lower <= hs_upper <= voigt") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.below(11);
    std::vector<TasteVector> phases(n);
    for (auto& p : phases)
      for (auto& x : p.values) x = rng.uniform(0, 100);
    const auto v = support::random_simplex(rng, n);
    const auto b = mixture_bounds(phases, v);
    for (auto d : kAllDimensions) {
      const auto& r = b[d];
      CHECK(r.reuss <= r.hs_lower + 1e-9);
      CHECK(r.hs_lower <= r.hs_upper + 1e-9);
      CHECK(r.hs_upper <= r.voigt + 1e-9);
      CHECK(r.hs_midpoint == (r.hs_lower + r.hs_upper) / 2.0);
    }
  }
}

TEST_CASE("permutation invariance") {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng.below(8);
    std::vector<TasteVector> phases(n);
    for (auto& p : phases)
      for (auto& x : p.values) x = rng.uniform(0, 100);
    const auto v = support::random_simplex(rng, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    rng.shuffle(perm);
    std::vector<TasteVector> p2;
    std::vector<double> v2;
    for (auto k : perm) {
      p2.push_back(phases[k]);
      v2.push_back(v[k]);
    }
    const auto a = mixture_bounds(phases, v), b = mixture_bounds(p2, v2);
    for (auto d : kAllDimensions) {
      CHECK(std::abs(a[d].reuss - b[d].reuss) <= 1e-12);
      CHECK(std::abs(a[d].voigt - b[d].voigt) <= 1e-12);
      CHECK(std::abs(a[d].hs_lower - b[d].hs_lower) <= 1e-12);
      CHECK(std::abs(a[d].hs_upper - b[d].hs_upper) <= 1e-12);
    }
  }
}

TEST_CASE("merging identical phases leaves voigt and reuss unchanged") {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const double shared = rng.uniform(0, 100), other = rng.uniform(0, 100);
    const auto v = support::random_simplex(rng, 3);
    const V split_t{shared, shared, other}, merged_t{shared, other};
    const V merged_v{v[0] + v[1], v[2]};
    CHECK(std::abs(voigt(split_t, v) - voigt(merged_t, merged_v)) <= 1e-12);
    CHECK(std::abs(reuss(split_t, v) - reuss(merged_t, merged_v)) <= 1e-12);
  }
}

TEST_CASE("auxiliary function is nondecreasing in T0") {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng.below(6);
    V t(n);
    for (auto& x : t) x = rng.uniform(0, 100);
    const auto v = support::random_simplex(rng, n);
    double prev = hs_auxiliary(t, v, 0.0);
    for (int k = 1; k <= 50; ++k) {
      const double cur = hs_auxiliary(t, v, 2.0 * k);
      CHECK(cur >= prev - 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("both bounds rise toward Voigt as d grows") {
  Rng rng(12);
  const V ds{1.5, 2, 3, 5, 10, 50, 1000};
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng.below(6);
    V t(n);
    for (auto& x : t) x = rng.uniform(0, 100);
    const auto v = support::random_simplex(rng, n);
    HsBracket prev = hs_bounds(t, v, {0.01, ds[0]});
    for (std::size_t k = 1; k < ds.size(); ++k) {
      const auto cur = hs_bounds(t, v, {0.01, ds[k]});
      CHECK(cur.upper >= prev.upper - 1e-9);
      CHECK(cur.lower >= prev.lower - 1e-9);
      prev = cur;
    }
    // gap shrinks like var / (d * min score); min can sit at the floor
    const auto far = hs_bounds(t, v, {0.01, 1e9});
    CHECK(std::abs(far.upper - voigt(t, v)) < 1e-3);
    CHECK(std::abs(far.lower - voigt(t, v)) < 1e-3);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((BoundsConfig{0.0, 3}.validate()), ValidationError);
  CHECK_THROWS_AS((BoundsConfig{0.01, 1.0}.validate()), ValidationError);
  CHECK_NOTHROW((BoundsConfig{0.01, 1.01}.validate()));
}

TEST_CASE("recipe bounds") {
  const auto c = support::make_corpus(
      {support::ingredient("a", {10, 5, 0, 3, 1}), support::ingredient("b", {30, 5, 0, 3, 1})},
      {{"single", {{"a", 1.0}}, {}}, {"pair", {{"a", 0.5}, {"b", 0.5}}, {}}});
  const auto single = recipe_bounds(c.recipe("single"), c);
  for (auto d : kAllDimensions) {
    const double t = std::max(c.ingredient("a").taste[d], 0.01);
    CHECK(single[d].reuss == doctest::Approx(t).epsilon(1e-12));
    CHECK(single[d].hs_lower == doctest::Approx(t).epsilon(1e-12));
    CHECK(single[d].hs_upper == doctest::Approx(t).epsilon(1e-12));
    CHECK(single[d].voigt == doctest::Approx(t).epsilon(1e-12));
  }
  const auto pair = recipe_bounds(c.recipe("pair"), c);
  CHECK(pair[Dimension::kSweet].reuss == doctest::Approx(15));
  CHECK(pair[Dimension::kSweet].hs_lower == doctest::Approx(17.5));
  CHECK(pair[Dimension::kSweet].hs_upper == doctest::Approx(18.75));
  CHECK(pair[Dimension::kSweet].voigt == doctest::Approx(20));

  RecipeComposition bad;
  bad.recipe_id = "x";
  bad.components = {{"missing", 1.0}};
  CHECK_THROWS_AS(recipe_bounds(bad, c), UnknownIngredient);
}

TEST_CASE("sweep_d") {
  std::vector<IngredientTasteProfile> ings{support::ingredient("a", {10, 20, 1, 5, 2}),
                                           support::ingredient("b", {40, 2, 6, 30, 50}),
                                           support::ingredient("c", {0, 60, 3, 0, 10})};
  Rng rng(4);
  std::vector<support::RecipeSpec> inside, above_upper;
  for (int i = 0; i < 20; ++i) {
    const auto v = support::random_simplex(rng, 3);
    support::RecipeSpec s{"R" + std::to_string(i), {{"a", v[0]}, {"b", v[1]}, {"c", v[2]}}, {}};
    inside.push_back(s);
    above_upper.push_back(s);
  }
  const auto base = support::make_corpus(ings, inside);
  for (std::size_t i = 0; i < inside.size(); ++i) {
    const auto b = recipe_bounds(base.recipes()[i], base);
    TasteVector tv, tu;
    for (auto d : kAllDimensions) {
      tv[d] = b[d].hs_midpoint;
      tu[d] = b[d].hs_upper + 1.0;
    }
    inside[i].truth = tv;
    above_upper[i].truth = tu;
  }
  const V ds{2, 3, 5, 10, 50};
  const auto rows = sweep_d(support::make_corpus(ings, inside), ds);
  REQUIRE(rows.size() == ds.size());
  for (const auto& row : rows) CHECK(row.pairs == 100);
  // midpoint at d = 3 sits inside the d = 3 bracket; the upper bound only rises with d
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].fraction_above_upper == 0.0);
  const V three{3};
  CHECK(sweep_d(support::make_corpus(ings, above_upper), three)[0].fraction_above_upper == 1.0);

  CHECK_THROWS_AS(sweep_d(base, ds), NoGroundTruth);
}
