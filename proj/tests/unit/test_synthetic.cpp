#include <doctest.h>

#include "support.hpp"
#include "tastecomp/bounds.hpp"
#include "tastecomp/chemistry.hpp"
#include "tastecomp/synthetic.hpp"

using namespace tastecomp;

TEST_CASE("synthetic corpus shape") {
  const auto c = synthetic_corpus();
  CHECK(c.recipes().size() == 70);
  CHECK(c.ground_truth_recipes().size() == 70);
  CHECK(c.ingredients().size() >= 40);
  for (auto id : {"RP14", "RP55", "RP68"}) CHECK(c.find_recipe(id));
  CHECK(c.recipe("RP68").components.size() == 7);
  for (const auto& r : c.recipes()) {
    double s = 0.0;
    for (const auto& comp : r.components) s += comp.mass_fraction;
    CHECK(s == doctest::Approx(1.0));
    for (auto d : kAllDimensions) {
      CHECK((*r.ground_truth)[d] >= 0.0);
      CHECK((*r.ground_truth)[d] <= 100.0);
    }
  }
}

TEST_CASE("synthetic corpus is seeded") {
  CHECK(synthetic_corpus() == synthetic_corpus());
  CHECK(synthetic_corpus().fingerprint() == synthetic_corpus().fingerprint());
  CHECK(synthetic_corpus({.seed = 1}).fingerprint() != synthetic_corpus({.seed = 2}).fingerprint());
}

TEST_CASE("synthetic corpus round-trips through CSV") {
  const auto c = synthetic_corpus();
  const auto dir = support::scratch("synthetic_csv");
  write_corpus(c, dir / "ingredients.csv", dir / "recipes.csv");
  const auto back = load_corpus_dir(dir);
  CHECK(back.fingerprint() == c.fingerprint());
}

TEST_CASE("planted salt corpus follows its rule exactly") {
  const auto c = planted_salt_corpus(7, 40, 5.0);
  CHECK(c.recipes().size() == 40);
  const auto& lex = CategoryLexicon::default_lexicon();
  for (const auto& r : c.recipes()) {
    const auto b = recipe_bounds(r, c, {});
    const auto f = features(r, c, lex);
    CHECK(f.salt > 0.0);
    for (auto d : kAllDimensions) {
      CHECK((*r.ground_truth)[d] == doctest::Approx(b[d].hs_midpoint + 5.0 * f.salt).epsilon(1e-12));
    }
  }
}
