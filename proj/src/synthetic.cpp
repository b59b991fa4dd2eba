#include "tastecomp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tastecomp/chemistry.hpp"
#include "tastecomp/error.hpp"
#include "tastecomp/hybrid.hpp"
#include "tastecomp/random.hpp"

namespace tastecomp {

namespace {

struct Row {
  const char* id;
  const char* name;
  double sweet, sour, bitter, umami, salt;
  SourceTier tier;
};

constexpr auto P = SourceTier::kPublished;
constexpr auto S = SourceTier::kSvtPanel;
constexpr auto E = SourceTier::kEstimated;

// clang-format off
constexpr Row kIngredients[] = {
    {"water",             "Water",               0,  0,  0,  0,  0, S},
    {"salt",              "Salt",                0,  0,  2,  0, 90, S},
    {"sugar",             "Sugar",              90,  0,  0,  0,  0, S},
    {"honey",             "Honey",              85,  4,  1,  0,  0, P},
    {"tomato",            "Tomato",              8, 15,  2, 12,  1, S},
    {"tomato-paste",      "Tomato paste",       14, 24,  3, 22,  4, S},
    {"vinegar",           "Vinegar",             1, 70,  3,  0,  1, S},
    {"lemon-juice",       "Lemon juice",         5, 85,  8,  0,  0, P},
    {"corn-starch",       "Corn starch",         1,  0,  0,  0,  0, E},
    {"spices",            "Spice blend",         2,  2, 25,  3,  1, E},
    {"black-pepper",      "Black pepper",        1,  1, 30,  2,  1, P},
    {"cocoa-powder",      "Cocoa powder",        2,  6, 60,  4,  0, S},
    {"hazelnut",          "Hazelnut",           10,  1,  8,  5,  0, P},
    {"palm-oil",          "Palm oil",            0,  0,  1,  0,  0, E},
    {"skim-milk-powder",  "Skim milk powder",   25,  3,  1,  8,  4, P},
    {"lecithin",          "Lecithin",            0,  0,  5,  0,  0, E},
    {"vanilla",           "Vanilla extract",    15,  0,  3,  0,  0, E},
    {"split-peas",        "Split peas",          5,  1,  8, 12,  1, P},
    {"onion",             "Onion",              10,  3,  3,  6,  1, S},
    {"garlic",            "Garlic",              3,  2,  8,  8,  1, P},
    {"leek",              "Leek",                8,  2,  3,  5,  1, E},
    {"carrot",            "Carrot",             12,  2,  2,  3,  1, S},
    {"celery",            "Celery",              3,  2,  6,  5,  6, P},
    {"potato",            "Potato",              4,  1,  2,  4,  1, S},
    {"ham",               "Ham",                 3,  2,  2, 35, 45, P},
    {"bacon",             "Bacon",               3,  2,  3, 40, 55, E},
    {"butter",            "Butter",              3,  1,  0,  3,  5, S},
    {"cream",             "Cream",              12,  2,  0,  3,  2, S},
    {"vegetable-stock",   "Vegetable stock",     4,  2,  3, 25, 40, E},
    {"soy-sauce",         "Soy sauce",           5,  5,  5, 60, 95, S},
    {"fish-sauce",        "Fish sauce",          5,  3,  5, 70, 98, P},
    {"miso",              "Miso",               10,  6,  5, 55, 80, P},
    {"parmesan-cheese",   "Parmesan cheese",     2,  6,  6, 55, 45, S},
    {"chicken",           "Chicken",             3,  1,  1, 30,  4, S},
    {"beef",              "Beef",                2,  1,  2, 35,  4, S},
    {"egg",               "Egg",                 3,  1,  1, 15,  6, P},
    {"mushroom",          "Mushroom",            3,  2,  5, 35,  1, P},
    {"wheat-flour",       "Wheat flour",         3,  0,  2,  2,  0, E},
    {"rice",              "Rice",                5,  0,  1,  3,  0, E},
    {"olive-oil",         "Olive oil",           0,  0, 15,  0,  0, P},
    {"yoghurt",           "Yoghurt",             8, 40,  2,  6,  4, S},
    {"apple",             "Apple",              40, 30,  3,  0,  0, S},
    {"coffee",            "Coffee",              2, 15, 70,  2,  0, P},
    {"mustard",           "Mustard",             6, 30, 20,  5, 30, P},
};
// clang-format on

struct Template {
  const char* id;
  const char* name;
  Confidence confidence;
  std::vector<Component> components;
};

std::vector<Template> named_templates() {
  return {
      {"RP14", "Pea soup with ham", Confidence::kHigh,
       {{"split-peas", 0.18}, {"water", 0.50}, {"ham", 0.08}, {"onion", 0.05}, {"carrot", 0.05},
        {"celery", 0.03}, {"potato", 0.03}, {"leek", 0.01}, {"salt", 0.008}, {"black-pepper", 0.002},
        {"butter", 0.02}, {"vegetable-stock", 0.04}}},
      {"RP55", "Chocolate hazelnut spread", Confidence::kHigh,
       {{"sugar", 0.50}, {"palm-oil", 0.20}, {"hazelnut", 0.13}, {"cocoa-powder", 0.074},
        {"skim-milk-powder", 0.087}, {"lecithin", 0.005}, {"vanilla", 0.004}}},
      {"RP68", "Tomato ketchup", Confidence::kModerate,
       {{"tomato-paste", 0.60}, {"sugar", 0.15}, {"water", 0.12}, {"vinegar", 0.08}, {"corn-starch", 0.03},
        {"salt", 0.015}, {"spices", 0.005}}},
  };
}

std::vector<IngredientTasteProfile> ingredient_table() {
  std::vector<IngredientTasteProfile> out;
  for (const auto& r : kIngredients) {
    IngredientTasteProfile p;
    p.ingredient_id = r.id;
    p.display_name = r.name;
    p.taste.values = {r.sweet, r.sour, r.bitter, r.umami, r.salt};
    p.source_tier = r.tier;
    out.push_back(std::move(p));
  }
  return out;
}

std::string recipe_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "RP%02zu", i);
  return buf;
}

// Random composition of k distinct ingredients with Dirichlet(1) weights,
// rounded to four decimals.
std::vector<Component> random_components(Rng& rng, std::size_t k, bool watery) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < std::size(kIngredients); ++i) {
    if (std::string_view(kIngredients[i].id) != "water") pool.push_back(i);
  }
  rng.shuffle(pool);
  std::vector<Component> comps;
  std::vector<double> w;
  if (watery) {
    comps.push_back({"water", 0.0});
    w.push_back(2.0 + 3.0 * rng.uniform());
  }
  for (std::size_t i = 0; comps.size() < k; ++i) {
    comps.push_back({kIngredients[pool[i]].id, 0.0});
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w.push_back(-std::log(u));
  }
  double total = 0.0;
  for (double x : w) total += x;
  double assigned = 0.0;
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    comps[i].mass_fraction = std::max(0.0001, std::round(1e4 * w[i] / total) / 1e4);
    assigned += comps[i].mass_fraction;
  }
  comps.back().mass_fraction = std::round(1e4 * (1.0 - assigned)) / 1e4;
  if (comps.back().mass_fraction <= 0.0) return random_components(rng, k, watery);
  return comps;
}

double clamp_score(double x) { return std::clamp(std::round(x * 10.0) / 10.0, 0.0, 100.0); }

}  // namespace

Corpus synthetic_corpus(const SyntheticOptions& options) {
  if (options.recipes < 68) throw ValidationError("synthetic corpus needs at least 68 recipes", "recipes");
  Rng rng(options.seed);
  const auto ingredients = ingredient_table();

  std::vector<RecipeComposition> recipes;
  const auto named = named_templates();
  // 22 high / 42 moderate / 6 low for the default size, the named recipes included.
  std::vector<Confidence> tiers;
  const std::size_t n = options.recipes;
  const std::size_t low = n * 6 / 70;
  const std::size_t high = n * 22 / 70 - 2;
  for (std::size_t i = 0; i < high; ++i) tiers.push_back(Confidence::kHigh);
  for (std::size_t i = 0; i < low; ++i) tiers.push_back(Confidence::kLow);
  while (tiers.size() < n - named.size()) tiers.push_back(Confidence::kModerate);
  rng.shuffle(tiers);

  std::size_t next_tier = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    RecipeComposition r;
    r.recipe_id = recipe_id(i);
    auto it = std::find_if(named.begin(), named.end(), [&](const Template& t) { return t.id == r.recipe_id; });
    if (it != named.end()) {
      r.name = it->name;
      r.confidence = it->confidence;
      r.components = it->components;
    } else {
      const std::size_t k = 3 + rng.below(8);
      r.components = random_components(rng, k, rng.uniform() < 0.6);
      r.name = "Synthetic recipe " + std::to_string(i);
      r.confidence = tiers[next_tier++];
    }
    recipes.push_back(std::move(r));
  }

  const Corpus base(ingredients, recipes);
  const BoundsConfig bounds;
  const auto& lexicon = CategoryLexicon::default_lexicon();
  for (auto& r : recipes) {
    const auto s = summarize(base.recipe(r.recipe_id), base, bounds, lexicon);
    const auto& c = s.chemistry;
    const std::array<double, kNumDimensions> gap = {
        10.0 * c.sugar + 6.0 * c.maillard,
        4.0 * c.fermented,
        8.0 * c.maillard,
        15.0 * c.protein + 10.0 * c.fermented + 8.0 * c.allium,
        30.0 * c.salt,
    };
    const std::array<double, kNumDimensions> pull = {0.7, 0.6, 0.3, 0.6, 0.8};
    const std::array<double, kNumDimensions> noise_scale = {1.0, 1.0, 0.5, 1.0, 1.0};
    TasteVector gt;
    for (auto d : kAllDimensions) {
      const auto& b = s.bounds[d];
      const auto k = index(d);
      gt[d] = clamp_score(b.hs_midpoint + pull[k] * (b.voigt - b.hs_midpoint) + gap[k] +
                          options.noise * noise_scale[k] * rng.normal());
    }
    r.ground_truth = gt;
  }
  return Corpus(ingredients, recipes);
}

Corpus planted_salt_corpus(std::uint64_t seed, std::size_t n, double coefficient) {
  if (n < 5) throw ValidationError("planted corpus needs at least 5 recipes", "recipes");
  Rng rng(seed);
  const auto ingredients = ingredient_table();
  const char* bases[] = {"tomato", "celery", "potato", "carrot", "chicken", "onion", "mushroom", "cream", "rice"};

  std::vector<RecipeComposition> recipes;
  for (std::size_t i = 1; i <= n; ++i) {
    RecipeComposition r;
    r.recipe_id = recipe_id(i);
    r.name = "Planted " + std::to_string(i);
    const double salt = std::clamp(0.05 + 0.03 * rng.normal(), 0.002, 0.15);
    const double water = 0.2 + 0.4 * rng.uniform();
    r.components = {{"salt", salt}, {"water", water}};
    std::vector<std::size_t> pick(std::size(bases));
    for (std::size_t j = 0; j < pick.size(); ++j) pick[j] = j;
    rng.shuffle(pick);
    const std::size_t k = 2 + rng.below(3);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = 0.2 + rng.uniform());
    for (std::size_t j = 0; j < k; ++j) {
      r.components.push_back({bases[pick[j]], (1.0 - salt - water) * w[j] / total});
    }
    recipes.push_back(std::move(r));
  }

  const Corpus base(ingredients, recipes);
  const BoundsConfig bounds;
  const auto& lexicon = CategoryLexicon::default_lexicon();
  for (auto& r : recipes) {
    const auto s = summarize(base.recipe(r.recipe_id), base, bounds, lexicon);
    TasteVector gt;
    for (auto d : kAllDimensions) gt[d] = s.bounds[d].hs_midpoint + coefficient * s.chemistry.salt;
    r.ground_truth = gt;
  }
  return Corpus(ingredients, recipes);
}

}  // namespace tastecomp
