#include "tastecomp/chemistry.hpp"

#include <algorithm>
#include <cctype>

#include "tastecomp/error.hpp"

namespace tastecomp {

namespace {
constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "protein", "sugar", "salt", "water", "allium", "fermented"};
}

std::string_view to_string(Category c) noexcept { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Category> parse_category(std::string_view name) noexcept {
  std::string lower(name);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (auto c : kAllCategories) {
    if (kCategoryNames[static_cast<std::size_t>(c)] == lower) return c;
  }
  return std::nullopt;
}

std::vector<Category> CategorySet::members() const {
  std::vector<Category> out;
  for (auto c : kAllCategories) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

CategoryLexicon::CategoryLexicon(std::array<std::vector<std::string>, kNumCategories> keywords)
    : keywords_(std::move(keywords)) {
  for (auto c : kAllCategories) {
    auto& list = keywords_[static_cast<std::size_t>(c)];
    if (list.empty()) {
      throw ValidationError("lexicon category '" + std::string(to_string(c)) + "' is empty",
                            std::string(to_string(c)));
    }
    for (auto& kw : list) {
      kw = slugify(kw);
      if (kw.empty()) {
        throw ValidationError("lexicon category '" + std::string(to_string(c)) +
                                  "' has an empty keyword",
                              std::string(to_string(c)));
      }
    }
  }
}

const CategoryLexicon& CategoryLexicon::default_lexicon() {
  static const CategoryLexicon lexicon({{
      {"pork", "beef", "chicken", "fish", "egg", "bean", "pea", "lentil", "milk", "cheese",
       "yoghurt", "nut", "hazelnut", "soy"},
      {"sugar", "honey", "syrup", "sucrose", "glucose", "fructose"},
      {"salt", "nacl", "bouillon", "stock-cube", "soy-sauce"},
      {"water", "stock", "broth"},
      {"onion", "garlic", "leek", "shallot", "chive"},
      {"soy-sauce", "cheese", "vinegar", "mustard", "yoghurt", "sauerkraut", "wine", "beer"},
  }});
  return lexicon;
}

CategoryLexicon CategoryLexicon::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("lexicon must be a JSON object");
  std::array<std::vector<std::string>, kNumCategories> keywords;
  const auto& defaults = default_lexicon();
  for (auto c : kAllCategories) keywords[static_cast<std::size_t>(c)] = defaults.keywords(c);
  for (const auto& [key, value] : j.items()) {
    auto c = parse_category(key);
    if (!c) throw ValidationError("unknown lexicon category '" + key + "'", key);
    if (!value.is_array()) throw ValidationError("lexicon category '" + key + "' must be a list", key);
    auto& list = keywords[static_cast<std::size_t>(*c)];
    list.clear();
    for (const auto& kw : value) {
      if (!kw.is_string()) throw ValidationError("lexicon keywords must be strings", key);
      list.push_back(kw.get<std::string>());
    }
  }
  return CategoryLexicon(std::move(keywords));
}

CategoryLexicon CategoryLexicon::load(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 1, e.what());
  }
  return from_json(j);
}

nlohmann::json CategoryLexicon::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (auto c : kAllCategories) j[std::string(to_string(c))] = keywords(c);
  return j;
}

std::string CategoryLexicon::hash() const { return fnv1a_hex(to_json().dump()); }

CategorySet CategoryLexicon::classify_text(std::string_view raw) const {
  const std::string text = slugify(raw);
  struct Hit {
    std::size_t begin, end;
    Category category;
  };
  std::vector<Hit> hits;
  for (auto c : kAllCategories) {
    for (const auto& kw : keywords(c)) {
      for (auto pos = text.find(kw); pos != std::string::npos; pos = text.find(kw, pos + 1)) {
        hits.push_back({pos, pos + kw.size(), c});
      }
    }
  }
  CategorySet out;
  for (const auto& h : hits) {
    const bool shadowed = std::any_of(hits.begin(), hits.end(), [&](const Hit& o) {
      return o.begin <= h.begin && h.end <= o.end && (o.end - o.begin) > (h.end - h.begin);
    });
    if (!shadowed) out.insert(h.category);
  }
  return out;
}

const std::array<std::string_view, kNumChemistryFeatures>& ChemistryFeatures::names() noexcept {
  static constexpr std::array<std::string_view, kNumChemistryFeatures> kNames = {
      "phi_protein", "phi_sugar",         "phi_maillard", "phi_salt",
      "phi_water",   "phi_concentration", "phi_allium",   "phi_fermented"};
  return kNames;
}

CategorySet classify(const IngredientTasteProfile& ingredient, const CategoryLexicon& lexicon) {
  CategorySet out = lexicon.classify_text(ingredient.ingredient_id);
  const CategorySet by_name = lexicon.classify_text(ingredient.display_name);
  for (auto c : by_name.members()) out.insert(c);
  return out;
}

ChemistryFeatures features_from_categories(std::span<const CategorySet> categories,
                                           std::span<const double> fractions) {
  if (categories.size() != fractions.size()) {
    throw DimensionMismatch("features: category/fraction count mismatch");
  }
  std::array<double, kNumCategories> share{};
  for (std::size_t i = 0; i < categories.size(); ++i) {
    for (auto c : kAllCategories) {
      if (categories[i].contains(c)) share[static_cast<std::size_t>(c)] += fractions[i];
    }
  }
  for (auto& s : share) s = std::clamp(s, 0.0, 1.0);

  ChemistryFeatures f;
  f.protein = share[static_cast<std::size_t>(Category::kProtein)];
  f.sugar = share[static_cast<std::size_t>(Category::kSugar)];
  f.maillard = f.protein * f.sugar;
  f.salt = share[static_cast<std::size_t>(Category::kSalt)];
  f.water = share[static_cast<std::size_t>(Category::kWater)];
  f.concentration = 1.0 / (1.0 - std::min(f.water, kWaterClamp));
  f.allium = share[static_cast<std::size_t>(Category::kAllium)];
  f.fermented = share[static_cast<std::size_t>(Category::kFermented)];
  return f;
}

ChemistryFeatures features(const RecipeComposition& recipe, const Corpus& corpus,
                           const CategoryLexicon& lexicon) {
  std::vector<CategorySet> cats;
  cats.reserve(recipe.components.size());
  for (const auto& c : recipe.components) {
    const auto* ing = corpus.find_ingredient(c.ingredient_id);
    if (!ing) throw UnknownIngredient(c.ingredient_id, "recipe '" + recipe.recipe_id + "'");
    cats.push_back(classify(*ing, lexicon));
  }
  const auto fractions = recipe.fractions();
  return features_from_categories(cats, fractions);
}

}  // namespace tastecomp
