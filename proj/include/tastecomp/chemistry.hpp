#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tastecomp/dataset.hpp"

namespace tastecomp {

enum class Category : std::size_t { kProtein = 0, kSugar, kSalt, kWater, kAllium, kFermented };

inline constexpr std::size_t kNumCategories = 6;
inline constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::kProtein, Category::kSugar,  Category::kSalt,
    Category::kWater,   Category::kAllium, Category::kFermented};

std::string_view to_string(Category c) noexcept;  // lowercase, as in lexicon files
std::optional<Category> parse_category(std::string_view name) noexcept;

class CategorySet {
 public:
  bool contains(Category c) const noexcept { return bits_.test(static_cast<std::size_t>(c)); }
  void insert(Category c) noexcept { bits_.set(static_cast<std::size_t>(c)); }
  bool empty() const noexcept { return bits_.none(); }
  std::vector<Category> members() const;

  bool operator==(const CategorySet&) const = default;

 private:
  std::bitset<kNumCategories> bits_;
};

// Keyword lists per category, matched as substrings of slugified text. A hit
// that lies wholly inside a longer hit from another keyword is discarded, so
// "soy" (protein) does not fire inside "soy-sauce" (salt, fermented).
class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  explicit CategoryLexicon(std::array<std::vector<std::string>, kNumCategories> keywords);

  static const CategoryLexicon& default_lexicon();
  static CategoryLexicon from_json(const nlohmann::json& j);
  static CategoryLexicon load(const std::string& path);

  nlohmann::json to_json() const;
  std::string hash() const;

  const std::vector<std::string>& keywords(Category c) const noexcept {
    return keywords_[static_cast<std::size_t>(c)];
  }

  CategorySet classify_text(std::string_view text) const;

 private:
  std::array<std::vector<std::string>, kNumCategories> keywords_;
};

inline constexpr double kWaterClamp = 0.99;
inline constexpr std::size_t kNumChemistryFeatures = 8;

struct ChemistryFeatures {
  double protein = 0.0;
  double sugar = 0.0;
  double maillard = 0.0;       // protein * sugar
  double salt = 0.0;
  double water = 0.0;
  double concentration = 1.0;  // 1 / (1 - min(water, kWaterClamp))
  double allium = 0.0;
  double fermented = 0.0;

  std::array<double, kNumChemistryFeatures> as_array() const noexcept {
    return {protein, sugar, maillard, salt, water, concentration, allium, fermented};
  }
  static const std::array<std::string_view, kNumChemistryFeatures>& names() noexcept;
};

CategorySet classify(const IngredientTasteProfile& ingredient, const CategoryLexicon& lexicon);

// Per-category mass fractions and derived features for one mixture.
ChemistryFeatures features_from_categories(std::span<const CategorySet> categories,
                                           std::span<const double> fractions);

ChemistryFeatures features(const RecipeComposition& recipe, const Corpus& corpus,
                           const CategoryLexicon& lexicon);

}  // namespace tastecomp
