#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tastecomp/taste.hpp"

namespace tastecomp {

enum class SourceTier { kSvtPanel, kPublished, kEstimated };
enum class Confidence { kHigh, kModerate, kLow };

std::string_view to_string(SourceTier tier) noexcept;
std::string_view to_string(Confidence c) noexcept;
std::optional<SourceTier> parse_source_tier(std::string_view text) noexcept;
std::optional<Confidence> parse_confidence(std::string_view text) noexcept;

struct IngredientTasteProfile {
  std::string ingredient_id;
  std::string display_name;
  TasteVector taste;
  SourceTier source_tier = SourceTier::kEstimated;

  bool operator==(const IngredientTasteProfile&) const = default;
};

struct Component {
  std::string ingredient_id;
  double mass_fraction = 0.0;

  bool operator==(const Component&) const = default;
};

struct RecipeComposition {
  std::string recipe_id;
  std::string name;
  std::vector<Component> components;
  Confidence confidence = Confidence::kModerate;
  std::optional<TasteVector> ground_truth;

  std::vector<double> fractions() const;

  bool operator==(const RecipeComposition&) const = default;
};

inline constexpr double kFractionSumTolerance = 1e-3;

// Lowercase, trimmed, internal whitespace runs collapsed to '-'.
std::string slugify(std::string_view text);

// Scales nonnegative weights to sum to one. Throws DegenerateInput when every
// entry is zero and ValidationError on negative or non-finite entries.
std::vector<double> renormalize(std::span<const double> fractions);

// Immutable, validated ingredient table plus recipe decompositions.
class Corpus {
 public:
  Corpus() = default;

  // Slugifies ids, checks every invariant, and renormalizes recipe fractions
  // that sit within the +-0.001 tolerance. Throws ValidationError otherwise.
  Corpus(std::vector<IngredientTasteProfile> ingredients, std::vector<RecipeComposition> recipes);

  const std::map<std::string, IngredientTasteProfile, std::less<>>& ingredients() const noexcept {
    return ingredients_;
  }
  const std::vector<RecipeComposition>& recipes() const noexcept { return recipes_; }

  const IngredientTasteProfile& ingredient(std::string_view id) const;
  const IngredientTasteProfile* find_ingredient(std::string_view id) const noexcept;
  const RecipeComposition& recipe(std::string_view id) const;
  const RecipeComposition* find_recipe(std::string_view id) const noexcept;

  // Recipes carrying ground truth, in file order.
  std::vector<const RecipeComposition*> ground_truth_recipes() const;
  std::size_t count_without_ground_truth() const noexcept;

  // Validates an ad hoc composition against this corpus' ingredient table.
  RecipeComposition make_recipe(std::string recipe_id, std::vector<Component> components) const;

  // FNV-1a over the canonical CSV serialization.
  std::string fingerprint() const;

  bool operator==(const Corpus&) const = default;

 private:
  std::map<std::string, IngredientTasteProfile, std::less<>> ingredients_;
  std::vector<RecipeComposition> recipes_;
};

Corpus load_corpus(const std::filesystem::path& ingredients_path,
                   const std::filesystem::path& recipes_path);

// Parses CSV text directly; `*_source` label error messages.
Corpus parse_corpus(std::string_view ingredients_csv, std::string_view recipes_csv,
                    std::string_view ingredients_source = "ingredients.csv",
                    std::string_view recipes_source = "recipes.csv");

std::string ingredients_csv(const Corpus& corpus);
std::string recipes_csv(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::filesystem::path& ingredients_path,
                  const std::filesystem::path& recipes_path);

// Resolves ingredients.csv / recipes.csv inside a directory.
Corpus load_corpus_dir(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace tastecomp
