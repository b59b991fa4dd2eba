#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tastecomp/dataset.hpp"
#include "tastecomp/random.hpp"

namespace support {

inline std::filesystem::path fixtures() {
  if (const char* env = std::getenv("TASTECOMP_FIXTURES")) return env;
  return std::filesystem::path(__FILE__).parent_path() / "fixtures";
}

inline tastecomp::Corpus tiny_corpus() { return tastecomp::load_corpus_dir(fixtures() / "tiny"); }

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  static std::atomic<int> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto dir = std::filesystem::temp_directory_path() /
             ("tastecomp-" + name + "-" + std::to_string(stamp) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

// Uniform point on the simplex (normalized exponentials).
inline std::vector<double> random_simplex(tastecomp::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    total += (x = -std::log(u));
  }
  for (auto& x : v) x /= total;
  return v;
}

// Builds a corpus from in-memory rows; ground truth per recipe is optional.
struct RecipeSpec {
  std::string id;
  std::vector<tastecomp::Component> components;
  std::optional<tastecomp::TasteVector> truth;
  tastecomp::Confidence confidence = tastecomp::Confidence::kHigh;
};

inline tastecomp::IngredientTasteProfile ingredient(std::string id, std::array<double, 5> t) {
  tastecomp::IngredientTasteProfile p;
  p.ingredient_id = id;
  p.display_name = id;
  p.taste.values = t;
  return p;
}

inline tastecomp::Corpus make_corpus(std::vector<tastecomp::IngredientTasteProfile> ingredients,
                                     const std::vector<RecipeSpec>& specs) {
  std::vector<tastecomp::RecipeComposition> recipes;
  for (const auto& s : specs) {
    tastecomp::RecipeComposition r;
    r.recipe_id = s.id;
    r.components = s.components;
    r.ground_truth = s.truth;
    r.confidence = s.confidence;
    recipes.push_back(std::move(r));
  }
  return tastecomp::Corpus(std::move(ingredients), std::move(recipes));
}

}  // namespace support
