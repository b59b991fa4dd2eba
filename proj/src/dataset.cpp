#include "tastecomp/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tastecomp/csv.hpp"
#include "tastecomp/error.hpp"

namespace tastecomp {

namespace {

constexpr std::array<std::string_view, 8> kIngredientHeader = {
    "ingredient_id", "display_name", "sweet", "sour", "bitter", "umami", "salt", "source_tier"};
constexpr std::array<std::string_view, 10> kRecipeHeader = {
    "recipe_id", "recipe_name", "confidence", "ingredient_id", "mass_fraction",
    "gt_sweet",  "gt_sour",     "gt_bitter",  "gt_umami",      "gt_salt"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

// Maps header names to column positions; every expected name is required.
template <std::size_t N>
std::array<std::size_t, N> resolve_header(const csv::Row& header,
                                          const std::array<std::string_view, N>& expected,
                                          std::string_view source) {
  std::array<std::size_t, N> pos{};
  for (std::size_t k = 0; k < N; ++k) {
    auto it = std::find_if(header.fields.begin(), header.fields.end(),
                           [&](const std::string& f) { return trim(f) == expected[k]; });
    if (it == header.fields.end()) {
      throw ParseError(std::string(source), header.line,
                       "missing column '" + std::string(expected[k]) + "'");
    }
    pos[k] = static_cast<std::size_t>(it - header.fields.begin());
  }
  return pos;
}

const std::string& field_at(const csv::Row& row, std::size_t col, std::string_view source) {
  if (col >= row.fields.size()) {
    throw ParseError(std::string(source), row.line,
                     "expected at least " + std::to_string(col + 1) + " fields, found " +
                         std::to_string(row.fields.size()));
  }
  return row.fields[col];
}

void check_fractions(const RecipeComposition& r) {
  if (r.components.empty()) {
    throw ValidationError("recipe '" + r.recipe_id + "' has no components", "components");
  }
  double sum = 0.0;
  for (const auto& c : r.components) {
    if (!std::isfinite(c.mass_fraction) || c.mass_fraction < 0.0 || c.mass_fraction > 1.0) {
      throw ValidationError("recipe '" + r.recipe_id + "': mass fraction of '" + c.ingredient_id +
                                "' outside [0, 1]",
                            "mass_fraction");
    }
    sum += c.mass_fraction;
  }
  if (std::abs(sum - 1.0) > kFractionSumTolerance + 1e-12) {
    std::ostringstream msg;
    msg << "recipe '" << r.recipe_id << "': mass fractions sum to " << sum
        << ", outside [0.999, 1.001]";
    throw ValidationError(msg.str(), "mass_fraction");
  }
}

}  // namespace

std::string_view to_string(SourceTier tier) noexcept {
  switch (tier) {
    case SourceTier::kSvtPanel: return "SVT_PANEL";
    case SourceTier::kPublished: return "PUBLISHED";
    case SourceTier::kEstimated: return "ESTIMATED";
  }
  return "ESTIMATED";
}

std::string_view to_string(Confidence c) noexcept {
  switch (c) {
    case Confidence::kHigh: return "HIGH";
    case Confidence::kModerate: return "MODERATE";
    case Confidence::kLow: return "LOW";
  }
  return "MODERATE";
}

std::optional<SourceTier> parse_source_tier(std::string_view text) noexcept {
  const auto u = upper(trim(text));
  if (u == "SVT_PANEL" || u == "SVT") return SourceTier::kSvtPanel;
  if (u == "PUBLISHED") return SourceTier::kPublished;
  if (u == "ESTIMATED") return SourceTier::kEstimated;
  return std::nullopt;
}

std::optional<Confidence> parse_confidence(std::string_view text) noexcept {
  const auto u = upper(trim(text));
  if (u == "HIGH") return Confidence::kHigh;
  if (u == "MODERATE") return Confidence::kModerate;
  if (u == "LOW") return Confidence::kLow;
  return std::nullopt;
}

std::vector<double> RecipeComposition::fractions() const {
  std::vector<double> v;
  v.reserve(components.size());
  for (const auto& c : components) v.push_back(c.mass_fraction);
  return v;
}

std::string slugify(std::string_view text) {
  std::string out;
  bool pending_sep = false;
  for (char c : trim(text)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_sep = true;
      continue;
    }
    if (pending_sep && !out.empty()) out.push_back('-');
    pending_sep = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<double> renormalize(std::span<const double> fractions) {
  double sum = 0.0;
  for (double f : fractions) {
    if (!std::isfinite(f) || f < 0.0) {
      throw ValidationError("renormalize: fractions must be finite and nonnegative");
    }
    sum += f;
  }
  if (sum <= 0.0) throw DegenerateInput("renormalize: all fractions are zero");
  std::vector<double> out(fractions.begin(), fractions.end());
  // Already normalized up to rounding: leave the values alone so that
  // write/load round trips are exact.
  if (std::abs(sum - 1.0) <= 1e-12) return out;
  for (auto& f : out) f /= sum;
  return out;
}

Corpus::Corpus(std::vector<IngredientTasteProfile> ingredients,
               std::vector<RecipeComposition> recipes) {
  for (auto& ing : ingredients) {
    ing.ingredient_id = slugify(ing.ingredient_id);
    if (ing.ingredient_id.empty()) throw ValidationError("empty ingredient_id", "ingredient_id");
    if (ing.display_name.empty()) ing.display_name = ing.ingredient_id;
    validate_scores(ing.taste, "ingredient '" + ing.ingredient_id + "'");
    auto id = ing.ingredient_id;
    if (!ingredients_.emplace(id, std::move(ing)).second) {
      throw ValidationError("duplicate ingredient_id '" + id + "'", "ingredient_id");
    }
  }

  std::unordered_map<std::string, bool> seen;
  recipes_.reserve(recipes.size());
  for (auto& r : recipes) {
    r.recipe_id = trim(r.recipe_id);
    if (r.recipe_id.empty()) throw ValidationError("empty recipe_id", "recipe_id");
    if (!seen.emplace(r.recipe_id, true).second) {
      throw ValidationError("duplicate recipe_id '" + r.recipe_id + "'", "recipe_id");
    }
    if (r.ground_truth) validate_scores(*r.ground_truth, "recipe '" + r.recipe_id + "'");
    std::string id = r.recipe_id;
    recipes_.push_back(make_recipe(std::move(id), std::move(r.components)));
    auto& stored = recipes_.back();
    stored.name = r.name.empty() ? stored.recipe_id : r.name;
    stored.confidence = r.confidence;
    stored.ground_truth = r.ground_truth;
  }
}

RecipeComposition Corpus::make_recipe(std::string recipe_id,
                                      std::vector<Component> components) const {
  RecipeComposition r;
  r.recipe_id = std::move(recipe_id);
  r.name = r.recipe_id;
  r.components = std::move(components);
  for (auto& c : r.components) {
    c.ingredient_id = slugify(c.ingredient_id);
    if (!find_ingredient(c.ingredient_id)) {
      throw UnknownIngredient(c.ingredient_id, "recipe '" + r.recipe_id + "'");
    }
  }
  check_fractions(r);
  const auto normalized = renormalize(r.fractions());
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    r.components[i].mass_fraction = normalized[i];
  }
  return r;
}

const IngredientTasteProfile* Corpus::find_ingredient(std::string_view id) const noexcept {
  auto it = ingredients_.find(id);
  return it == ingredients_.end() ? nullptr : &it->second;
}

const IngredientTasteProfile& Corpus::ingredient(std::string_view id) const {
  if (const auto* p = find_ingredient(id)) return *p;
  throw UnknownIngredient(std::string(id));
}

const RecipeComposition* Corpus::find_recipe(std::string_view id) const noexcept {
  for (const auto& r : recipes_) {
    if (r.recipe_id == id) return &r;
  }
  return nullptr;
}

const RecipeComposition& Corpus::recipe(std::string_view id) const {
  if (const auto* r = find_recipe(id)) return *r;
  throw MissingFixture("unknown recipe '" + std::string(id) + "'", "recipe_id");
}

std::vector<const RecipeComposition*> Corpus::ground_truth_recipes() const {
  std::vector<const RecipeComposition*> out;
  for (const auto& r : recipes_) {
    if (r.ground_truth) out.push_back(&r);
  }
  return out;
}

std::size_t Corpus::count_without_ground_truth() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      recipes_.begin(), recipes_.end(), [](const auto& r) { return !r.ground_truth; }));
}

std::string Corpus::fingerprint() const {
  return fnv1a_hex(ingredients_csv(*this) + "\x1e" + recipes_csv(*this));
}

Corpus parse_corpus(std::string_view ingredients_text, std::string_view recipes_text,
                    std::string_view ingredients_source, std::string_view recipes_source) {
  std::vector<IngredientTasteProfile> ingredients;
  {
    const auto rows = csv::parse(ingredients_text, ingredients_source);
    if (rows.empty()) throw ParseError(std::string(ingredients_source), 1, "missing header");
    const auto col = resolve_header(rows.front(), kIngredientHeader, ingredients_source);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      IngredientTasteProfile ing;
      ing.ingredient_id = field_at(row, col[0], ingredients_source);
      ing.display_name = trim(field_at(row, col[1], ingredients_source));
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        ing.taste.values[d] = csv::parse_number(field_at(row, col[2 + d], ingredients_source),
                                                ingredients_source, row.line, kIngredientHeader[2 + d]);
      }
      const auto& tier_text = field_at(row, col[7], ingredients_source);
      auto tier = parse_source_tier(tier_text);
      if (!tier) {
        throw ParseError(std::string(ingredients_source), row.line,
                         "unknown source_tier '" + tier_text + "'");
      }
      ing.source_tier = *tier;
      if (slugify(ing.ingredient_id).empty()) {
        throw ParseError(std::string(ingredients_source), row.line, "empty ingredient_id");
      }
      ingredients.push_back(std::move(ing));
    }
  }

  std::vector<RecipeComposition> recipes;
  {
    const auto rows = csv::parse(recipes_text, recipes_source);
    if (rows.empty()) throw ParseError(std::string(recipes_source), 1, "missing header");
    const auto col = resolve_header(rows.front(), kRecipeHeader, recipes_source);
    std::unordered_map<std::string, std::size_t> index_of;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const auto src = std::string(recipes_source);
      const std::string id = trim(field_at(row, col[0], recipes_source));
      if (id.empty()) throw ParseError(src, row.line, "empty recipe_id");
      const std::string name = trim(field_at(row, col[1], recipes_source));
      const auto& conf_text = field_at(row, col[2], recipes_source);
      auto conf = parse_confidence(conf_text);
      if (!conf) throw ParseError(src, row.line, "unknown confidence '" + conf_text + "'");

      Component comp;
      comp.ingredient_id = field_at(row, col[3], recipes_source);
      if (slugify(comp.ingredient_id).empty()) throw ParseError(src, row.line, "empty ingredient_id");
      comp.mass_fraction =
          csv::parse_number(field_at(row, col[4], recipes_source), recipes_source, row.line,
                            "mass_fraction");

      std::size_t present = 0;
      TasteVector gt;
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        const auto text = trim(field_at(row, col[5 + d], recipes_source));
        if (text.empty()) continue;
        gt.values[d] = csv::parse_number(text, recipes_source, row.line, kRecipeHeader[5 + d]);
        ++present;
      }
      if (present != 0 && present != kNumDimensions) {
        throw ParseError(src, row.line, "ground-truth columns must be all present or all empty");
      }
      std::optional<TasteVector> ground_truth;
      if (present == kNumDimensions) ground_truth = gt;

      auto [it, inserted] = index_of.emplace(id, recipes.size());
      if (inserted) {
        RecipeComposition recipe;
        recipe.recipe_id = id;
        recipe.name = name;
        recipe.confidence = *conf;
        recipe.ground_truth = ground_truth;
        recipes.push_back(std::move(recipe));
      } else {
        const auto& existing = recipes[it->second];
        if (existing.name != name || existing.confidence != *conf ||
            existing.ground_truth != ground_truth) {
          throw ParseError(src, row.line,
                           "recipe '" + id + "': name, confidence and ground truth must agree across rows");
        }
      }
      recipes[it->second].components.push_back(std::move(comp));
    }
  }

  return Corpus(std::move(ingredients), std::move(recipes));
}

Corpus load_corpus(const std::filesystem::path& ingredients_path,
                   const std::filesystem::path& recipes_path) {
  const auto ing = read_file(ingredients_path);
  const auto rec = read_file(recipes_path);
  return parse_corpus(ing, rec, ingredients_path.string(), recipes_path.string());
}

Corpus load_corpus_dir(const std::filesystem::path& dir) {
  return load_corpus(dir / "ingredients.csv", dir / "recipes.csv");
}

std::string ingredients_csv(const Corpus& corpus) {
  std::string out;
  std::vector<std::string> header(kIngredientHeader.begin(), kIngredientHeader.end());
  out += csv::join(header) + "\n";
  for (const auto& [id, ing] : corpus.ingredients()) {
    std::vector<std::string> f{ing.ingredient_id, ing.display_name};
    for (double v : ing.taste.values) f.push_back(csv::format_number(v));
    f.emplace_back(to_string(ing.source_tier));
    out += csv::join(f) + "\n";
  }
  return out;
}

std::string recipes_csv(const Corpus& corpus) {
  std::string out;
  std::vector<std::string> header(kRecipeHeader.begin(), kRecipeHeader.end());
  out += csv::join(header) + "\n";
  for (const auto& r : corpus.recipes()) {
    for (const auto& c : r.components) {
      std::vector<std::string> f{r.recipe_id, r.name, std::string(to_string(r.confidence)),
                                 c.ingredient_id, csv::format_number(c.mass_fraction)};
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        f.push_back(r.ground_truth ? csv::format_number(r.ground_truth->values[d]) : "");
      }
      out += csv::join(f) + "\n";
    }
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& ingredients_path,
                  const std::filesystem::path& recipes_path) {
  write_file(ingredients_path, ingredients_csv(corpus));
  write_file(recipes_path, recipes_csv(corpus));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open '" + path.string() + "'", "path");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UserError("cannot write '" + path.string() + "'", "path");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace tastecomp
