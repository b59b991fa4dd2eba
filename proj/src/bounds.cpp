#include "tastecomp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tastecomp/error.hpp"
#include "tastecomp/evaluation.hpp"

namespace tastecomp {

namespace {

void check_lengths(std::span<const double> scores, std::span<const double> fractions) {
  if (scores.size() != fractions.size()) {
    throw DimensionMismatch("bounds: " + std::to_string(scores.size()) + " scores vs " +
                            std::to_string(fractions.size()) + " fractions");
  }
  if (scores.empty()) throw DimensionMismatch("bounds: empty mixture");
}

double floored(double score, const BoundsConfig& cfg) { return std::max(score, cfg.epsilon); }

}  // namespace

void BoundsConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("epsilon must be positive", "epsilon");
  }
  if (!(d > 1.0) || !std::isfinite(d)) throw ValidationError("d must exceed 1", "d");
}

TasteVector BoundsResult::midpoint() const noexcept {
  TasteVector t;
  for (auto d : kAllDimensions) t[d] = (*this)[d].hs_midpoint;
  return t;
}

TasteVector BoundsResult::voigt() const noexcept {
  TasteVector t;
  for (auto d : kAllDimensions) t[d] = (*this)[d].voigt;
  return t;
}

double voigt(std::span<const double> scores, std::span<const double> fractions) {
  check_lengths(scores, fractions);
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) sum += fractions[i] * scores[i];
  return sum;
}

double reuss(std::span<const double> scores, std::span<const double> fractions,
             const BoundsConfig& cfg) {
  check_lengths(scores, fractions);
  double inv = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) inv += fractions[i] / floored(scores[i], cfg);
  return 1.0 / inv;
}

double hs_auxiliary(std::span<const double> scores, std::span<const double> fractions, double t0,
                    const BoundsConfig& cfg) {
  check_lengths(scores, fractions);
  if (!(t0 >= 0.0)) throw NumericalError("hs_auxiliary: T0 must be nonnegative");
  const double shift = (cfg.d - 1.0) * t0;
  double inv = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double denom = floored(scores[i], cfg) + shift;
    if (!(denom > 0.0)) throw NumericalError("hs_auxiliary: nonpositive denominator");
    inv += fractions[i] / denom;
  }
  return 1.0 / inv - shift;
}

HsBracket hs_bounds(std::span<const double> scores, std::span<const double> fractions,
                    const BoundsConfig& cfg) {
  check_lengths(scores, fractions);
  double lo = floored(scores[0], cfg);
  double hi = lo;
  for (double s : scores) {
    lo = std::min(lo, floored(s, cfg));
    hi = std::max(hi, floored(s, cfg));
  }
  HsBracket b{hs_auxiliary(scores, fractions, lo, cfg), hs_auxiliary(scores, fractions, hi, cfg)};
  // A single-valued mixture collapses to that value; rounding can leave a
  // last-ulp inversion otherwise.
  if (b.lower > b.upper) b.lower = b.upper = 0.5 * (b.lower + b.upper);
  return b;
}

BoundsResult mixture_bounds(std::span<const TasteVector> phases, std::span<const double> fractions,
                            const BoundsConfig& cfg) {
  if (phases.size() != fractions.size()) {
    throw DimensionMismatch("mixture_bounds: phase/fraction count mismatch");
  }
  BoundsResult result;
  std::vector<double> scores(phases.size());
  for (auto d : kAllDimensions) {
    for (std::size_t i = 0; i < phases.size(); ++i) scores[i] = std::max(phases[i][d], cfg.epsilon);
    auto& out = result[d];
    out.voigt = voigt(scores, fractions);
    out.reuss = reuss(scores, fractions, cfg);
    const auto hs = hs_bounds(scores, fractions, cfg);
    out.hs_lower = hs.lower;
    out.hs_upper = hs.upper;
    out.hs_midpoint = (hs.lower + hs.upper) / 2.0;
  }
  return result;
}

BoundsResult recipe_bounds(const RecipeComposition& recipe, const Corpus& corpus,
                           const BoundsConfig& cfg) {
  std::vector<TasteVector> phases;
  phases.reserve(recipe.components.size());
  for (const auto& c : recipe.components) {
    const auto* ing = corpus.find_ingredient(c.ingredient_id);
    if (!ing) throw UnknownIngredient(c.ingredient_id, "recipe '" + recipe.recipe_id + "'");
    phases.push_back(ing->taste);
  }
  const auto fractions = recipe.fractions();
  return mixture_bounds(phases, fractions, cfg);
}

std::vector<SweepRow> sweep_d(const Corpus& corpus, std::span<const double> d_values,
                              const BoundsConfig& base) {
  const auto recipes = corpus.ground_truth_recipes();
  if (recipes.empty()) throw NoGroundTruth("sweep_d: corpus has no ground-truth recipes");
  std::vector<SweepRow> rows;
  for (double d : d_values) {
    BoundsConfig cfg = base;
    cfg.d = d;
    cfg.validate();
    std::size_t above = 0;
    std::size_t pairs = 0;
    for (const auto* r : recipes) {
      const auto b = recipe_bounds(*r, corpus, cfg);
      for (auto dim : kAllDimensions) {
        const auto& db = b[dim];
        if (classify_coverage((*r->ground_truth)[dim], db.hs_lower, db.hs_upper) ==
            Coverage::kAbove) {
          ++above;
        }
        ++pairs;
      }
    }
    rows.push_back({d, static_cast<double>(above) / static_cast<double>(pairs), pairs});
  }
  return rows;
}

}  // namespace tastecomp
