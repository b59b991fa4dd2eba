#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "tastecomp/bounds.hpp"
#include "tastecomp/chemistry.hpp"
#include "tastecomp/dataset.hpp"
#include "tastecomp/lasso.hpp"

namespace tastecomp {

enum class ModelKind { kHsMidpoint, kRvVoigt, kLasso5D, kHybrid, kLasso115 };

inline constexpr std::array<ModelKind, 5> kAllModelKinds = {
    ModelKind::kHsMidpoint, ModelKind::kRvVoigt, ModelKind::kLasso5D, ModelKind::kHybrid,
    ModelKind::kLasso115};

std::string_view to_string(ModelKind kind) noexcept;     // "hs", "rv", "lasso5", "hybrid", "lasso115"
std::string_view display_name(ModelKind kind) noexcept;  // "HS midpoint", ...
std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept;
constexpr bool is_learned(ModelKind k) noexcept {
  return k != ModelKind::kHsMidpoint && k != ModelKind::kRvVoigt;
}

enum class BaselineVariant { kFiveFeature, kPerIngredient };

struct HybridConfig {
  BoundsConfig bounds;
  // Fit actual - hs_midpoint with the midpoint entering at coefficient 1.
  // When false the midpoint is an ordinary (penalized) feature.
  bool residual_target = true;
  bool clip = false;  // clamp predictions to [0, 100]
  std::vector<double> alpha_grid = default_alpha_grid();
  LassoOptions lasso;
};

// Physics bounds plus chemistry proxies for one mixture.
struct MixtureSummary {
  BoundsResult bounds;
  ChemistryFeatures chemistry;
};

MixtureSummary summarize(const RecipeComposition& recipe, const Corpus& corpus,
                         const BoundsConfig& bounds, const CategoryLexicon& lexicon);

// Column layout of one model family's design matrix.
class FeatureLayout {
 public:
  FeatureLayout() = default;
  FeatureLayout(ModelKind kind, bool residual_target, std::vector<std::string> ingredient_union = {});

  ModelKind kind() const noexcept { return kind_; }
  bool residual_target() const noexcept { return residual_target_; }
  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const std::vector<std::string>& ingredient_union() const noexcept { return union_; }

  std::vector<double> row(Dimension dim, const MixtureSummary& summary,
                          const RecipeComposition& recipe) const;
  // Offset added to the regression output (the HS midpoint in residual form).
  double offset(Dimension dim, const MixtureSummary& summary) const noexcept;

 private:
  ModelKind kind_ = ModelKind::kHybrid;
  bool residual_target_ = true;
  std::vector<std::string> names_;
  std::vector<std::string> union_;
};

struct Design {
  std::array<Eigen::MatrixXd, kNumDimensions> X;
  std::array<Eigen::VectorXd, kNumDimensions> target;  // actual - offset
  std::array<Eigen::VectorXd, kNumDimensions> offset;
  std::array<Eigen::VectorXd, kNumDimensions> actual;
};

// Requires ground truth on every recipe passed in.
Design build_design(const FeatureLayout& layout, std::span<const RecipeComposition* const> recipes,
                    const Corpus& corpus, const BoundsConfig& bounds, const CategoryLexicon& lexicon);

FeatureLayout make_layout(ModelKind kind, const HybridConfig& cfg,
                          std::span<const RecipeComposition* const> recipes);

// A trained per-dimension Lasso family (hybrid or one of the baselines).
struct ModelBundle {
  ModelKind kind = ModelKind::kHybrid;
  HybridConfig config;
  CategoryLexicon lexicon;
  FeatureLayout layout;
  std::array<LassoModel, kNumDimensions> models;
  std::string corpus_fingerprint;

  TasteVector predict(const RecipeComposition& recipe, const Corpus& corpus) const;
  TasteVector predict(const MixtureSummary& summary, const RecipeComposition& recipe) const;
  // Regression output before the offset is added.
  TasteVector correction(const MixtureSummary& summary, const RecipeComposition& recipe) const;
};

ModelBundle train_hybrid(const Corpus& corpus, const HybridConfig& cfg = {},
                         const CategoryLexicon& lexicon = CategoryLexicon::default_lexicon());

ModelBundle train_lasso_baseline(const Corpus& corpus, BaselineVariant variant,
                                 const HybridConfig& cfg = {},
                                 const CategoryLexicon& lexicon = CategoryLexicon::default_lexicon());

ModelBundle train_model(ModelKind kind, const Corpus& corpus, const HybridConfig& cfg = {},
                        const CategoryLexicon& lexicon = CategoryLexicon::default_lexicon());

TasteVector predict_hybrid(const ModelBundle& model, const RecipeComposition& recipe,
                           const Corpus& corpus);

nlohmann::json bundle_to_json(const ModelBundle& model);
ModelBundle bundle_from_json(const nlohmann::json& j);

// Prediction over a fixed ingredient list with variable fractions; the
// inverse-design forward model. Ingredient lookups happen once, up front.
class ForwardModel {
 public:
  struct Detail {
    MixtureSummary summary;
    TasteVector prediction;
  };

  ForwardModel(const ModelBundle& model, const Corpus& corpus,
               std::vector<std::string> ingredient_ids);

  const std::vector<std::string>& ingredient_ids() const noexcept { return ids_; }
  Detail evaluate(std::span<const double> fractions) const;
  TasteVector operator()(std::span<const double> fractions) const;

 private:
  const ModelBundle* model_;
  std::vector<std::string> ids_;
  std::vector<TasteVector> phases_;
  std::vector<CategorySet> categories_;
};

}  // namespace tastecomp
