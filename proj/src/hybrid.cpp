#include "tastecomp/hybrid.hpp"

#include <algorithm>
#include <set>

#include "tastecomp/error.hpp"

namespace tastecomp {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::kHsMidpoint: return "hs";
    case ModelKind::kRvVoigt: return "rv";
    case ModelKind::kLasso5D: return "lasso5";
    case ModelKind::kHybrid: return "hybrid";
    case ModelKind::kLasso115: return "lasso115";
  }
  return "hybrid";
}

std::string_view display_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::kHsMidpoint: return "HS midpoint";
    case ModelKind::kRvVoigt: return "RV (Voigt)";
    case ModelKind::kLasso5D: return "Lasso (5D RV)";
    case ModelKind::kHybrid: return "Hybrid HS + chem.";
    case ModelKind::kLasso115: return "Lasso (per-ingredient)";
  }
  return "";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept {
  for (auto k : kAllModelKinds) {
    if (to_string(k) == text) return k;
  }
  if (text == "hs_midpoint" || text == "HS_MIDPOINT") return ModelKind::kHsMidpoint;
  if (text == "rv_voigt" || text == "voigt" || text == "RV_VOIGT") return ModelKind::kRvVoigt;
  if (text == "lasso_5d" || text == "LASSO_5D") return ModelKind::kLasso5D;
  if (text == "HYBRID") return ModelKind::kHybrid;
  if (text == "lasso_115" || text == "LASSO_115") return ModelKind::kLasso115;
  return std::nullopt;
}

MixtureSummary summarize(const RecipeComposition& recipe, const Corpus& corpus,
                         const BoundsConfig& bounds, const CategoryLexicon& lexicon) {
  return {recipe_bounds(recipe, corpus, bounds), features(recipe, corpus, lexicon)};
}

FeatureLayout::FeatureLayout(ModelKind kind, bool residual_target,
                             std::vector<std::string> ingredient_union)
    : kind_(kind), residual_target_(residual_target), union_(std::move(ingredient_union)) {
  switch (kind) {
    case ModelKind::kHybrid:
      names_ = {"hs_midpoint", "rv_voigt"};
      for (auto n : ChemistryFeatures::names()) names_.emplace_back(n);
      break;
    case ModelKind::kLasso5D:
      for (auto d : kAllDimensions) names_.push_back("rv_" + std::string(to_string(d)));
      break;
    case ModelKind::kLasso115:
      std::sort(union_.begin(), union_.end());
      union_.erase(std::unique(union_.begin(), union_.end()), union_.end());
      for (const auto& id : union_) names_.push_back("frac:" + id);
      break;
    default:
      throw ValidationError("model kind '" + std::string(to_string(kind)) + "' has no feature layout");
  }
  if (kind != ModelKind::kHybrid) residual_target_ = false;
}

std::vector<double> FeatureLayout::row(Dimension dim, const MixtureSummary& s,
                                       const RecipeComposition& recipe) const {
  std::vector<double> x;
  x.reserve(names_.size());
  switch (kind_) {
    case ModelKind::kHybrid: {
      x.push_back(s.bounds[dim].hs_midpoint);
      x.push_back(s.bounds[dim].voigt);
      for (double f : s.chemistry.as_array()) x.push_back(f);
      break;
    }
    case ModelKind::kLasso5D:
      for (auto d : kAllDimensions) x.push_back(s.bounds[d].voigt);
      break;
    case ModelKind::kLasso115: {
      x.assign(union_.size(), 0.0);
      for (const auto& c : recipe.components) {
        auto it = std::lower_bound(union_.begin(), union_.end(), c.ingredient_id);
        if (it != union_.end() && *it == c.ingredient_id) {
          x[static_cast<std::size_t>(it - union_.begin())] += c.mass_fraction;
        }
      }
      break;
    }
    default: break;
  }
  return x;
}

double FeatureLayout::offset(Dimension dim, const MixtureSummary& s) const noexcept {
  return residual_target_ ? s.bounds[dim].hs_midpoint : 0.0;
}

FeatureLayout make_layout(ModelKind kind, const HybridConfig& cfg,
                          std::span<const RecipeComposition* const> recipes) {
  std::vector<std::string> ids;
  if (kind == ModelKind::kLasso115) {
    std::set<std::string> seen;
    for (const auto* r : recipes) {
      for (const auto& c : r->components) seen.insert(c.ingredient_id);
    }
    ids.assign(seen.begin(), seen.end());
  }
  return FeatureLayout(kind, cfg.residual_target, std::move(ids));
}

Design build_design(const FeatureLayout& layout, std::span<const RecipeComposition* const> recipes,
                    const Corpus& corpus, const BoundsConfig& bounds,
                    const CategoryLexicon& lexicon) {
  const auto n = static_cast<Eigen::Index>(recipes.size());
  const auto p = static_cast<Eigen::Index>(layout.feature_names().size());
  Design design;
  for (auto d : kAllDimensions) {
    design.X[index(d)].resize(n, p);
    design.target[index(d)].resize(n);
    design.offset[index(d)].resize(n);
    design.actual[index(d)].resize(n);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& recipe = *recipes[static_cast<std::size_t>(i)];
    if (!recipe.ground_truth) {
      throw NoGroundTruth("recipe '" + recipe.recipe_id + "' has no ground truth", "ground_truth");
    }
    const auto summary = summarize(recipe, corpus, bounds, lexicon);
    for (auto d : kAllDimensions) {
      const auto row = layout.row(d, summary, recipe);
      for (Eigen::Index k = 0; k < p; ++k) design.X[index(d)](i, k) = row[static_cast<std::size_t>(k)];
      const double offset = layout.offset(d, summary);
      const double actual = (*recipe.ground_truth)[d];
      design.offset[index(d)](i) = offset;
      design.actual[index(d)](i) = actual;
      design.target[index(d)](i) = actual - offset;
    }
  }
  return design;
}

TasteVector ModelBundle::correction(const MixtureSummary& summary,
                                    const RecipeComposition& recipe) const {
  TasteVector out;
  for (auto d : kAllDimensions) out[d] = models[index(d)].predict(layout.row(d, summary, recipe));
  return out;
}

TasteVector ModelBundle::predict(const MixtureSummary& summary,
                                 const RecipeComposition& recipe) const {
  TasteVector out = correction(summary, recipe);
  for (auto d : kAllDimensions) {
    out[d] += layout.offset(d, summary);
    if (config.clip) out[d] = std::clamp(out[d], 0.0, 100.0);
  }
  return out;
}

TasteVector ModelBundle::predict(const RecipeComposition& recipe, const Corpus& corpus) const {
  return predict(summarize(recipe, corpus, config.bounds, lexicon), recipe);
}

ModelBundle train_model(ModelKind kind, const Corpus& corpus, const HybridConfig& cfg,
                        const CategoryLexicon& lexicon) {
  if (!is_learned(kind)) {
    throw ValidationError("model kind '" + std::string(to_string(kind)) + "' is not trained");
  }
  cfg.bounds.validate();
  const auto recipes = corpus.ground_truth_recipes();
  if (recipes.size() < 3) {
    throw InsufficientData("training needs at least 3 ground-truth recipes, found " +
                           std::to_string(recipes.size()));
  }
  ModelBundle bundle;
  bundle.kind = kind;
  bundle.config = cfg;
  bundle.lexicon = lexicon;
  bundle.layout = make_layout(kind, cfg, recipes);
  bundle.corpus_fingerprint = corpus.fingerprint();

  const auto design = build_design(bundle.layout, recipes, corpus, cfg.bounds, lexicon);
  for (auto d : kAllDimensions) {
    const auto& X = design.X[index(d)];
    const auto& y = design.target[index(d)];
    const auto sel = select_alpha(X, y, cfg.alpha_grid, cfg.lasso);
    bundle.models[index(d)] = lasso_fit(X, y, sel.alpha, cfg.lasso);
  }
  return bundle;
}

ModelBundle train_hybrid(const Corpus& corpus, const HybridConfig& cfg,
                         const CategoryLexicon& lexicon) {
  return train_model(ModelKind::kHybrid, corpus, cfg, lexicon);
}

ModelBundle train_lasso_baseline(const Corpus& corpus, BaselineVariant variant,
                                 const HybridConfig& cfg, const CategoryLexicon& lexicon) {
  return train_model(variant == BaselineVariant::kFiveFeature ? ModelKind::kLasso5D
                                                              : ModelKind::kLasso115,
                     corpus, cfg, lexicon);
}

TasteVector predict_hybrid(const ModelBundle& model, const RecipeComposition& recipe,
                           const Corpus& corpus) {
  return model.predict(recipe, corpus);
}

nlohmann::json bundle_to_json(const ModelBundle& m) {
  nlohmann::json dims = nlohmann::json::object();
  for (auto d : kAllDimensions) {
    const auto& lm = m.models[index(d)];
    dims[std::string(to_string(d))] = {
        {"alpha", lm.alpha},
        {"intercept", lm.intercept},
        {"coefficients", lm.coefficients},
        {"feature_mean", lm.standardization.mean},
        {"feature_scale", lm.standardization.scale},
        {"raw_intercept", lm.raw_intercept()},
        {"raw_coefficients", lm.raw_coefficients()},
        {"sweeps", lm.sweeps},
        {"converged", lm.converged},
    };
  }
  return {
      {"format", "tastecomp-model/1"},
      {"kind", std::string(to_string(m.kind))},
      {"feature_names", m.layout.feature_names()},
      {"ingredient_union", m.layout.ingredient_union()},
      {"residual_target", m.layout.residual_target()},
      {"clip", m.config.clip},
      {"bounds", {{"epsilon", m.config.bounds.epsilon}, {"d", m.config.bounds.d}}},
      {"alpha_grid", m.config.alpha_grid},
      {"lexicon", m.lexicon.to_json()},
      {"lexicon_hash", m.lexicon.hash()},
      {"corpus_fingerprint", m.corpus_fingerprint},
      {"dimensions", dims},
  };
}

ModelBundle bundle_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "tastecomp-model/1") {
      throw ValidationError("unsupported model bundle format", "format");
    }
    ModelBundle m;
    auto kind = parse_model_kind(j.at("kind").get<std::string>());
    if (!kind || !is_learned(*kind)) throw ValidationError("bad model kind in bundle", "kind");
    m.kind = *kind;
    m.config.clip = j.value("clip", false);
    m.config.residual_target = j.value("residual_target", true);
    m.config.bounds.epsilon = j.at("bounds").at("epsilon").get<double>();
    m.config.bounds.d = j.at("bounds").at("d").get<double>();
    m.config.bounds.validate();
    if (j.contains("alpha_grid")) m.config.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
    m.lexicon = CategoryLexicon::from_json(j.at("lexicon"));
    if (j.contains("lexicon_hash") && j.at("lexicon_hash").get<std::string>() != m.lexicon.hash()) {
      throw ValidationError("lexicon hash does not match the embedded lexicon", "lexicon_hash");
    }
    m.layout = FeatureLayout(m.kind, m.config.residual_target,
                             j.value("ingredient_union", std::vector<std::string>{}));
    if (j.at("feature_names").get<std::vector<std::string>>() != m.layout.feature_names()) {
      throw ValidationError("feature names do not match the model kind", "feature_names");
    }
    m.corpus_fingerprint = j.value("corpus_fingerprint", "");
    const auto p = m.layout.feature_names().size();
    for (auto d : kAllDimensions) {
      const auto& e = j.at("dimensions").at(std::string(to_string(d)));
      auto& lm = m.models[index(d)];
      lm.alpha = e.at("alpha").get<double>();
      lm.intercept = e.at("intercept").get<double>();
      lm.coefficients = e.at("coefficients").get<std::vector<double>>();
      lm.standardization.mean = e.at("feature_mean").get<std::vector<double>>();
      lm.standardization.scale = e.at("feature_scale").get<std::vector<double>>();
      lm.sweeps = e.value("sweeps", std::size_t{0});
      lm.converged = e.value("converged", true);
      if (lm.coefficients.size() != p || lm.standardization.mean.size() != p ||
          lm.standardization.scale.size() != p) {
        throw ValidationError("coefficient count does not match feature count", "coefficients");
      }
      for (double s : lm.standardization.scale) {
        if (!(s > 0.0)) throw ValidationError("feature scale must be positive", "feature_scale");
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model bundle: ") + e.what());
  }
}

ForwardModel::ForwardModel(const ModelBundle& model, const Corpus& corpus,
                           std::vector<std::string> ingredient_ids)
    : model_(&model), ids_(std::move(ingredient_ids)) {
  if (ids_.empty()) throw ValidationError("forward model needs at least one ingredient");
  for (auto& id : ids_) {
    id = slugify(id);
    const auto& ing = corpus.ingredient(id);
    phases_.push_back(ing.taste);
    categories_.push_back(classify(ing, model.lexicon));
  }
}

ForwardModel::Detail ForwardModel::evaluate(std::span<const double> fractions) const {
  if (fractions.size() != ids_.size()) {
    throw DimensionMismatch("forward model: expected " + std::to_string(ids_.size()) +
                            " fractions, got " + std::to_string(fractions.size()));
  }
  Detail out;
  out.summary.bounds = mixture_bounds(phases_, fractions, model_->config.bounds);
  out.summary.chemistry = features_from_categories(categories_, fractions);
  RecipeComposition recipe;
  if (model_->kind == ModelKind::kLasso115) {
    for (std::size_t i = 0; i < ids_.size(); ++i) recipe.components.push_back({ids_[i], fractions[i]});
  }
  out.prediction = model_->predict(out.summary, recipe);
  return out;
}

TasteVector ForwardModel::operator()(std::span<const double> fractions) const {
  return evaluate(fractions).prediction;
}

}  // namespace tastecomp
