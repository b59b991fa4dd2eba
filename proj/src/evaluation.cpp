#include "tastecomp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "tastecomp/csv.hpp"
#include "tastecomp/error.hpp"
#include "tastecomp/parallel.hpp"
#include "tastecomp/random.hpp"

namespace tastecomp {

namespace {

constexpr std::array<Confidence, 3> kTiers = {Confidence::kHigh, Confidence::kModerate,
                                              Confidence::kLow};

double mean(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json row_json(const MetricRow& r) {
  auto kind = parse_model_kind(r.model);
  return {{"model", r.model},
          {"model_name", kind ? std::string(display_name(*kind)) : r.model},
          {"dimension", r.dimension},
          {"mae", r.mae},
          {"rmse", r.rmse},
          {"pcc", optional_json(r.pcc)},
          {"bias", r.bias},
          {"r2", optional_json(r.r2)},
          {"n", r.n}};
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << (std::abs(v) < 0.5 * std::pow(10.0, -digits) ? 0.0 : v);
  return s.str();
}

std::string fixed_or_na(const nlohmann::json& v, int digits) {
  return v.is_null() ? std::string("n/a") : fixed(v.get<double>(), digits);
}

std::string csv_value(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return csv::format_number(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.get<std::string>();
}

std::string table_csv(const nlohmann::json& rows, const std::vector<std::string>& columns) {
  std::string out = csv::join(columns) + "\n";
  for (const auto& row : rows) {
    std::vector<std::string> f;
    for (const auto& c : columns) f.push_back(row.contains(c) ? csv_value(row.at(c)) : "");
    out += csv::join(f) + "\n";
  }
  return out;
}

}  // namespace

std::string_view to_string(Coverage c) noexcept {
  switch (c) {
    case Coverage::kBelow: return "BELOW";
    case Coverage::kIn: return "IN";
    case Coverage::kAbove: return "ABOVE";
  }
  return "IN";
}

Coverage classify_coverage(double actual, double lower, double upper) noexcept {
  if (actual < lower - kCoverageSlack) return Coverage::kBelow;
  if (actual > upper + kCoverageSlack) return Coverage::kAbove;
  return Coverage::kIn;
}

CoverageSummary coverage_table(const Corpus& corpus, const BoundsConfig& cfg) {
  const auto recipes = corpus.ground_truth_recipes();
  if (recipes.empty()) throw NoGroundTruth("coverage_table: no ground-truth recipes");
  CoverageSummary s;
  s.recipes = recipes.size();
  s.skipped = corpus.count_without_ground_truth();
  std::array<std::array<std::size_t, 3>, kNumDimensions> counts{};
  for (const auto* r : recipes) {
    const auto b = recipe_bounds(*r, corpus, cfg);
    for (auto d : kAllDimensions) {
      CoverageRecord rec{r->recipe_id, d, (*r->ground_truth)[d], b[d].hs_lower, b[d].hs_upper,
                         Coverage::kIn};
      rec.classification = classify_coverage(rec.actual, rec.hs_lower, rec.hs_upper);
      ++counts[index(d)][static_cast<std::size_t>(rec.classification)];
      s.records.push_back(std::move(rec));
    }
  }
  std::array<std::size_t, 3> pooled{};
  const auto n = static_cast<double>(recipes.size());
  for (auto d : kAllDimensions) {
    for (std::size_t c = 0; c < 3; ++c) {
      s.percent[index(d)][c] = 100.0 * static_cast<double>(counts[index(d)][c]) / n;
      pooled[c] += counts[index(d)][c];
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    s.overall[c] = 100.0 * static_cast<double>(pooled[c]) / (n * kNumDimensions);
  }
  return s;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("pearson: length mismatch");
  if (a.size() < 2) return std::nullopt;
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 1e-24 || sbb <= 1e-24) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

MetricRow compute_metrics(std::string model, std::string dimension,
                          std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) throw DimensionMismatch("metrics: length mismatch");
  MetricRow row;
  row.model = std::move(model);
  row.dimension = std::move(dimension);
  row.n = actual.size();
  if (row.n == 0) return row;
  double abs_sum = 0.0, sq_sum = 0.0, err_sum = 0.0;
  for (std::size_t i = 0; i < row.n; ++i) {
    const double e = predicted[i] - actual[i];
    abs_sum += std::abs(e);
    sq_sum += e * e;
    err_sum += e;
  }
  const double n = static_cast<double>(row.n);
  row.mae = abs_sum / n;
  row.rmse = std::sqrt(sq_sum / n);
  row.bias = err_sum / n;
  row.pcc = pearson(predicted, actual);
  const double ma = mean(actual);
  double ss_tot = 0.0;
  for (double a : actual) ss_tot += (a - ma) * (a - ma);
  if (ss_tot > 1e-24) row.r2 = 1.0 - sq_sum / ss_tot;
  return row;
}

MetricRow average_4d(std::span<const MetricRow> rows) {
  MetricRow avg;
  std::size_t pcc_n = 0, r2_n = 0;
  double pcc = 0.0, r2 = 0.0;
  for (const auto& r : rows) {
    auto dim = parse_dimension(r.dimension);
    if (!dim || *dim == Dimension::kBitter) continue;
    avg.model = r.model;
    avg.mae += r.mae / 4.0;
    avg.rmse += r.rmse / 4.0;
    avg.bias += r.bias / 4.0;
    avg.n = r.n;
    if (r.pcc) {
      pcc += *r.pcc;
      ++pcc_n;
    }
    if (r.r2) {
      r2 += *r.r2;
      ++r2_n;
    }
  }
  avg.dimension = std::string(kAvg4D);
  if (pcc_n) avg.pcc = pcc / static_cast<double>(pcc_n);
  if (r2_n) avg.r2 = r2 / static_cast<double>(r2_n);
  return avg;
}

std::vector<MetricRow> summarize_predictions(const Predictions& p) {
  std::vector<MetricRow> rows;
  for (auto d : kAllDimensions) {
    rows.push_back(compute_metrics(std::string(to_string(p.kind)), std::string(to_string(d)),
                                   p.predicted[index(d)], p.actual[index(d)]));
  }
  rows.push_back(average_4d(rows));
  return rows;
}

PreparedModel::PreparedModel(ModelKind kind, const Corpus& corpus, const HybridConfig& cfg,
                             const CategoryLexicon& lexicon)
    : kind_(kind), cfg_(cfg), recipes_(corpus.ground_truth_recipes()) {
  cfg_.bounds.validate();
  if (recipes_.size() < 3) {
    throw InsufficientData("evaluation needs at least 3 ground-truth recipes, found " +
                           std::to_string(recipes_.size()));
  }
  if (is_learned(kind)) {
    const auto layout = make_layout(kind, cfg_, recipes_);
    design_ = build_design(layout, recipes_, corpus, cfg_.bounds, lexicon);
    for (auto d : kAllDimensions) {
      alphas_[index(d)] =
          select_alpha(design_.X[index(d)], design_.target[index(d)], cfg_.alpha_grid, cfg_.lasso).alpha;
    }
  } else {
    for (auto d : kAllDimensions) {
      design_.actual[index(d)].resize(static_cast<Eigen::Index>(recipes_.size()));
      direct_[index(d)].resize(recipes_.size());
    }
    for (std::size_t i = 0; i < recipes_.size(); ++i) {
      const auto b = recipe_bounds(*recipes_[i], corpus, cfg_.bounds);
      for (auto d : kAllDimensions) {
        design_.actual[index(d)](static_cast<Eigen::Index>(i)) = (*recipes_[i]->ground_truth)[d];
        direct_[index(d)][i] = kind == ModelKind::kHsMidpoint ? b[d].hs_midpoint : b[d].voigt;
      }
    }
    alphas_.fill(std::numeric_limits<double>::quiet_NaN());
  }
}

Predictions PreparedModel::out_of_fold(std::span<const std::size_t> fold_of) const {
  const std::size_t n = recipes_.size();
  if (fold_of.size() != n) throw DimensionMismatch("out_of_fold: fold assignment size mismatch");
  Predictions p;
  p.kind = kind_;
  for (const auto* r : recipes_) {
    p.recipe_ids.push_back(r->recipe_id);
    p.confidence.push_back(r->confidence);
  }
  for (auto d : kAllDimensions) {
    const auto& a = design_.actual[index(d)];
    p.actual[index(d)].assign(a.data(), a.data() + a.size());
    p.predicted[index(d)].assign(n, 0.0);
  }

  if (!is_learned(kind_)) {
    for (auto d : kAllDimensions) p.predicted[index(d)] = direct_[index(d)];
    return p;
  }

  std::map<std::size_t, std::vector<std::size_t>> folds;
  for (std::size_t i = 0; i < n; ++i) folds[fold_of[i]].push_back(i);
  std::vector<std::vector<std::size_t>> fold_list;
  for (auto& [id, members] : folds) fold_list.push_back(std::move(members));

  const std::size_t tasks = fold_list.size() * kNumDimensions;
  parallel_for(tasks, [&](std::size_t t) {
    const auto& members = fold_list[t / kNumDimensions];
    const std::size_t d = t % kNumDimensions;
    const auto pred = holdout_predictions(design_.X[d], design_.target[d], members, alphas_[d], cfg_.lasso);
    for (std::size_t j = 0; j < members.size(); ++j) {
      const auto i = members[j];
      double v = pred(static_cast<Eigen::Index>(j)) + design_.offset[d](static_cast<Eigen::Index>(i));
      if (cfg_.clip) v = std::clamp(v, 0.0, 100.0);
      p.predicted[d][i] = v;
    }
  });
  return p;
}

Predictions PreparedModel::loocv() const {
  std::vector<std::size_t> fold_of(recipes_.size());
  std::iota(fold_of.begin(), fold_of.end(), 0);
  return out_of_fold(fold_of);
}

std::vector<MetricRow> loocv_evaluate(const Corpus& corpus, ModelKind kind, const HybridConfig& cfg,
                                      const CategoryLexicon& lexicon) {
  return summarize_predictions(PreparedModel(kind, corpus, cfg, lexicon).loocv());
}

KFoldSummary kfold_evaluate(const PreparedModel& model, std::size_t k, std::size_t repeats,
                            std::uint64_t seed) {
  const std::size_t n = model.size();
  if (k < 2 || k > n) {
    throw InsufficientData("kfold: need 2 <= k <= n (k=" + std::to_string(k) +
                           ", n=" + std::to_string(n) + ")");
  }
  if (repeats == 0) throw ValidationError("kfold: repeats must be positive", "repeats");
  KFoldSummary s;
  s.kind = model.kind();
  s.k = k;
  s.repeats = repeats;
  s.seed = seed;
  Rng rng(seed);
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<std::size_t> fold_of(n);
    for (std::size_t j = 0; j < n; ++j) fold_of[order[j]] = j % k;
    const auto rows = summarize_predictions(model.out_of_fold(fold_of));
    s.per_repeat.push_back(rows.back().mae);
  }
  s.mean_mae = mean(s.per_repeat);
  if (repeats > 1) {
    double ss = 0.0;
    for (double v : s.per_repeat) ss += (v - s.mean_mae) * (v - s.mean_mae);
    s.sd_mae = std::sqrt(ss / static_cast<double>(repeats - 1));
  }
  return s;
}

std::vector<TierMetrics> stratify_by_confidence(const Predictions& p) {
  if (p.recipe_ids.empty()) throw NoGroundTruth("stratify: no predictions");
  std::vector<TierMetrics> out;
  for (auto tier : kTiers) {
    TierMetrics tm;
    tm.tier = tier;
    Predictions sub;
    sub.kind = p.kind;
    for (std::size_t i = 0; i < p.recipe_ids.size(); ++i) {
      if (p.confidence[i] != tier) continue;
      ++tm.n;
      for (auto d : kAllDimensions) {
        sub.predicted[index(d)].push_back(p.predicted[index(d)][i]);
        sub.actual[index(d)].push_back(p.actual[index(d)][i]);
      }
    }
    if (tm.n > 0) tm.rows = summarize_predictions(sub);
    out.push_back(std::move(tm));
  }
  return out;
}

double constant_baseline(const Corpus& corpus, Dimension dim, double c) {
  const auto recipes = corpus.ground_truth_recipes();
  if (recipes.empty()) throw NoGroundTruth("constant_baseline: no ground-truth recipes");
  double sum = 0.0;
  for (const auto* r : recipes) sum += std::abs(c - (*r->ground_truth)[dim]);
  return sum / static_cast<double>(recipes.size());
}

std::optional<double> hs_voigt_correlation(const Corpus& corpus, const BoundsConfig& cfg) {
  std::vector<double> mid, voigt;
  for (const auto& r : corpus.recipes()) {
    const auto b = recipe_bounds(r, corpus, cfg);
    for (auto d : kAllDimensions) {
      mid.push_back(b[d].hs_midpoint);
      voigt.push_back(b[d].voigt);
    }
  }
  return pearson(mid, voigt);
}

nlohmann::json build_report(const Corpus& corpus, const HybridConfig& cfg,
                            const CategoryLexicon& lexicon, const ReportOptions& options) {
  cfg.bounds.validate();
  const auto recipes = corpus.ground_truth_recipes();
  if (recipes.empty()) throw NoGroundTruth("evaluate: corpus has no ground-truth recipes");

  nlohmann::json report;
  nlohmann::json model_keys = nlohmann::json::array();
  for (auto m : options.models) model_keys.push_back(std::string(to_string(m)));
  report["format"] = "tastecomp-report/1";
  report["meta"] = {
      {"seed", options.seed},
      {"corpus_fingerprint", corpus.fingerprint()},
      {"n_recipes", corpus.recipes().size()},
      {"n_ground_truth", recipes.size()},
      {"skipped_no_ground_truth", corpus.count_without_ground_truth()},
      {"bounds", {{"epsilon", cfg.bounds.epsilon}, {"d", cfg.bounds.d}}},
      {"residual_target", cfg.residual_target},
      {"clip", cfg.clip},
      {"lexicon_hash", lexicon.hash()},
      {"models", model_keys},
      {"bias_convention", "predicted - actual"},
  };

  nlohmann::json gt = nlohmann::json::array();
  for (auto d : kAllDimensions) {
    std::vector<double> v;
    for (const auto* r : recipes) v.push_back((*r->ground_truth)[d]);
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    gt.push_back({{"dimension", std::string(to_string(d))}, {"mean", m}, {"sd", sd}, {"n", v.size()}});
  }
  report["ground_truth"] = gt;

  const auto cov = coverage_table(corpus, cfg.bounds);
  nlohmann::json cov_rows = nlohmann::json::array();
  for (auto d : kAllDimensions) {
    cov_rows.push_back({{"dimension", std::string(to_string(d))},
                        {"below", cov.percent[index(d)][0]},
                        {"in", cov.percent[index(d)][1]},
                        {"above", cov.percent[index(d)][2]},
                        {"n", cov.recipes}});
  }
  cov_rows.push_back({{"dimension", "overall"},
                      {"below", cov.overall[0]},
                      {"in", cov.overall[1]},
                      {"above", cov.overall[2]},
                      {"n", cov.recipes * kNumDimensions}});
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : cov.records) {
    records.push_back({{"recipe_id", r.recipe_id},
                       {"dimension", std::string(to_string(r.dimension))},
                       {"actual", r.actual},
                       {"hs_lower", r.hs_lower},
                       {"hs_upper", r.hs_upper},
                       {"classification", std::string(to_string(r.classification))}});
  }
  report["coverage"] = {{"summary", cov_rows}, {"records", records}};
  report["hs_voigt_pcc"] = optional_json(hs_voigt_correlation(corpus, cfg.bounds));

  nlohmann::json metrics = nlohmann::json::array();
  nlohmann::json strat = nlohmann::json::array();
  nlohmann::json alphas = nlohmann::json::object();
  nlohmann::json kfold = nlohmann::json::array();
  nlohmann::json predictions = nlohmann::json::array();
  for (auto kind : options.models) {
    const PreparedModel model(kind, corpus, cfg, lexicon);
    const auto preds = model.loocv();
    for (const auto& row : summarize_predictions(preds)) metrics.push_back(row_json(row));
    for (const auto& tier : stratify_by_confidence(preds)) {
      if (tier.n == 0) {
        strat.push_back({{"model", std::string(to_string(kind))},
                         {"tier", std::string(to_string(tier.tier))},
                         {"dimension", std::string(kAvg4D)},
                         {"n", 0},
                         {"note", "no recipes in tier"}});
        continue;
      }
      for (const auto& row : tier.rows) {
        auto j = row_json(row);
        j["tier"] = std::string(to_string(tier.tier));
        strat.push_back(std::move(j));
      }
    }
    for (std::size_t i = 0; i < preds.recipe_ids.size(); ++i) {
      nlohmann::json p = {{"model", std::string(to_string(kind))}, {"recipe_id", preds.recipe_ids[i]}};
      for (auto d : kAllDimensions) {
        p["pred_" + std::string(to_string(d))] = preds.predicted[index(d)][i];
        p["actual_" + std::string(to_string(d))] = preds.actual[index(d)][i];
      }
      predictions.push_back(std::move(p));
    }
    if (is_learned(kind)) {
      nlohmann::json a = nlohmann::json::object();
      for (auto d : kAllDimensions) a[std::string(to_string(d))] = model.alphas()[index(d)];
      alphas[std::string(to_string(kind))] = a;
      if (options.kfold && options.kfold_k <= model.size()) {
        const auto kf = kfold_evaluate(model, options.kfold_k, options.kfold_repeats, options.seed);
        kfold.push_back({{"model", std::string(to_string(kind))},
                         {"k", kf.k},
                         {"repeats", kf.repeats},
                         {"seed", kf.seed},
                         {"mean_mae", kf.mean_mae},
                         {"sd_mae", kf.sd_mae},
                         {"per_repeat", kf.per_repeat}});
      }
    }
  }
  report["metrics"] = metrics;
  report["stratification"] = strat;
  report["alphas"] = alphas;
  report["kfold"] = kfold;
  report["predictions"] = predictions;

  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& row : sweep_d(corpus, options.d_values, cfg.bounds)) {
    sweep.push_back({{"d", row.d}, {"fraction_above_upper", row.fraction_above_upper}, {"pairs", row.pairs}});
  }
  report["sweep_d"] = sweep;
  report["constant_baseline"] = {
      {"dimension", "bitter"},
      {"c", options.bitter_constant},
      {"mae", constant_baseline(corpus, Dimension::kBitter, options.bitter_constant)}};
  return report;
}

std::string report_json_text(const nlohmann::json& report) { return report.dump(2) + "\n"; }

std::map<std::string, std::string> report_csvs(const nlohmann::json& report) {
  std::map<std::string, std::string> files;
  const std::vector<std::string> metric_cols = {"model", "model_name", "dimension", "mae", "rmse",
                                                "pcc",   "bias",       "r2",        "n"};
  files["metrics.csv"] = table_csv(report.at("metrics"), metric_cols);
  auto strat_cols = metric_cols;
  strat_cols.insert(strat_cols.begin() + 1, "tier");
  strat_cols.push_back("note");
  files["stratification.csv"] = table_csv(report.at("stratification"), strat_cols);
  files["coverage.csv"] = table_csv(report.at("coverage").at("records"),
                                    {"recipe_id", "dimension", "actual", "hs_lower", "hs_upper",
                                     "classification"});
  files["coverage_summary.csv"] =
      table_csv(report.at("coverage").at("summary"), {"dimension", "below", "in", "above", "n"});
  files["sweep_d.csv"] = table_csv(report.at("sweep_d"), {"d", "fraction_above_upper", "pairs"});
  files["kfold.csv"] =
      table_csv(report.at("kfold"), {"model", "k", "repeats", "seed", "mean_mae", "sd_mae"});
  std::vector<std::string> pred_cols = {"model", "recipe_id"};
  for (auto d : kAllDimensions) {
    pred_cols.push_back("pred_" + std::string(to_string(d)));
    pred_cols.push_back("actual_" + std::string(to_string(d)));
  }
  files["predictions.csv"] = table_csv(report.at("predictions"), pred_cols);
  return files;
}

void write_report(const nlohmann::json& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", report_json_text(report));
  for (const auto& [name, text] : report_csvs(report)) write_file(dir / name, text);
}

std::string render_report(const nlohmann::json& report) {
  std::ostringstream out;
  const auto& meta = report.at("meta");
  out << "Recipes with ground truth: " << meta.at("n_ground_truth").get<std::size_t>()
      << " (skipped without ground truth: " << meta.at("skipped_no_ground_truth").get<std::size_t>()
      << ")\n\n";

  out << "HS bound coverage (%)\n";
  out << std::left << std::setw(10) << "taste" << std::right << std::setw(8) << "below"
      << std::setw(8) << "in" << std::setw(8) << "above" << "\n";
  for (const auto& r : report.at("coverage").at("summary")) {
    out << std::left << std::setw(10) << r.at("dimension").get<std::string>() << std::right
        << std::setw(8) << fixed(r.at("below").get<double>(), 0) << std::setw(8)
        << fixed(r.at("in").get<double>(), 0) << std::setw(8) << fixed(r.at("above").get<double>(), 0)
        << "\n";
  }
  if (!report.at("hs_voigt_pcc").is_null()) {
    out << "HS midpoint vs Voigt correlation: " << fixed(report.at("hs_voigt_pcc").get<double>(), 2) << "\n";
  }

  out << "\nLOOCV metrics (bias = predicted - actual)\n";
  out << std::left << std::setw(24) << "model" << std::setw(8) << "taste" << std::right
      << std::setw(8) << "MAE" << std::setw(8) << "RMSE" << std::setw(8) << "PCC" << std::setw(8)
      << "bias" << "\n";
  for (const auto& r : report.at("metrics")) {
    out << std::left << std::setw(24) << r.at("model_name").get<std::string>() << std::setw(8)
        << r.at("dimension").get<std::string>() << std::right << std::setw(8)
        << fixed(r.at("mae").get<double>(), 1) << std::setw(8) << fixed(r.at("rmse").get<double>(), 1)
        << std::setw(8) << fixed_or_na(r.at("pcc"), 2) << std::setw(8)
        << fixed(r.at("bias").get<double>(), 1) << "\n";
  }

  out << "\nConfidence tiers (avg 4D MAE)\n";
  for (const auto& r : report.at("stratification")) {
    if (r.at("dimension").get<std::string>() != kAvg4D) continue;
    out << "  " << std::left << std::setw(10) << r.at("model").get<std::string>() << std::setw(10)
        << r.at("tier").get<std::string>();
    if (r.at("n").get<std::size_t>() == 0) {
      out << "n=0 (no recipes)\n";
    } else {
      out << "MAE " << fixed(r.at("mae").get<double>(), 1) << "  n=" << r.at("n").get<std::size_t>() << "\n";
    }
  }

  if (!report.at("kfold").empty()) {
    out << "\nRepeated k-fold (avg 4D MAE)\n";
    for (const auto& r : report.at("kfold")) {
      out << "  " << std::left << std::setw(10) << r.at("model").get<std::string>() << fixed(r.at("mean_mae").get<double>(), 1)
          << " +- " << fixed(r.at("sd_mae").get<double>(), 1) << "  (k=" << r.at("k").get<std::size_t>()
          << ", repeats=" << r.at("repeats").get<std::size_t>() << ")\n";
    }
  }

  out << "\nExceedance vs d\n";
  for (const auto& r : report.at("sweep_d")) {
    out << "  d=" << std::left << std::setw(6) << csv::format_number(r.at("d").get<double>())
        << fixed(100.0 * r.at("fraction_above_upper").get<double>(), 1) << "%\n";
  }
  const auto& cb = report.at("constant_baseline");
  out << "\nConstant " << csv::format_number(cb.at("c").get<double>()) << " on "
      << cb.at("dimension").get<std::string>() << ": MAE " << fixed(cb.at("mae").get<double>(), 2) << "\n";
  return out.str();
}

}  // namespace tastecomp
