#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tastecomp/bounds.hpp"
#include "tastecomp/chemistry.hpp"
#include "tastecomp/dataset.hpp"
#include "tastecomp/hybrid.hpp"

namespace tastecomp {

enum class Coverage { kBelow, kIn, kAbove };

std::string_view to_string(Coverage c) noexcept;

inline constexpr double kCoverageSlack = 1e-9;

// BELOW iff actual < lower - 1e-9, ABOVE iff actual > upper + 1e-9, else IN.
Coverage classify_coverage(double actual, double lower, double upper) noexcept;

struct CoverageRecord {
  std::string recipe_id;
  Dimension dimension = Dimension::kSweet;
  double actual = 0.0;
  double hs_lower = 0.0;
  double hs_upper = 0.0;
  Coverage classification = Coverage::kIn;
};

struct CoverageSummary {
  // Percentages indexed [dimension][BELOW, IN, ABOVE].
  std::array<std::array<double, 3>, kNumDimensions> percent{};
  std::array<double, 3> overall{};
  std::vector<CoverageRecord> records;
  std::size_t recipes = 0;
  std::size_t skipped = 0;  // recipes without ground truth
};

CoverageSummary coverage_table(const Corpus& corpus, const BoundsConfig& cfg = {});

inline constexpr std::string_view kAvg4D = "AVG_4D";

struct MetricRow {
  std::string model;      // short key, e.g. "hybrid"
  std::string dimension;  // taste dimension name or AVG_4D
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> pcc;  // empty when either side has zero variance
  double bias = 0.0;          // mean(predicted - actual)
  std::optional<double> r2;
  std::size_t n = 0;
};

std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

MetricRow compute_metrics(std::string model, std::string dimension,
                          std::span<const double> predicted, std::span<const double> actual);

// Averages per-dimension rows over sweet, sour, umami and salt.
MetricRow average_4d(std::span<const MetricRow> per_dimension);

// Out-of-sample predictions for every ground-truth recipe.
struct Predictions {
  ModelKind kind = ModelKind::kHsMidpoint;
  std::vector<std::string> recipe_ids;
  std::vector<Confidence> confidence;
  std::array<std::vector<double>, kNumDimensions> predicted;
  std::array<std::vector<double>, kNumDimensions> actual;
};

std::vector<MetricRow> summarize_predictions(const Predictions& p);

// Model family bound to a corpus: layout, design, and the alpha chosen per
// dimension by leave-one-out over all ground-truth recipes. Fold fits reuse
// that alpha, so LOOCV and k-fold share one protocol.
class PreparedModel {
 public:
  PreparedModel(ModelKind kind, const Corpus& corpus, const HybridConfig& cfg = {},
                const CategoryLexicon& lexicon = CategoryLexicon::default_lexicon());

  ModelKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return recipes_.size(); }
  const std::array<double, kNumDimensions>& alphas() const noexcept { return alphas_; }

  // fold_of[i] names the fold of ground-truth recipe i; each fold is
  // predicted by a model fit on all other folds.
  Predictions out_of_fold(std::span<const std::size_t> fold_of) const;
  Predictions loocv() const;

 private:
  ModelKind kind_;
  HybridConfig cfg_;
  std::vector<const RecipeComposition*> recipes_;
  Design design_;
  std::array<double, kNumDimensions> alphas_{};
  std::array<std::vector<double>, kNumDimensions> direct_;  // HS / RV predictions
};

std::vector<MetricRow> loocv_evaluate(const Corpus& corpus, ModelKind kind,
                                      const HybridConfig& cfg = {},
                                      const CategoryLexicon& lexicon = CategoryLexicon::default_lexicon());

struct KFoldSummary {
  ModelKind kind = ModelKind::kHybrid;
  std::size_t k = 10;
  std::size_t repeats = 5;
  std::uint64_t seed = 42;
  double mean_mae = 0.0;  // avg(4D) MAE over repeats
  double sd_mae = 0.0;    // sample standard deviation over repeats
  std::vector<double> per_repeat;
};

KFoldSummary kfold_evaluate(const PreparedModel& model, std::size_t k, std::size_t repeats,
                            std::uint64_t seed);

struct TierMetrics {
  Confidence tier = Confidence::kHigh;
  std::size_t n = 0;
  std::vector<MetricRow> rows;  // empty when n == 0
};

std::vector<TierMetrics> stratify_by_confidence(const Predictions& p);

double constant_baseline(const Corpus& corpus, Dimension dim, double c);

// Pearson correlation of hs_midpoint and voigt over all recipe-dimension pairs.
std::optional<double> hs_voigt_correlation(const Corpus& corpus, const BoundsConfig& cfg = {});

struct ReportOptions {
  std::vector<ModelKind> models{kAllModelKinds.begin(), kAllModelKinds.end()};
  std::vector<double> d_values{2.0, 3.0, 5.0, 10.0, 50.0};
  std::size_t kfold_k = 10;
  std::size_t kfold_repeats = 5;
  bool kfold = true;
  std::uint64_t seed = 42;
  double bitter_constant = 2.0;
};

nlohmann::json build_report(const Corpus& corpus, const HybridConfig& cfg,
                            const CategoryLexicon& lexicon, const ReportOptions& options);

std::string report_json_text(const nlohmann::json& report);

// CSV mirrors of the report tables, keyed by file name.
std::map<std::string, std::string> report_csvs(const nlohmann::json& report);

// Writes report.json and the CSV mirrors into `dir`.
void write_report(const nlohmann::json& report, const std::filesystem::path& dir);

// Human-readable rounded tables.
std::string render_report(const nlohmann::json& report);

}  // namespace tastecomp
