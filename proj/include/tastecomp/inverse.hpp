#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tastecomp/dataset.hpp"
#include "tastecomp/hybrid.hpp"
#include "tastecomp/taste.hpp"

namespace tastecomp {

struct IngredientBounds {
  double min = 0.0;
  double max = 1.0;
};

using Weights = std::array<double, kNumDimensions>;
using ForwardFn = std::function<TasteVector(std::span<const double>)>;

struct DesignProblem {
  std::vector<std::string> ingredient_ids;
  std::vector<double> initial;  // template fractions, same order as ids
  TasteVector target;
  Weights weights{};
  std::vector<IngredientBounds> bounds;

  // Throws InfeasibleBounds unless min <= max per ingredient and
  // sum(min) <= 1 <= sum(max).
  void validate() const;
};

struct DEConfig {
  // Population = max(5, population_size * ingredient count), the convention
  // of the common scipy-style optimizers.
  std::size_t population_size = 15;
  double crossover_probability = 0.8;
  double mutation_min = 0.5;  // F is redrawn from [min, max) every generation
  double mutation_max = 1.0;
  std::size_t max_iterations = 500;
  std::uint64_t seed = 42;
  // Stop once std(objective) <= atol + tol * |mean(objective)|.
  double tol = 0.01;
  double atol = 0.0;

  void validate() const;
};

struct DesignResult {
  std::vector<std::string> ingredient_ids;
  std::vector<double> initial;
  std::vector<double> optimized;
  std::vector<IngredientBounds> bounds;
  TasteVector predicted_before;
  TasteVector predicted_after;
  TasteVector target;
  Weights weights{};
  double objective_before = 0.0;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t population = 0;
  std::uint64_t seed = 0;
  std::vector<double> trace;  // best objective after each generation, [0] = initial population
};

inline constexpr double kSimplexTolerance = 1e-9;

// Weighted relative error sum_j W_j |desired_j - pred_j| / max(|pred_j|, 1).
// The candidate must already be feasible; NumericalError otherwise.
double objective(std::span<const double> fractions, const DesignProblem& problem,
                 const ForwardFn& forward);

// Clips to the box, then rescales the free coordinates to close the simplex
// gap, pinning any that cross a bound, until the sum is one.
std::vector<double> repair(std::span<const double> raw, std::span<const IngredientBounds> bounds);

// best1bin differential evolution with binomial crossover, dithered F,
// repair after every mutation and greedy replacement.
DesignResult design(const DesignProblem& problem, const ForwardFn& forward, const DEConfig& cfg = {});

// JSON scenario: recipe (or inline components), targets, weights and bounds.
struct Scenario {
  std::string label;
  std::string recipe_id;
  std::vector<Component> components;  // used when recipe_id is empty
  std::map<Dimension, double> target;        // absolute targets
  std::map<Dimension, double> target_delta;  // targets relative to the original prediction
  std::map<Dimension, double> weights;       // explicit weights override the defaults
  std::map<std::string, IngredientBounds> bounds;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iterations;
};

inline constexpr double kNamedWeight = 1.0;
inline constexpr double kUnnamedWeight = 0.25;

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// Resolves a scenario against the corpus and forward model. Dimensions with
// no target keep their original predicted value; named dimensions get weight
// 1, others 0.25, unless overridden.
DesignProblem make_problem(const Scenario& scenario, const Corpus& corpus, const ForwardModel& forward);

struct ScenarioRun {
  Scenario scenario;
  DesignResult result;
};

ScenarioRun run_scenario(const Scenario& scenario, const Corpus& corpus, const ModelBundle& model,
                         DEConfig cfg = {});

nlohmann::json design_result_to_json(const DesignResult& r, const Corpus& corpus,
                                     const std::string& label = {}, const std::string& recipe_id = {});

// The three reformulation scenarios: salt reduction (RP14), sugar reduction
// (RP55), umami boost (RP68).
std::vector<Scenario> case_study_scenarios(const Corpus& corpus);

std::vector<ScenarioRun> case_studies(const Corpus& corpus, const ModelBundle& model,
                                      const DEConfig& cfg = {});

}  // namespace tastecomp
