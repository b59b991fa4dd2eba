#include "tastecomp/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tastecomp/error.hpp"
#include "tastecomp/parallel.hpp"
#include "tastecomp/random.hpp"

namespace tastecomp {

namespace {

constexpr double kBoundSlack = 1e-12;
constexpr double kObjectiveSumTolerance = 1e-6;

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_bounds_feasible(std::span<const IngredientBounds> bounds) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto& b = bounds[i];
    if (!std::isfinite(b.min) || !std::isfinite(b.max) || b.min < 0.0 || b.max > 1.0 || b.min > b.max) {
      std::ostringstream msg;
      msg << "ingredient " << i << ": bounds [" << b.min << ", " << b.max
          << "] must satisfy 0 <= min <= max <= 1";
      throw InfeasibleBounds(msg.str(), "bounds");
    }
    lo += b.min;
    hi += b.max;
  }
  if (bounds.empty()) throw InfeasibleBounds("no ingredients to design over", "bounds");
  if (lo > 1.0 + kBoundSlack || hi < 1.0 - kBoundSlack) {
    std::ostringstream msg;
    msg << "bounds do not intersect the simplex: sum(min) = " << lo << ", sum(max) = " << hi;
    throw InfeasibleBounds(msg.str(), "bounds");
  }
}

double population_std(std::span<const double> e, double& mean_out) {
  const double m = sum(e) / static_cast<double>(e.size());
  double ss = 0.0;
  for (double x : e) ss += (x - m) * (x - m);
  mean_out = m;
  return std::sqrt(ss / static_cast<double>(e.size()));
}

nlohmann::json taste_json(const TasteVector& t) {
  nlohmann::json j = nlohmann::json::object();
  for (auto d : kAllDimensions) j[std::string(to_string(d))] = t[d];
  return j;
}

std::map<Dimension, double> dimension_map(const nlohmann::json& j, const std::string& field) {
  std::map<Dimension, double> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw ValidationError("'" + field + "' must be an object", field);
  for (const auto& [key, value] : j.items()) {
    auto d = parse_dimension(key);
    if (!d) throw ValidationError("unknown taste dimension '" + key + "'", field + "." + key);
    if (!value.is_number()) throw ValidationError("'" + field + "." + key + "' must be a number", field + "." + key);
    out[*d] = value.get<double>();
  }
  return out;
}

}  // namespace

void DesignProblem::validate() const {
  const auto n = ingredient_ids.size();
  if (initial.size() != n || bounds.size() != n) {
    throw DimensionMismatch("design problem: ids, initial fractions and bounds differ in length");
  }
  check_bounds_feasible(bounds);
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be >= 0", "weights");
  }
}

void DEConfig::validate() const {
  if (population_size < 1) throw ValidationError("population_size must be positive", "population_size");
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw ValidationError("crossover_probability must lie in [0, 1]", "crossover_probability");
  }
  if (!(mutation_min >= 0.0 && mutation_min <= mutation_max && mutation_max <= 2.0)) {
    throw ValidationError("mutation range must satisfy 0 <= min <= max <= 2", "mutation");
  }
  if (!(tol >= 0.0) || !(atol >= 0.0)) throw ValidationError("tolerances must be >= 0", "tol");
}

double objective(std::span<const double> v, const DesignProblem& problem, const ForwardFn& forward) {
  if (v.size() != problem.bounds.size()) throw DimensionMismatch("objective: fraction count mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < problem.bounds[i].min - kBoundSlack || v[i] > problem.bounds[i].max + kBoundSlack) {
      throw NumericalError("objective: candidate violates the box bounds");
    }
  }
  if (std::abs(sum(v) - 1.0) > kObjectiveSumTolerance) {
    throw NumericalError("objective: candidate is off the simplex");
  }
  const TasteVector pred = forward(v);
  double total = 0.0;
  for (auto d : kAllDimensions) {
    const double w = problem.weights[index(d)];
    if (w == 0.0) continue;
    if (!std::isfinite(pred[d])) throw ForwardModelError("forward model returned a non-finite score");
    total += w * std::abs(problem.target[d] - pred[d]) / std::max(std::abs(pred[d]), 1.0);
  }
  return total;
}

std::vector<double> repair(std::span<const double> raw, std::span<const IngredientBounds> bounds) {
  if (raw.size() != bounds.size()) throw DimensionMismatch("repair: fraction/bounds count mismatch");
  check_bounds_feasible(bounds);
  const std::size_t n = raw.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::isfinite(raw[i]) ? raw[i] : bounds[i].min;
    v[i] = std::clamp(x, bounds[i].min, bounds[i].max);
  }

  for (std::size_t iter = 0; iter < 2 * n + 4; ++iter) {
    const double gap = 1.0 - sum(v);
    if (std::abs(gap) <= 1e-14) return v;
    if (gap < 0.0) {
      double free_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] > bounds[i].min) free_sum += v[i];
      }
      const double scale = (free_sum + gap) / free_sum;
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] > bounds[i].min) v[i] = std::max(v[i] * scale, bounds[i].min);
      }
    } else {
      double free_sum = 0.0, headroom = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < bounds[i].max) {
          free_sum += v[i];
          headroom += bounds[i].max - v[i];
        }
      }
      if (free_sum > 0.0) {
        const double scale = (free_sum + gap) / free_sum;
        for (std::size_t i = 0; i < n; ++i) {
          if (v[i] < bounds[i].max) v[i] = std::min(v[i] * scale, bounds[i].max);
        }
      } else {
        // Every free coordinate sits at zero: spread by remaining headroom.
        for (std::size_t i = 0; i < n; ++i) {
          if (v[i] < bounds[i].max) v[i] += gap * (bounds[i].max - v[i]) / headroom;
        }
      }
    }
  }

  // Absorb the rounding residual in the coordinate with the most room.
  const double gap = 1.0 - sum(v);
  std::size_t best = 0;
  double room = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = gap > 0.0 ? bounds[i].max - v[i] : v[i] - bounds[i].min;
    if (r > room) {
      room = r;
      best = i;
    }
  }
  v[best] = std::clamp(v[best] + gap, bounds[best].min, bounds[best].max);
  if (std::abs(sum(v) - 1.0) > kSimplexTolerance) {
    throw NumericalError("repair: failed to reach the simplex");
  }
  return v;
}

DesignResult design(const DesignProblem& problem, const ForwardFn& forward, const DEConfig& cfg) {
  problem.validate();
  cfg.validate();
  const std::size_t n = problem.ingredient_ids.size();
  const std::size_t pop = std::max<std::size_t>(5, cfg.population_size * n);
  Rng rng(cfg.seed);

  // Latin hypercube over the box, one stratum per member in every coordinate.
  std::vector<std::vector<double>> population(pop, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> strata(pop);
    std::iota(strata.begin(), strata.end(), 0);
    rng.shuffle(strata);
    const auto& b = problem.bounds[j];
    for (std::size_t i = 0; i < pop; ++i) {
      const double u = (static_cast<double>(strata[i]) + rng.uniform()) / static_cast<double>(pop);
      population[i][j] = b.min + (b.max - b.min) * u;
    }
  }
  for (auto& member : population) member = repair(member, problem.bounds);
  population[0] = repair(problem.initial, problem.bounds);

  std::vector<double> energy(pop);
  parallel_for(pop, [&](std::size_t i) { energy[i] = objective(population[i], problem, forward); });

  auto best_index = [&] {
    return static_cast<std::size_t>(std::min_element(energy.begin(), energy.end()) - energy.begin());
  };
  auto converged = [&] {
    double m = 0.0;
    const double sd = population_std(energy, m);
    return sd <= cfg.atol + cfg.tol * std::abs(m);
  };

  DesignResult result;
  result.seed = cfg.seed;
  result.population = pop;
  std::size_t best = best_index();
  result.trace.push_back(energy[best]);
  result.converged = converged();

  std::vector<std::vector<double>> trials(pop, std::vector<double>(n));
  std::vector<double> trial_energy(pop);
  for (std::size_t gen = 1; gen <= cfg.max_iterations && !result.converged; ++gen) {
    const double f = rng.uniform(cfg.mutation_min, cfg.mutation_max);
    for (std::size_t i = 0; i < pop; ++i) {
      std::size_t r0, r1;
      do {
        r0 = rng.below(pop);
      } while (r0 == i);
      do {
        r1 = rng.below(pop);
      } while (r1 == i || r1 == r0);
      const std::size_t fill = rng.below(n);
      auto& trial = trials[i];
      trial = population[i];
      for (std::size_t j = 0; j < n; ++j) {
        const bool cross = rng.uniform() < cfg.crossover_probability;
        if (cross || j == fill) {
          trial[j] = population[best][j] + f * (population[r0][j] - population[r1][j]);
        }
      }
      trial = repair(trial, problem.bounds);
    }
    parallel_for(pop, [&](std::size_t i) { trial_energy[i] = objective(trials[i], problem, forward); });
    for (std::size_t i = 0; i < pop; ++i) {
      if (trial_energy[i] <= energy[i]) {
        population[i].swap(trials[i]);
        energy[i] = trial_energy[i];
      }
    }
    best = best_index();
    result.trace.push_back(energy[best]);
    result.iterations = gen;
    result.converged = converged();
  }

  result.ingredient_ids = problem.ingredient_ids;
  result.initial = problem.initial;
  result.optimized = population[best];
  result.bounds = problem.bounds;
  result.target = problem.target;
  result.weights = problem.weights;
  result.objective = energy[best];
  const auto initial_repaired = repair(problem.initial, problem.bounds);
  result.objective_before = objective(initial_repaired, problem, forward);
  result.predicted_before = forward(problem.initial);
  result.predicted_after = forward(result.optimized);
  return result;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("scenario must be a JSON object");
  Scenario s;
  try {
    s.label = j.value("label", "");
    s.recipe_id = j.value("recipe_id", "");
    if (j.contains("components")) {
      if (!j.at("components").is_array()) throw ValidationError("'components' must be a list", "components");
      for (const auto& c : j.at("components")) {
        s.components.push_back({c.at("ingredient_id").get<std::string>(), c.at("mass_fraction").get<double>()});
      }
    }
    if (s.recipe_id.empty() && s.components.empty()) {
      throw ValidationError("scenario needs 'recipe_id' or 'components'", "recipe_id");
    }
    s.target = dimension_map(j.value("target", nlohmann::json()), "target");
    s.target_delta = dimension_map(j.value("target_delta", nlohmann::json()), "target_delta");
    s.weights = dimension_map(j.value("weights", nlohmann::json()), "weights");
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      if (!b.is_object()) throw ValidationError("'bounds' must be an object", "bounds");
      for (const auto& [id, range] : b.items()) {
        if (!range.is_array() || range.size() != 2) {
          throw ValidationError("bounds for '" + id + "' must be [min, max]", "bounds." + id);
        }
        s.bounds[slugify(id)] = {range[0].get<double>(), range[1].get<double>()};
      }
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("max_iterations")) s.max_iterations = j.at("max_iterations").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed scenario: ") + e.what());
  }
  return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j = nlohmann::json::object();
  if (!s.label.empty()) j["label"] = s.label;
  if (!s.recipe_id.empty()) j["recipe_id"] = s.recipe_id;
  if (!s.components.empty()) {
    j["components"] = nlohmann::json::array();
    for (const auto& c : s.components) {
      j["components"].push_back({{"ingredient_id", c.ingredient_id}, {"mass_fraction", c.mass_fraction}});
    }
  }
  auto dims = [](const std::map<Dimension, double>& m) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [d, v] : m) o[std::string(to_string(d))] = v;
    return o;
  };
  if (!s.target.empty()) j["target"] = dims(s.target);
  if (!s.target_delta.empty()) j["target_delta"] = dims(s.target_delta);
  if (!s.weights.empty()) j["weights"] = dims(s.weights);
  if (!s.bounds.empty()) {
    j["bounds"] = nlohmann::json::object();
    for (const auto& [id, b] : s.bounds) j["bounds"][id] = {b.min, b.max};
  }
  if (s.seed) j["seed"] = *s.seed;
  if (s.max_iterations) j["max_iterations"] = *s.max_iterations;
  return j;
}

DesignProblem make_problem(const Scenario& s, const Corpus& corpus, const ForwardModel& forward) {
  DesignProblem p;
  p.ingredient_ids = forward.ingredient_ids();
  std::vector<Component> comps;
  if (!s.recipe_id.empty()) {
    const auto* r = corpus.find_recipe(s.recipe_id);
    if (!r) throw MissingFixture("unknown recipe '" + s.recipe_id + "'", "recipe_id");
    comps = r->components;
  } else {
    comps = corpus.make_recipe("scenario", s.components).components;
  }
  if (comps.size() != p.ingredient_ids.size()) {
    throw DimensionMismatch("scenario template does not match the forward model ingredients");
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].ingredient_id != p.ingredient_ids[i]) {
      throw DimensionMismatch("scenario template does not match the forward model ingredients");
    }
    p.initial.push_back(comps[i].mass_fraction);
  }

  p.bounds.assign(comps.size(), IngredientBounds{});
  for (const auto& [id, b] : s.bounds) {
    bool found = false;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].ingredient_id == id) {
        p.bounds[i] = b;
        found = true;
      }
    }
    if (!found) throw ValidationError("bounds given for '" + id + "', which is not in the recipe", "bounds." + id);
  }

  const TasteVector original = forward(p.initial);
  p.target = original;
  for (auto d : kAllDimensions) p.weights[index(d)] = kUnnamedWeight;
  for (const auto& [d, v] : s.target) {
    p.target[d] = v;
    p.weights[index(d)] = kNamedWeight;
  }
  for (const auto& [d, delta] : s.target_delta) {
    p.target[d] = original[d] + delta;
    p.weights[index(d)] = kNamedWeight;
  }
  for (const auto& [d, w] : s.weights) p.weights[index(d)] = w;
  p.validate();
  return p;
}

ScenarioRun run_scenario(const Scenario& scenario, const Corpus& corpus, const ModelBundle& model,
                         DEConfig cfg) {
  std::vector<std::string> ids;
  if (!scenario.recipe_id.empty()) {
    const auto* r = corpus.find_recipe(scenario.recipe_id);
    if (!r) throw MissingFixture("unknown recipe '" + scenario.recipe_id + "'", "recipe_id");
    for (const auto& c : r->components) ids.push_back(c.ingredient_id);
  } else {
    for (const auto& c : corpus.make_recipe("scenario", scenario.components).components) {
      ids.push_back(c.ingredient_id);
    }
  }
  const ForwardModel forward(model, corpus, ids);
  const auto problem = make_problem(scenario, corpus, forward);
  if (scenario.seed) cfg.seed = *scenario.seed;
  if (scenario.max_iterations) cfg.max_iterations = *scenario.max_iterations;
  ForwardFn fn = [&forward](std::span<const double> v) { return forward(v); };
  return {scenario, design(problem, fn, cfg)};
}

nlohmann::json design_result_to_json(const DesignResult& r, const Corpus& corpus,
                                     const std::string& label, const std::string& recipe_id) {
  nlohmann::json ingredients = nlohmann::json::array();
  for (std::size_t i = 0; i < r.ingredient_ids.size(); ++i) {
    const auto* ing = corpus.find_ingredient(r.ingredient_ids[i]);
    ingredients.push_back({{"ingredient_id", r.ingredient_ids[i]},
                           {"display_name", ing ? ing->display_name : r.ingredient_ids[i]},
                           {"initial", r.initial[i]},
                           {"optimized", r.optimized[i]},
                           {"delta", r.optimized[i] - r.initial[i]},
                           {"min", r.bounds[i].min},
                           {"max", r.bounds[i].max}});
  }
  nlohmann::json changes = nlohmann::json::array();
  for (auto d : kAllDimensions) {
    const double before = r.predicted_before[d];
    const double after = r.predicted_after[d];
    changes.push_back({{"dimension", std::string(to_string(d))},
                       {"before", before},
                       {"after", after},
                       {"target", r.target[d]},
                       {"weight", r.weights[index(d)]},
                       {"percent_change", before != 0.0 ? nlohmann::json(100.0 * (after - before) / before)
                                                        : nlohmann::json(nullptr)}});
  }
  nlohmann::json weights = nlohmann::json::object();
  for (auto d : kAllDimensions) weights[std::string(to_string(d))] = r.weights[index(d)];
  return {{"label", label},
          {"recipe_id", recipe_id},
          {"ingredients", ingredients},
          {"taste", changes},
          {"predicted_before", taste_json(r.predicted_before)},
          {"predicted_after", taste_json(r.predicted_after)},
          {"target", taste_json(r.target)},
          {"weights", weights},
          {"objective_before", r.objective_before},
          {"objective", r.objective},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"population", r.population},
          {"seed", r.seed},
          {"fraction_sum", sum(r.optimized)},
          {"trace", r.trace}};
}

std::vector<Scenario> case_study_scenarios(const Corpus& corpus) {
  auto cap = [&](const char* recipe_id, const char* keyword, double max_fraction) {
    const auto& r = corpus.recipe(recipe_id);
    std::map<std::string, IngredientBounds> out;
    for (const auto& c : r.components) {
      if (c.ingredient_id.find(keyword) != std::string::npos) out[c.ingredient_id] = {0.0, max_fraction};
    }
    if (out.empty()) {
      throw MissingFixture(std::string("recipe '") + recipe_id + "' has no '" + keyword + "' ingredient");
    }
    return out;
  };

  std::vector<Scenario> cases(3);
  cases[0].label = "Case 1: salt reduction";
  cases[0].recipe_id = "RP14";
  cases[0].target_delta = {{Dimension::kSalt, -5.0}, {Dimension::kUmami, 0.0}};
  cases[0].bounds = cap("RP14", "salt", 0.003);

  cases[1].label = "Case 2: sugar reduction";
  cases[1].recipe_id = "RP55";
  cases[1].target_delta = {{Dimension::kSweet, 0.0}};
  cases[1].bounds = cap("RP55", "sugar", 0.35);

  cases[2].label = "Case 3: umami boost";
  cases[2].recipe_id = "RP68";
  cases[2].target_delta = {{Dimension::kUmami, 3.0}, {Dimension::kSweet, -3.0}};
  cases[2].bounds = cap("RP68", "sugar", 0.05);
  return cases;
}

std::vector<ScenarioRun> case_studies(const Corpus& corpus, const ModelBundle& model, const DEConfig& cfg) {
  std::vector<ScenarioRun> runs;
  for (const auto& s : case_study_scenarios(corpus)) runs.push_back(run_scenario(s, corpus, model, cfg));
  return runs;
}

}  // namespace tastecomp
