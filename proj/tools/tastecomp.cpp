// tastecomp: command-line front end for bounds, evaluation and inverse design.
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tastecomp/api.hpp"
#include "tastecomp/csv.hpp"
#include "tastecomp/error.hpp"
#include "tastecomp/evaluation.hpp"
#include "tastecomp/inverse.hpp"
#include "tastecomp/parallel.hpp"
#include "tastecomp/service.hpp"
#include "tastecomp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace tastecomp;

namespace {

constexpr int kExitUser = 2;
constexpr int kExitInternal = 3;

struct Globals {
  std::string data_dir;
  std::string ingredients;
  std::string recipes;
  std::string lexicon;
  std::string model;
  double d = 3.0;
  double epsilon = 0.01;
  std::uint64_t seed = 42;
  std::size_t threads = 0;
  bool clip = false;
  bool json = false;
};

Corpus load_corpus_from(const Globals& g) {
  if (!g.ingredients.empty() || !g.recipes.empty()) {
    if (g.ingredients.empty() || g.recipes.empty()) {
      throw UserError("--ingredients and --recipes must be given together", "recipes");
    }
    return load_corpus(g.ingredients, g.recipes);
  }
  std::string dir = g.data_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("TASTE_COMPOSITE_DATA")) dir = env;
  }
  if (dir.empty()) {
    throw UserError("no corpus: pass --data-dir, --ingredients/--recipes, or set TASTE_COMPOSITE_DATA",
                    "data-dir");
  }
  return load_corpus_dir(dir);
}

CategoryLexicon load_lexicon(const Globals& g) {
  return g.lexicon.empty() ? CategoryLexicon::default_lexicon() : CategoryLexicon::load(g.lexicon);
}

HybridConfig hybrid_config(const Globals& g) {
  HybridConfig cfg;
  cfg.bounds.d = g.d;
  cfg.bounds.epsilon = g.epsilon;
  cfg.bounds.validate();
  cfg.clip = g.clip;
  return cfg;
}

ModelBundle load_or_train(const Globals& g, const Corpus& corpus, const CategoryLexicon& lexicon) {
  if (g.model.empty()) return train_hybrid(corpus, hybrid_config(g), lexicon);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(g.model));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(g.model + ": " + e.what(), "model");
  }
  auto bundle = bundle_from_json(j);
  if (!bundle.corpus_fingerprint.empty() && bundle.corpus_fingerprint != corpus.fingerprint()) {
    std::cerr << "warning: model bundle was trained on a different corpus\n";
  }
  return bundle;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

nlohmann::json read_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void print_forward(const nlohmann::json& p, const std::string& title) {
  std::cout << title << "\n";
  std::cout << pad("dimension", 10) << pad("reuss", 9) << pad("hs_lower", 10) << pad("hs_mid", 9)
            << pad("hs_upper", 10) << pad("voigt", 9) << pad("correction", 12) << pad("predicted", 11) << "\n";
  for (auto d : kAllDimensions) {
    const std::string k(to_string(d));
    const auto& b = p.at("bounds").at(k);
    const double pred = p.at("hybrid_prediction").at(k).get<double>();
    const double mid = b.at("hs_midpoint").get<double>();
    std::cout << pad(k, 10) << pad(fixed(b.at("reuss").get<double>()), 9)
              << pad(fixed(b.at("hs_lower").get<double>()), 10) << pad(fixed(mid), 9)
              << pad(fixed(b.at("hs_upper").get<double>()), 10) << pad(fixed(b.at("voigt").get<double>()), 9)
              << pad(fixed(pred - mid), 12) << pad(fixed(pred), 11) << "\n";
  }
  std::cout << "chemistry:";
  for (const auto& [k, v] : p.at("chemistry_features").items()) std::cout << " " << k << "=" << fixed(v.get<double>(), 4);
  std::cout << "\n";
}

void print_design(const nlohmann::json& r) {
  std::cout << (r.value("label", "").empty() ? std::string("design") : r.at("label").get<std::string>());
  if (!r.value("recipe_id", "").empty()) std::cout << " [" << r.at("recipe_id").get<std::string>() << "]";
  std::cout << "\n  objective " << fixed(r.at("objective_before").get<double>(), 4) << " -> "
            << fixed(r.at("objective").get<double>(), 4) << " after " << r.at("iterations").get<std::size_t>()
            << " generations (" << (r.at("converged").get<bool>() ? "converged" : "iteration limit")
            << ", seed " << r.at("seed").get<std::uint64_t>() << ")\n";
  for (const auto& t : r.at("taste")) {
    std::cout << "  " << std::left << std::setw(8) << t.at("dimension").get<std::string>() << std::right
              << pad(fixed(t.at("before").get<double>(), 1), 7) << " -> " << pad(fixed(t.at("after").get<double>(), 1), 6)
              << "   target " << pad(fixed(t.at("target").get<double>(), 1), 6) << "  weight "
              << fixed(t.at("weight").get<double>(), 2) << "\n";
  }
  for (const auto& ing : r.at("ingredients")) {
    const double delta = ing.at("delta").get<double>();
    std::cout << "  " << std::left << std::setw(24) << ing.at("display_name").get<std::string>() << std::right
              << pad(fixed(ing.at("initial").get<double>(), 3), 7) << " -> "
              << pad(fixed(ing.at("optimized").get<double>(), 3), 6) << "  (" << (delta >= 0 ? "+" : "")
              << fixed(delta, 3) << ")\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Composite taste modelling: physics bounds, hybrid correction, inverse design"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--data-dir", g.data_dir, "Directory with ingredients.csv and recipes.csv (default: $TASTE_COMPOSITE_DATA)");
  app.add_option("--ingredients", g.ingredients, "Ingredient table CSV");
  app.add_option("--recipes", g.recipes, "Recipe decomposition CSV");
  app.add_option("--lexicon", g.lexicon, "Category lexicon JSON overriding the built-in lists");
  app.add_option("--model", g.model, "Trained model bundle (default: train a hybrid model on the corpus)");
  app.add_option("--d", g.d, "Shape parameter d of the HS auxiliary function")->capture_default_str();
  app.add_option("--epsilon", g.epsilon, "Zero-score floor")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_flag("--clip", g.clip, "Clamp predictions to [0, 100]");
  app.add_flag("--json", g.json, "Machine-readable output");

  // predict
  auto* predict = app.add_subcommand("predict", "Bounds, chemistry features and prediction for one recipe");
  std::string recipe_arg;
  std::vector<std::string> component_args;
  predict->add_option("recipe", recipe_arg, "Recipe id from the corpus, or a JSON file with a components list");
  predict->add_option("-c,--component", component_args, "Inline component as ingredient_id=fraction");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Coverage, LOOCV metrics and robustness checks; writes a report");
  std::vector<std::string> model_names;
  std::string report_dir = "report";
  std::size_t kfold_k = 10, repeats = 5;
  bool no_kfold = false;
  evaluate->add_option("--models", model_names, "Models to evaluate: hs, rv, lasso5, hybrid, lasso115")->delimiter(',');
  evaluate->add_option("-o,--out", report_dir, "Output directory for report.json and CSVs")->capture_default_str();
  evaluate->add_option("--kfold-k", kfold_k, "Folds for repeated k-fold")->capture_default_str();
  evaluate->add_option("--repeats", repeats, "Repeats for k-fold")->capture_default_str();
  evaluate->add_flag("--no-kfold", no_kfold, "Skip repeated k-fold");

  // design
  auto* design_cmd = app.add_subcommand("design", "Inverse design from a scenario file");
  std::string scenario_path, design_out;
  int case_number = 0;
  std::size_t max_iter = 0;
  design_cmd->add_option("scenario", scenario_path, "Scenario JSON file");
  design_cmd->add_option("--case", case_number, "Built-in case study 1, 2 or 3")->check(CLI::Range(1, 3));
  design_cmd->add_option("-o,--out", design_out, "Write the result JSON here");
  design_cmd->add_option("--max-iter", max_iter, "Generation limit");

  // cases
  auto* cases_cmd = app.add_subcommand("cases", "Run the three reformulation case studies");
  std::string cases_out;
  cases_cmd->add_option("-o,--out", cases_out, "Write case results JSON here");

  // sweep-d
  auto* sweep = app.add_subcommand("sweep-d", "Share of ground truth above hs_upper for several d");
  std::vector<double> d_values{2, 3, 5, 10, 50};
  sweep->add_option("--d-values", d_values, "Comma-separated d values")->delimiter(',');

  // train
  auto* train = app.add_subcommand("train", "Fit a model on all ground-truth recipes and write the bundle");
  std::string train_out = "model.json", train_kind = "hybrid";
  bool no_residual = false;
  train->add_option("-o,--out", train_out, "Bundle path")->capture_default_str();
  train->add_option("--kind", train_kind, "hybrid, lasso5 or lasso115")->capture_default_str();
  train->add_flag("--no-residual", no_residual, "Learn the midpoint coefficient instead of fixing it at one");

  // serve
  auto* serve = app.add_subcommand("serve", "Start the JSON HTTP service");
  ServiceConfig scfg;
  std::string report_path, static_dir;
  serve->add_option("--bind", scfg.bind, "Bind address")->capture_default_str();
  serve->add_option("--port", scfg.port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--report", report_path, "report.json served at /api/report");
  serve->add_option("--cors", scfg.cors_origin, "Access-Control-Allow-Origin value (empty disables)")->capture_default_str();
  serve->add_option("--static", static_dir, "Directory served at / (the web UI)");
  serve->add_option("--jobs", scfg.job_capacity, "Design job table capacity")->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Write the seeded synthetic corpus");
  std::string synth_out = "data/synthetic";
  SyntheticOptions sopts;
  bool planted = false;
  synth->add_option("-o,--out", synth_out, "Output directory")->capture_default_str();
  synth->add_option("--count", sopts.recipes, "Number of recipes")->capture_default_str();
  synth->add_option("--noise", sopts.noise, "Panel noise sd")->capture_default_str();
  synth->add_flag("--planted", planted, "Write the planted salt-coefficient corpus instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUser;
  }

  set_thread_count(g.threads);
  sopts.seed = g.seed;

  if (synth->parsed()) {
    const auto corpus = planted ? planted_salt_corpus(g.seed) : synthetic_corpus(sopts);
    write_corpus(corpus, fs::path(synth_out) / "ingredients.csv", fs::path(synth_out) / "recipes.csv");
    std::cout << "wrote " << corpus.ingredients().size() << " ingredients and " << corpus.recipes().size()
              << " recipes to " << synth_out << "\n";
    return 0;
  }

  const auto corpus = load_corpus_from(g);
  const auto lexicon = load_lexicon(g);

  if (predict->parsed()) {
    std::vector<Component> comps;
    std::string title;
    if (!component_args.empty()) {
      for (const auto& arg : component_args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos) throw ValidationError("component '" + arg + "' is not id=fraction", "component");
        comps.push_back({arg.substr(0, eq), csv::parse_number(arg.substr(eq + 1), "--component", 0, "mass_fraction")});
      }
      title = "custom composition";
    } else if (recipe_arg.empty()) {
      throw ValidationError("predict needs a recipe id, a JSON file or --component", "recipe");
    } else if (const auto* r = corpus.find_recipe(recipe_arg)) {
      comps = r->components;
      title = r->recipe_id + " " + r->name;
    } else if (fs::exists(recipe_arg)) {
      comps = api::components_from_json(read_json_file(recipe_arg));
      title = recipe_arg;
    } else {
      throw MissingFixture("'" + recipe_arg + "' is neither a recipe id nor a file", "recipe");
    }
    api::Session session{corpus, load_or_train(g, corpus, lexicon), lexicon, std::nullopt};
    const auto payload = api::forward_payload(session, comps);
    if (g.json) {
      std::cout << api::to_text(payload);
    } else {
      print_forward(payload, title + " (model " + payload.at("model").get<std::string>() + ")");
    }
    return 0;
  }

  if (evaluate->parsed()) {
    ReportOptions opts;
    opts.seed = g.seed;
    opts.kfold = !no_kfold;
    opts.kfold_k = kfold_k;
    opts.kfold_repeats = repeats;
    if (!model_names.empty()) {
      opts.models.clear();
      for (const auto& m : model_names) {
        const auto kind = parse_model_kind(m);
        if (!kind) throw ValidationError("unknown model '" + m + "'", "models");
        opts.models.push_back(*kind);
      }
    }
    const auto report = build_report(corpus, hybrid_config(g), lexicon, opts);
    write_report(report, report_dir);
    if (g.json) {
      std::cout << report_json_text(report);
    } else {
      std::cout << render_report(report) << "\nwrote " << (fs::path(report_dir) / "report.json").string() << "\n";
    }
    return 0;
  }

  if (design_cmd->parsed() || cases_cmd->parsed()) {
    const auto model = load_or_train(g, corpus, lexicon);
    DEConfig cfg;
    cfg.seed = g.seed;
    if (max_iter > 0) cfg.max_iterations = max_iter;
    std::vector<Scenario> scenarios;
    if (cases_cmd->parsed()) {
      scenarios = case_study_scenarios(corpus);
    } else if (case_number > 0) {
      scenarios.push_back(case_study_scenarios(corpus).at(static_cast<std::size_t>(case_number - 1)));
    } else if (!scenario_path.empty()) {
      scenarios.push_back(scenario_from_json(read_json_file(scenario_path)));
    } else {
      throw ValidationError("design needs a scenario file or --case", "scenario");
    }
    nlohmann::json results = nlohmann::json::array();
    for (auto s : scenarios) {
      if (seed_opt->count() > 0) s.seed.reset();
      if (max_iter > 0) s.max_iterations.reset();
      const auto run = run_scenario(s, corpus, model, cfg);
      results.push_back(design_result_to_json(run.result, corpus, s.label, s.recipe_id));
    }
    const nlohmann::json out = design_cmd->parsed() ? results.at(0) : results;
    const std::string out_path = design_cmd->parsed() ? design_out : cases_out;
    if (!out_path.empty()) write_file(out_path, api::to_text(out));
    if (g.json) {
      std::cout << api::to_text(out);
    } else {
      for (const auto& r : results) print_design(r);
    }
    return 0;
  }

  if (sweep->parsed()) {
    BoundsConfig base;
    base.epsilon = g.epsilon;
    const auto rows = sweep_d(corpus, d_values, base);
    if (g.json) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : rows) j.push_back({{"d", r.d}, {"fraction_above_upper", r.fraction_above_upper}, {"pairs", r.pairs}});
      std::cout << api::to_text(j);
    } else {
      std::cout << pad("d", 8) << pad("above_upper", 14) << pad("pairs", 8) << "\n";
      for (const auto& r : rows) {
        std::cout << pad(fixed(r.d, 1), 8) << pad(fixed(100.0 * r.fraction_above_upper, 1) + "%", 14)
                  << pad(std::to_string(r.pairs), 8) << "\n";
      }
    }
    return 0;
  }

  if (train->parsed()) {
    const auto kind = parse_model_kind(train_kind);
    if (!kind || !is_learned(*kind)) throw ValidationError("cannot train model kind '" + train_kind + "'", "kind");
    auto cfg = hybrid_config(g);
    cfg.residual_target = !no_residual;
    const auto bundle = train_model(*kind, corpus, cfg, lexicon);
    write_file(train_out, api::to_text(bundle_to_json(bundle)));
    if (g.json) {
      std::cout << api::to_text(bundle_to_json(bundle));
    } else {
      std::cout << "trained " << display_name(*kind) << " on " << corpus.ground_truth_recipes().size()
                << " recipes; alpha per dimension:";
      for (auto d : kAllDimensions) std::cout << " " << to_string(d) << "=" << bundle.models[index(d)].alpha;
      std::cout << "\nwrote " << train_out << "\n";
    }
    return 0;
  }

  if (serve->parsed()) {
    if (!static_dir.empty()) scfg.static_dir = static_dir;
    api::Session session{corpus, load_or_train(g, corpus, lexicon), lexicon, std::nullopt};
    if (!report_path.empty()) session.report_path = report_path;
    scfg.de.seed = g.seed;
    Service service(scfg);
    service.load(std::move(session));
    const int port = service.bind();
    std::cerr << "listening on http://" << scfg.bind << ":" << port << "\n";
    service.listen();
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
