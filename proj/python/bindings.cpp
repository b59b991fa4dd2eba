#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tastecomp/api.hpp"
#include "tastecomp/bounds.hpp"
#include "tastecomp/error.hpp"
#include "tastecomp/evaluation.hpp"
#include "tastecomp/inverse.hpp"
#include "tastecomp/synthetic.hpp"

namespace py = pybind11;
using namespace tastecomp;

namespace {

// JSON crosses the boundary as text; the Python wrapper decodes it.
std::string dumps(const nlohmann::json& j) { return j.dump(); }

nlohmann::json loads(const std::string& s) {
  try {
    return nlohmann::json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

struct PyModel {
  std::shared_ptr<api::Session> session;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "tastecomp native core";

  py::register_exception<UserError>(m, "UserError", PyExc_ValueError);

  py::class_<Corpus>(m, "Corpus")
      .def_property_readonly("ingredient_ids",
                             [](const Corpus& c) {
                               std::vector<std::string> ids;
                               for (const auto& [id, _] : c.ingredients()) ids.push_back(id);
                               return ids;
                             })
      .def_property_readonly("recipe_ids",
                             [](const Corpus& c) {
                               std::vector<std::string> ids;
                               for (const auto& r : c.recipes()) ids.push_back(r.recipe_id);
                               return ids;
                             })
      .def("fingerprint", &Corpus::fingerprint)
      .def("ingredients_csv", [](const Corpus& c) { return ingredients_csv(c); })
      .def("recipes_csv", [](const Corpus& c) { return recipes_csv(c); })
      .def("recipe_components",
           [](const Corpus& c, const std::string& id) {
             std::vector<std::pair<std::string, double>> out;
             for (const auto& comp : c.recipe(id).components) out.emplace_back(comp.ingredient_id, comp.mass_fraction);
             return out;
           })
      .def("__len__", [](const Corpus& c) { return c.recipes().size(); });

  m.def("load_corpus", [](const std::string& ing, const std::string& rec) { return load_corpus(ing, rec); },
        py::arg("ingredients"), py::arg("recipes"));
  m.def("load_corpus_dir", [](const std::string& dir) { return load_corpus_dir(dir); }, py::arg("directory"));
  m.def("parse_corpus", [](const std::string& ing, const std::string& rec) { return parse_corpus(ing, rec); },
        py::arg("ingredients_csv"), py::arg("recipes_csv"));
  m.def(
      "synthetic_corpus",
      [](std::uint64_t seed, std::size_t recipes, double noise) {
        return synthetic_corpus({seed, recipes, noise});
      },
      py::arg("seed") = 42, py::arg("recipes") = 70, py::arg("noise") = 2.0);
  m.def("planted_salt_corpus", &planted_salt_corpus, py::arg("seed") = 7, py::arg("recipes") = 40,
        py::arg("coefficient") = 5.0);

  m.def("voigt", [](const std::vector<double>& t, const std::vector<double>& v) { return voigt(t, v); });
  m.def(
      "reuss",
      [](const std::vector<double>& t, const std::vector<double>& v, double eps) {
        return reuss(t, v, {eps, 3.0});
      },
      py::arg("scores"), py::arg("fractions"), py::arg("epsilon") = 0.01);
  m.def(
      "hs_bounds",
      [](const std::vector<double>& t, const std::vector<double>& v, double d, double eps) {
        const auto b = hs_bounds(t, v, {eps, d});
        return std::make_pair(b.lower, b.upper);
      },
      py::arg("scores"), py::arg("fractions"), py::arg("d") = 3.0, py::arg("epsilon") = 0.01);

  m.def(
      "repair",
      [](const std::vector<double>& raw, const std::vector<std::pair<double, double>>& box) {
        std::vector<IngredientBounds> b;
        for (const auto& [lo, hi] : box) b.push_back({lo, hi});
        return repair(raw, b);
      },
      py::arg("raw"), py::arg("bounds"));

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("kind", [](const PyModel& p) { return std::string(to_string(p.session->model.kind)); })
      .def("predict_json",
           [](const PyModel& p, const std::vector<std::pair<std::string, double>>& comps) {
             std::vector<Component> c;
             for (const auto& [id, f] : comps) c.push_back({id, f});
             py::gil_scoped_release release;
             return dumps(api::forward_payload(*p.session, c));
           })
      .def("design_json",
           [](const PyModel& p, const std::string& scenario) {
             const auto s = scenario_from_json(loads(scenario));
             py::gil_scoped_release release;
             const auto run = run_scenario(s, p.session->corpus, p.session->model);
             return dumps(design_result_to_json(run.result, p.session->corpus, s.label, s.recipe_id));
           })
      .def("bundle_json", [](const PyModel& p) { return dumps(bundle_to_json(p.session->model)); });

  m.def(
      "train",
      [](const Corpus& corpus, const std::string& kind, double d, double epsilon) {
        const auto k = parse_model_kind(kind);
        if (!k) throw ValidationError("unknown model kind '" + kind + "'", "kind");
        HybridConfig cfg;
        cfg.bounds = {epsilon, d};
        auto session = std::make_shared<api::Session>();
        session->corpus = corpus;
        session->lexicon = CategoryLexicon::default_lexicon();
        {
          py::gil_scoped_release release;
          session->model = train_model(*k, corpus, cfg, session->lexicon);
        }
        return PyModel{session};
      },
      py::arg("corpus"), py::arg("kind") = "hybrid", py::arg("d") = 3.0, py::arg("epsilon") = 0.01);

  m.def(
      "evaluate_json",
      [](const Corpus& corpus, const std::vector<std::string>& models, bool kfold, std::uint64_t seed) {
        ReportOptions opts;
        opts.kfold = kfold;
        opts.seed = seed;
        if (!models.empty()) {
          opts.models.clear();
          for (const auto& name : models) {
            const auto k = parse_model_kind(name);
            if (!k) throw ValidationError("unknown model '" + name + "'", "models");
            opts.models.push_back(*k);
          }
        }
        py::gil_scoped_release release;
        return report_json_text(build_report(corpus, {}, CategoryLexicon::default_lexicon(), opts));
      },
      py::arg("corpus"), py::arg("models") = std::vector<std::string>{}, py::arg("kfold") = false,
      py::arg("seed") = 42);
}
