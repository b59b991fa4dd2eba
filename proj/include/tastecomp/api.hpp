#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tastecomp/chemistry.hpp"
#include "tastecomp/dataset.hpp"
#include "tastecomp/hybrid.hpp"

namespace tastecomp::api {

// Everything a front end needs to answer requests. Immutable once built.
struct Session {
  Corpus corpus;
  ModelBundle model;
  CategoryLexicon lexicon;
  std::optional<std::filesystem::path> report_path;
};

// Reads `{components: [{ingredient_id, mass_fraction}, ...]}`.
std::vector<Component> components_from_json(const nlohmann::json& body);

// Bounds, chemistry features and model prediction for a composition. Shared
// by `predict --json` and POST /api/predict.
nlohmann::json forward_payload(const Session& session, const std::vector<Component>& components);

// Ingredient list, optionally restricted to one lexicon category.
nlohmann::json ingredients_payload(const Session& session, std::optional<Category> category = {});

// `{error: {code, message, field?}}`
nlohmann::json error_body(std::string_view code, std::string_view message, std::string_view field = {});

// Stable machine code for an exception, e.g. "infeasible_bounds".
std::string error_code(const std::exception& e);

// Canonical text form of every JSON payload.
std::string to_text(const nlohmann::json& j);

// JSON Schemas for request and response bodies, keyed by name.
const nlohmann::json& schemas();

}  // namespace tastecomp::api
