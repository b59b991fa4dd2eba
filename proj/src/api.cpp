#include "tastecomp/api.hpp"

#include "tastecomp/error.hpp"

namespace tastecomp::api {

namespace {

nlohmann::json taste_json(const TasteVector& t) {
  nlohmann::json j = nlohmann::json::object();
  for (auto d : kAllDimensions) j[std::string(to_string(d))] = t[d];
  return j;
}

nlohmann::json number() { return {{"type", "number"}}; }

nlohmann::json taste_schema() {
  nlohmann::json props = nlohmann::json::object();
  nlohmann::json req = nlohmann::json::array();
  for (auto d : kAllDimensions) {
    props[std::string(to_string(d))] = number();
    req.push_back(std::string(to_string(d)));
  }
  return {{"type", "object"}, {"properties", props}, {"required", req}};
}

nlohmann::json object_schema(nlohmann::json props, nlohmann::json required) {
  return {{"type", "object"}, {"properties", std::move(props)}, {"required", std::move(required)}};
}

nlohmann::json build_schemas() {
  const nlohmann::json component = object_schema(
      {{"ingredient_id", {{"type", "string"}}}, {"mass_fraction", number()}},
      {"ingredient_id", "mass_fraction"});

  nlohmann::json bound_props = nlohmann::json::object();
  for (const char* k : {"reuss", "voigt", "hs_lower", "hs_upper", "hs_midpoint"}) bound_props[k] = number();
  const nlohmann::json dim_bounds =
      object_schema(bound_props, {"reuss", "voigt", "hs_lower", "hs_upper", "hs_midpoint"});
  nlohmann::json bounds_props = nlohmann::json::object();
  nlohmann::json dims = nlohmann::json::array();
  for (auto d : kAllDimensions) {
    bounds_props[std::string(to_string(d))] = dim_bounds;
    dims.push_back(std::string(to_string(d)));
  }
  nlohmann::json chem_props = nlohmann::json::object();
  nlohmann::json chem_req = nlohmann::json::array();
  for (auto name : ChemistryFeatures::names()) {
    chem_props[std::string(name)] = number();
    chem_req.push_back(std::string(name));
  }

  const nlohmann::json dim_map = {{"type", "object"}, {"additionalProperties", number()}};
  const nlohmann::json scenario = object_schema(
      {{"label", {{"type", "string"}}},
       {"recipe_id", {{"type", "string"}}},
       {"components", {{"type", "array"}, {"items", component}}},
       {"target", dim_map},
       {"target_delta", dim_map},
       {"weights", dim_map},
       {"bounds",
        {{"type", "object"},
         {"additionalProperties", {{"type", "array"}, {"items", number()}, {"minItems", 2}, {"maxItems", 2}}}}},
       {"seed", {{"type", "integer"}, {"minimum", 0}}},
       {"max_iterations", {{"type", "integer"}, {"minimum", 0}}}},
      nlohmann::json::array());

  const nlohmann::json design_ingredient = object_schema(
      {{"ingredient_id", {{"type", "string"}}},
       {"display_name", {{"type", "string"}}},
       {"initial", number()},
       {"optimized", number()},
       {"delta", number()},
       {"min", number()},
       {"max", number()}},
      {"ingredient_id", "initial", "optimized", "delta"});

  const nlohmann::json design_result = object_schema(
      {{"label", {{"type", "string"}}},
       {"recipe_id", {{"type", "string"}}},
       {"ingredients", {{"type", "array"}, {"items", design_ingredient}}},
       {"taste", {{"type", "array"}}},
       {"predicted_before", taste_schema()},
       {"predicted_after", taste_schema()},
       {"target", taste_schema()},
       {"weights", taste_schema()},
       {"objective_before", number()},
       {"objective", number()},
       {"iterations", {{"type", "integer"}}},
       {"converged", {{"type", "boolean"}}},
       {"population", {{"type", "integer"}}},
       {"seed", {{"type", "integer"}}},
       {"fraction_sum", number()},
       {"trace", {{"type", "array"}, {"items", number()}}}},
      {"ingredients", "predicted_before", "predicted_after", "target", "weights", "objective", "iterations",
       "converged", "seed", "trace"});

  const nlohmann::json error = object_schema(
      {{"error", object_schema({{"code", {{"type", "string"}}},
                                {"message", {{"type", "string"}}},
                                {"field", {{"type", "string"}}}},
                               {"code", "message"})}},
      {"error"});

  return {
      {"predict_request", object_schema({{"components", {{"type", "array"}, {"items", component}, {"minItems", 1}}}},
                                        {"components"})},
      {"predict_response",
       object_schema({{"model", {{"type", "string"}}},
                      {"components", {{"type", "array"}, {"items", component}}},
                      {"bounds", object_schema(bounds_props, dims)},
                      {"chemistry_features", object_schema(chem_props, chem_req)},
                      {"hybrid_prediction", taste_schema()}},
                     {"components", "bounds", "chemistry_features", "hybrid_prediction"})},
      {"ingredients_response",
       {{"type", "array"},
        {"items", object_schema({{"ingredient_id", {{"type", "string"}}},
                                 {"display_name", {{"type", "string"}}},
                                 {"taste", taste_schema()},
                                 {"source_tier", {{"type", "string"}}},
                                 {"categories", {{"type", "array"}, {"items", {{"type", "string"}}}}}},
                                {"ingredient_id", "taste", "categories"})}}},
      {"design_request", scenario},
      {"design_response", design_result},
      {"design_job",
       object_schema({{"job_id", {{"type", "string"}}},
                      {"status", {{"type", "string"}, {"enum", {"queued", "running", "done", "failed"}}}},
                      {"result", design_result},
                      {"error", error.at("properties").at("error")}},
                     {"job_id", "status"})},
      {"error", error},
  };
}

}  // namespace

std::vector<Component> components_from_json(const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("components")) {
    throw ValidationError("request body needs a 'components' list", "components");
  }
  const auto& list = body.at("components");
  if (!list.is_array() || list.empty()) {
    throw ValidationError("'components' must be a non-empty list", "components");
  }
  std::vector<Component> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& c = list[i];
    const std::string where = "components[" + std::to_string(i) + "]";
    std::string id;
    double fraction = 0.0;
    if (c.is_object()) {
      if (!c.contains("ingredient_id") || !c.at("ingredient_id").is_string()) {
        throw ValidationError(where + ".ingredient_id must be a string", where + ".ingredient_id");
      }
      if (!c.contains("mass_fraction") || !c.at("mass_fraction").is_number()) {
        throw ValidationError(where + ".mass_fraction must be a number", where + ".mass_fraction");
      }
      id = c.at("ingredient_id").get<std::string>();
      fraction = c.at("mass_fraction").get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_string() && c[1].is_number()) {
      id = c[0].get<std::string>();
      fraction = c[1].get<double>();
    } else {
      throw ValidationError(where + " must be {ingredient_id, mass_fraction}", where);
    }
    out.push_back({std::move(id), fraction});
  }
  return out;
}

nlohmann::json forward_payload(const Session& session, const std::vector<Component>& components) {
  const auto recipe = session.corpus.make_recipe("request", components);
  const auto summary = summarize(recipe, session.corpus, session.model.config.bounds, session.model.lexicon);
  const auto prediction = session.model.predict(summary, recipe);

  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : recipe.components) {
    comps.push_back({{"ingredient_id", c.ingredient_id}, {"mass_fraction", c.mass_fraction}});
  }
  nlohmann::json bounds = nlohmann::json::object();
  for (auto d : kAllDimensions) {
    const auto& b = summary.bounds[d];
    bounds[std::string(to_string(d))] = {{"reuss", b.reuss},
                                         {"voigt", b.voigt},
                                         {"hs_lower", b.hs_lower},
                                         {"hs_upper", b.hs_upper},
                                         {"hs_midpoint", b.hs_midpoint}};
  }
  nlohmann::json chem = nlohmann::json::object();
  const auto values = summary.chemistry.as_array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    chem[std::string(ChemistryFeatures::names()[i])] = values[i];
  }
  return {{"model", std::string(to_string(session.model.kind))},
          {"components", comps},
          {"bounds", bounds},
          {"chemistry_features", chem},
          {"hybrid_prediction", taste_json(prediction)}};
}

nlohmann::json ingredients_payload(const Session& session, std::optional<Category> category) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [id, ing] : session.corpus.ingredients()) {
    const auto cats = classify(ing, session.lexicon);
    if (category && !cats.contains(*category)) continue;
    nlohmann::json names = nlohmann::json::array();
    for (auto c : cats.members()) names.push_back(std::string(to_string(c)));
    out.push_back({{"ingredient_id", id},
                   {"display_name", ing.display_name},
                   {"taste", taste_json(ing.taste)},
                   {"source_tier", std::string(to_string(ing.source_tier))},
                   {"categories", names}});
  }
  return out;
}

nlohmann::json error_body(std::string_view code, std::string_view message, std::string_view field) {
  nlohmann::json e = {{"code", std::string(code)}, {"message", std::string(message)}};
  if (!field.empty()) e["field"] = std::string(field);
  return {{"error", e}};
}

std::string error_code(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const UnknownIngredient*>(&e)) return "unknown_ingredient";
  if (dynamic_cast<const InfeasibleBounds*>(&e)) return "infeasible_bounds";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
  if (dynamic_cast<const MissingFixture*>(&e)) return "missing_fixture";
  if (dynamic_cast<const InsufficientData*>(&e)) return "insufficient_data";
  if (dynamic_cast<const UserError*>(&e)) return "user_error";
  if (dynamic_cast<const ForwardModelError*>(&e)) return "forward_model_error";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical_error";
  return "internal_error";
}

std::string to_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

const nlohmann::json& schemas() {
  static const nlohmann::json s = build_schemas();
  return s;
}

}  // namespace tastecomp::api
