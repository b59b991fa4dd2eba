#include "tastecomp/service.hpp"

#include <httplib.h>

#include "tastecomp/error.hpp"

namespace tastecomp {

namespace {

HttpResponse json_response(int status, const nlohmann::json& body) {
  return {status, api::to_text(body), "application/json"};
}

HttpResponse error_response(int status, std::string_view code, std::string_view message,
                            std::string_view field = {}) {
  return json_response(status, api::error_body(code, message, field));
}

// Maps library exceptions onto status codes; user errors are 422.
HttpResponse exception_response(const std::exception& e) {
  if (const auto* u = dynamic_cast<const UserError*>(&e)) {
    return error_response(422, api::error_code(e), u->what(), u->field());
  }
  return error_response(500, api::error_code(e), e.what());
}

HttpResponse not_ready() {
  return error_response(503, "not_ready", "corpus and model are not loaded yet");
}

std::optional<nlohmann::json> parse_body(const std::string& body, HttpResponse& err) {
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    err = error_response(400, "bad_request", std::string("malformed JSON: ") + e.what());
    return std::nullopt;
  }
}

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  if (config_.job_capacity == 0) config_.job_capacity = 1;
  const std::size_t n = std::max<std::size_t>(1, config_.job_workers);
  for (std::size_t i = 0; i < n; ++i) workers_.emplace_back([this] { worker_loop(); });
}

Service::~Service() {
  stop();
  {
    std::lock_guard lock(jobs_mutex_);
    stopping_ = true;
  }
  jobs_cv_.notify_all();
  workers_.clear();
}

void Service::load(api::Session session) {
  auto p = std::make_shared<const api::Session>(std::move(session));
  std::lock_guard lock(session_mutex_);
  session_ = std::move(p);
}

bool Service::ready() const { return session() != nullptr; }

std::shared_ptr<const api::Session> Service::session() const {
  std::lock_guard lock(session_mutex_);
  return session_;
}

HttpResponse Service::get_ingredients(const std::string& category) const {
  const auto s = session();
  if (!s) return not_ready();
  std::optional<Category> filter;
  if (!category.empty()) {
    filter = parse_category(category);
    if (!filter) return error_response(422, "validation_error", "unknown category '" + category + "'", "category");
  }
  return json_response(200, api::ingredients_payload(*s, filter));
}

HttpResponse Service::post_predict(const std::string& body) const {
  const auto s = session();
  if (!s) return not_ready();
  HttpResponse err;
  const auto j = parse_body(body, err);
  if (!j) return err;
  try {
    return json_response(200, api::forward_payload(*s, api::components_from_json(*j)));
  } catch (const std::exception& e) {
    return exception_response(e);
  }
}

HttpResponse Service::run_design(const api::Session& s, const nlohmann::json& scenario_json) const {
  try {
    const auto scenario = scenario_from_json(scenario_json);
    const auto run = run_scenario(scenario, s.corpus, s.model, config_.de);
    return json_response(200, design_result_to_json(run.result, s.corpus, scenario.label, scenario.recipe_id));
  } catch (const std::exception& e) {
    return exception_response(e);
  }
}

HttpResponse Service::post_design(const std::string& body, bool force_async) {
  auto s = session();
  if (!s) return not_ready();
  HttpResponse err;
  auto j = parse_body(body, err);
  if (!j) return err;
  if (!j->is_object()) return error_response(422, "validation_error", "scenario must be a JSON object");

  bool async = force_async || j->value("async", false);
  nlohmann::json scenario_json = j->contains("scenario") ? j->at("scenario") : *j;
  if (scenario_json.is_object()) scenario_json.erase("async");

  // Validate up front so infeasible scenarios fail with 422 on either path,
  // and estimate the cost from the resolved problem size.
  try {
    const auto scenario = scenario_from_json(scenario_json);
    std::size_t n = scenario.components.size();
    if (!scenario.recipe_id.empty()) n = s->corpus.recipe(scenario.recipe_id).components.size();
    const double iterations =
        static_cast<double>(scenario.max_iterations.value_or(config_.de.max_iterations));
    const double cost = iterations * static_cast<double>(config_.de.population_size) * static_cast<double>(n);
    if (cost > config_.async_threshold) async = true;
  } catch (const std::exception& e) {
    return exception_response(e);
  }

  if (!async) return run_design(*s, scenario_json);
  const auto id = submit(std::move(s), std::move(scenario_json));
  if (id.empty()) return error_response(503, "job_table_full", "every job slot holds an unfinished design");
  return json_response(202, {{"job_id", id}, {"status", "queued"}});
}

std::string Service::submit(std::shared_ptr<const api::Session> s, nlohmann::json scenario_json) {
  std::lock_guard lock(jobs_mutex_);
  // Evict the least recently used finished jobs to make room.
  while (jobs_.size() >= config_.job_capacity) {
    auto victim = std::find_if(lru_.rbegin(), lru_.rend(), [&](const std::string& id) {
      const auto& st = jobs_.at(id).status;
      return st == "done" || st == "failed";
    });
    if (victim == lru_.rend()) return {};
    jobs_.erase(*victim);
    lru_.erase(std::next(victim).base());
  }
  const std::string id = "job-" + std::to_string(next_job_++);
  jobs_[id].id = id;
  lru_.push_front(id);
  queue_.push_back([this, id, s = std::move(s), scenario_json = std::move(scenario_json)] {
    {
      std::lock_guard l(jobs_mutex_);
      if (auto it = jobs_.find(id); it != jobs_.end()) it->second.status = "running";
    }
    const auto r = run_design(*s, scenario_json);
    const auto body = nlohmann::json::parse(r.body);
    std::lock_guard l(jobs_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return;
    if (r.status == 200) {
      it->second.status = "done";
      it->second.result = body;
    } else {
      it->second.status = "failed";
      it->second.error = body.at("error");
    }
  });
  jobs_cv_.notify_one();
  return id;
}

void Service::worker_loop() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(jobs_mutex_);
      jobs_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      task = std::move(queue_.front());
      queue_.pop_front();
    }
    task();
  }
}

void Service::touch(const std::string& id) {
  auto it = std::find(lru_.begin(), lru_.end(), id);
  if (it != lru_.end()) lru_.splice(lru_.begin(), lru_, it);
}

HttpResponse Service::get_design_job(const std::string& job_id) {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) return error_response(404, "unknown_job", "no design job '" + job_id + "'", "job_id");
  touch(job_id);
  nlohmann::json out = {{"job_id", it->second.id}, {"status", it->second.status}};
  if (it->second.status == "done") out["result"] = it->second.result;
  if (it->second.status == "failed") out["error"] = it->second.error;
  return json_response(200, out);
}

HttpResponse Service::get_report() const {
  const auto s = session();
  if (!s) return not_ready();
  if (!s->report_path || !std::filesystem::exists(*s->report_path)) {
    return error_response(404, "no_report", "no evaluation report has been written yet");
  }
  try {
    return {200, read_file(*s->report_path), "application/json"};
  } catch (const std::exception& e) {
    return exception_response(e);
  }
}

HttpResponse Service::get_schema(const std::string& name) const {
  const auto& all = api::schemas();
  if (name.empty()) return json_response(200, all);
  if (!all.contains(name)) return error_response(404, "unknown_schema", "no schema named '" + name + "'", "name");
  return json_response(200, all.at(name));
}

void Service::routes() {
  auto& srv = *server_;
  auto send = [this](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
    if (!config_.cors_origin.empty()) res.set_header("Access-Control-Allow-Origin", config_.cors_origin);
  };

  srv.Get("/api/ingredients", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_ingredients(req.has_param("category") ? req.get_param_value("category") : ""));
  });
  srv.Post("/api/predict", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, post_predict(req.body));
  });
  srv.Post("/api/design", [this, send](const httplib::Request& req, httplib::Response& res) {
    const bool force = req.has_param("async") && req.get_param_value("async") != "0" &&
                       req.get_param_value("async") != "false";
    send(res, post_design(req.body, force));
  });
  srv.Get(R"(/api/design/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_design_job(req.matches[1]));
  });
  srv.Get("/api/report", [this, send](const httplib::Request&, httplib::Response& res) { send(res, get_report()); });
  srv.Get("/api/schema", [this, send](const httplib::Request&, httplib::Response& res) { send(res, get_schema()); });
  srv.Get(R"(/api/schema/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_schema(req.matches[1]));
  });
  srv.Options(R"(/api/.*)", [this](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    if (!config_.cors_origin.empty()) {
      res.set_header("Access-Control-Allow-Origin", config_.cors_origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
  });
  if (config_.static_dir) srv.set_mount_point("/", config_.static_dir->string());
}

int Service::bind() {
  server_ = std::make_unique<httplib::Server>();
  routes();
  int port = config_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(config_.bind);
    if (port < 0) throw UserError("cannot bind " + config_.bind);
  } else if (!server_->bind_to_port(config_.bind, port)) {
    throw UserError("cannot bind " + config_.bind + ":" + std::to_string(port), "port");
  }
  config_.port = port;
  return port;
}

void Service::listen() {
  if (!server_) bind();
  server_->listen_after_bind();
}

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace tastecomp
