#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <filesystem>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "tastecomp/api.hpp"
#include "tastecomp/inverse.hpp"

namespace httplib {
class Server;
}

namespace tastecomp {

struct ServiceConfig {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";  // empty disables CORS headers
  std::size_t job_capacity = 32;
  std::size_t job_workers = 2;
  // Designs whose max_iterations * population * ingredients exceeds this run
  // as background jobs.
  double async_threshold = 500.0 * 15.0 * 20.0;
  DEConfig de;
  std::optional<std::filesystem::path> static_dir;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// JSON-over-HTTP front end. The handler methods are transport-free so they
// can be exercised directly; start()/listen() attach them to an HTTP server.
class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  void load(api::Session session);
  bool ready() const;
  const ServiceConfig& config() const noexcept { return config_; }

  HttpResponse get_ingredients(const std::string& category) const;
  HttpResponse post_predict(const std::string& body) const;
  // `force_async` also honours {"async": true} in the body.
  HttpResponse post_design(const std::string& body, bool force_async = false);
  HttpResponse get_design_job(const std::string& job_id);
  HttpResponse get_report() const;
  HttpResponse get_schema(const std::string& name = {}) const;

  // Binds the configured address; port 0 picks a free port. Returns the port.
  int bind();
  // Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Job {
    std::string id;
    std::string status = "queued";
    nlohmann::json result;
    nlohmann::json error;
  };

  std::shared_ptr<const api::Session> session() const;
  HttpResponse run_design(const api::Session& session, const nlohmann::json& scenario_json) const;
  std::string submit(std::shared_ptr<const api::Session> session, nlohmann::json scenario_json);
  void worker_loop();
  void touch(const std::string& id);
  void routes();

  ServiceConfig config_;
  mutable std::mutex session_mutex_;
  std::shared_ptr<const api::Session> session_;

  std::mutex jobs_mutex_;
  std::condition_variable jobs_cv_;
  std::unordered_map<std::string, Job> jobs_;
  std::list<std::string> lru_;  // front = most recently used
  std::deque<std::function<void()>> queue_;
  std::vector<std::jthread> workers_;
  std::uint64_t next_job_ = 1;
  bool stopping_ = false;

  std::unique_ptr<httplib::Server> server_;
};

}  // namespace tastecomp
