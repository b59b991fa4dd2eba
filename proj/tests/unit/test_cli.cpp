#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "oracles.hpp"
#include "support.hpp"
#include "tastecomp/api.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const char* exe = std::getenv("TASTECOMP_CLI");
  REQUIRE(exe != nullptr);
  const std::string cmd = std::string("\"") + exe + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const fs::path& data_dir() {
  static const fs::path dir = [] {
    auto d = support::scratch("cli_data");
    const auto r = cli("synth -o \"" + d.string() + "\"");
    REQUIRE(r.code == 0);
    return d;
  }();
  return dir;
}

std::string with_data(const std::string& args) { return "--data-dir \"" + data_dir().string() + "\" " + args; }

}  // namespace

TEST_CASE("synth writes a loadable corpus") {
  CHECK(fs::exists(data_dir() / "ingredients.csv"));
  CHECK(fs::exists(data_dir() / "recipes.csv"));
}

TEST_CASE("predict") {
  const auto r = cli(with_data("--json predict RP68"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(oracle::schema_errors(j, tastecomp::api::schemas().at("predict_response")) == "");

  const auto inline_r = cli(with_data("--json predict -c sugar=0.4 -c salt=0.6"));
  REQUIRE(inline_r.code == 0);
  CHECK(json::parse(inline_r.out)["components"].size() == 2);

  const auto text = cli(with_data("predict RP14"));
  CHECK(text.code == 0);
  CHECK(text.out.find("RP14") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(cli(with_data("predict RP999")).code == 2);
  CHECK(cli(with_data("predict -c caviar=1")).code == 2);
  CHECK(cli(with_data("predict -c sugar=0.5")).code == 2);
  CHECK(cli("--data-dir /nonexistent/dir predict RP1").code == 2);
  CHECK(cli("--no-such-flag").code == 2);
  CHECK(cli(with_data("design --case 4")).code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("trained bundle reproduces inline training") {
  const auto model = support::scratch("cli_model") / "model.json";
  REQUIRE(cli(with_data("train -o \"" + model.string() + "\"")).code == 0);
  const auto a = cli(with_data("--json predict RP55"));
  const auto b = cli(with_data("--json --model \"" + model.string() + "\" predict RP55"));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(json::parse(a.out) == json::parse(b.out));
}

TEST_CASE("design is deterministic for a seed") {
  const auto a = cli(with_data("--json --seed 5 design --case 3 --max-iter 15"));
  const auto b = cli(with_data("--json --seed 5 design --case 3 --max-iter 15"));
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(j["seed"] == 5);
  CHECK(j["iterations"].get<int>() <= 15);
  CHECK(oracle::schema_errors(j, tastecomp::api::schemas().at("design_response")) == "");

  const auto scenario = support::scratch("cli_scenario") / "s.json";
  tastecomp::write_file(scenario, R"({"recipe_id": "RP68", "target_delta": {"umami": 3}, "seed": 3, "max_iterations": 5})");
  const auto s = cli(with_data("--json design \"" + scenario.string() + "\""));
  REQUIRE(s.code == 0);
  CHECK(json::parse(s.out)["seed"] == 3);
}

TEST_CASE("evaluate writes a report") {
  const auto out = support::scratch("cli_report");
  const auto r = cli(with_data("evaluate --models hs,rv --no-kfold -o \"" + out.string() + "\""));
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "metrics.csv"));
  CHECK(r.out.find("HS bound coverage") != std::string::npos);
  CHECK(cli(with_data("evaluate --models forest")).code == 2);
}

TEST_CASE("sweep-d") {
  const auto r = cli(with_data("--json sweep-d --d-values 2,3,50"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.size() == 3);
  CHECK(j[0]["fraction_above_upper"].get<double>() >= j[2]["fraction_above_upper"].get<double>());
}
