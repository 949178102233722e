#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mlpode/cli.hpp"

using namespace mlpode;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mlpode_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
            std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& body) const {
    const fs::path p = path / name;
    std::ofstream(p) << body;
    return p;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config(const std::string& problem, const std::string& grid, int replications,
                   const fs::path& out, const std::string& format = "csv",
                   const std::string& extra = "") {
  return "{\n  \"problem\": \"" + problem + "\",\n  \"scheme\": \"mlp\",\n  \"grid\": " + grid +
         ",\n  \"replications\": " + std::to_string(replications) +
         ",\n  \"seed\": 42,\n  \"output_path\": \"" + out.string() + "\",\n  \"format\": \"" +
         format + "\"" + extra + "\n}\n";
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(MLPODE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("parse a full configuration") {
  const auto c = parse_config(R"({"problem": "linear_meanfield", "scheme": "mc_euler",
      "grid": [[10, 100], [20, 400]], "replications": 50, "seed": 7, "mathfrak_n": 2,
      "epsilon_list": [0.5, 0.25], "output_path": "x.json", "format": "json"})");
  CHECK(c.problem == "linear_meanfield");
  CHECK(c.scheme == Scheme::mc_euler);
  CHECK(c.grid == std::vector<GridPoint>{{10, 100}, {20, 400}});
  CHECK(c.replications == 50);
  CHECK(c.seed == 7);
  CHECK(c.mathfrak_n == 2);
  CHECK(*c.epsilon_list == std::vector<double>{0.5, 0.25});
  CHECK(c.format == OutputFormat::json);
  CHECK(parse_config(to_json(c).dump()).grid == c.grid);
}

TEST_CASE("configuration errors name the line or field") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("{\n \"problem\": \"pure_noise\",\n \"seed\": }").find("line 3") !=
        std::string::npos);
  CHECK(message(R"({"problem": "foo", "replications": 2, "seed": 1})").find("unknown problem") !=
        std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 2})").find("'seed'") !=
        std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 2, "seed": -1})").find("'seed'") !=
        std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 2, "seed": 1, "grid": []})")
            .find("'grid'") != std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 2, "seed": 1, "grid": [[1, 0]]})")
            .find("'grid[0][1]'") != std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 2, "seed": 1, "epsilon_list": [0.5, 2]})")
            .find("'epsilon_list[1]'") != std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 2, "seed": 1, "scheme": "qmc"})")
            .find("'scheme'") != std::string::npos);
  CHECK(message(R"({"problem": "pure_noise", "replications": 1, "seed": 1})")
            .find("'replications'") != std::string::npos);
}

TEST_CASE("run writes a zero-RMSE row for const_drift") {
  TempDir dir;
  const auto out = dir.path / "out.csv";
  const auto cfg = dir.write("c.json", config("const_drift", "[[1, 1]]", 2, out));
  std::ostringstream o, e;
  REQUIRE(cli::cmd_run(cfg, {}, o, e) == cli::kOk);
  CHECK(slurp(out) ==
        "scheme,n,m,R,rmse,bound,rv_exact,rv_bound,wall_ms,seed\n"
        "mlp,1,1,2,0,1.6487212707001282,1,3,0,42\n");
  CHECK(o.str().find("ok") != std::string::npos);
  // Only the output file remains: no temporaries left behind.
  int files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path)) ++files;
  CHECK(files == 2);
}

TEST_CASE("repeated runs are byte-identical across thread counts") {
  TempDir dir;
  const auto out = dir.path / "out.csv";
  const auto cfg = dir.write("c.json", config("sine_meanfield", "[[1, 2], [2, 2], [3, 3]]", 64, out));
  std::ostringstream o, e;
  REQUIRE(cli::cmd_run(cfg, {1, false}, o, e) == cli::kOk);
  const std::string first = slurp(out);
  REQUIRE(cli::cmd_run(cfg, {1, false}, o, e) == cli::kOk);
  CHECK(slurp(out) == first);
  REQUIRE(cli::cmd_run(cfg, {8, false}, o, e) == cli::kOk);
  CHECK(slurp(out) == first);
}

TEST_CASE("json output embeds a config that reproduces it") {
  TempDir dir;
  const auto out = dir.path / "out.json";
  const auto cfg = dir.write("c.json", config("linear_meanfield", "[[2, 2], [3, 2]]", 20, out, "json"));
  std::ostringstream o, e;
  REQUIRE(cli::cmd_run(cfg, {}, o, e) == cli::kOk);
  const std::string first = slurp(out);
  const auto doc = nlohmann::json::parse(first);
  CHECK(doc.at("version").is_string());
  CHECK(doc.at("seed") == 42);
  CHECK(doc.at("rows").size() == 2);
  CHECK(doc.at("rows")[1].at("rv_exact") == 46);
  CHECK(doc.at("rng").at("gaussian") == kGaussianAlgorithm);

  // Feed the result document straight back in.
  const auto copy = dir.write("again.json", first);
  REQUIRE(cli::cmd_run(copy, {}, o, e) == cli::kOk);
  CHECK(slurp(out) == first);
}

TEST_CASE("run error paths") {
  TempDir dir;
  std::ostringstream o, e;
  const auto bad = dir.write("bad.json", config("foo", "[[1, 1]]", 2, dir.path / "x.csv"));
  CHECK(cli::cmd_run(bad, {}, o, e) == cli::kConfigError);
  CHECK(e.str().find("unknown problem") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.path / "x.csv"));

  CHECK(cli::cmd_run(dir.path / "missing.json", {}, o, e) == cli::kConfigError);

  const auto huge = dir.write("huge.json", config("pure_noise", "[[60, 2]]", 2, dir.path / "y.csv"));
  CHECK(cli::cmd_run(huge, {}, o, e) == cli::kConfigError);
}

TEST_CASE("schedule prints finite nondecreasing levels") {
  TempDir dir;
  const auto cfg = dir.write(
      "s.json", config("linear_meanfield", "[[1, 1]]", 2, dir.path / "s.csv", "csv",
                       ",\n  \"epsilon_list\": [1, 0.5, 0.25, 0.125]"));
  std::ostringstream o, e;
  REQUIRE(cli::cmd_schedule(cfg, o, e) == cli::kOk);
  std::istringstream lines(o.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "epsilon,n_epsilon,n_total,total_cost,tail_max,error_bound");
  int previous = 0, rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string eps, n, n_total, cost, tail;
    std::getline(fields, eps, ',');
    std::getline(fields, n, ',');
    std::getline(fields, n_total, ',');
    std::getline(fields, cost, ',');
    std::getline(fields, tail, ',');
    CHECK(std::stoi(n) >= previous);
    CHECK(std::stod(tail) <= std::stod(eps));
    previous = std::stoi(n);
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(slurp(dir.path / "s.csv") == o.str());

  const auto no_eps = dir.write("n.json", config("linear_meanfield", "[[1, 1]]", 2, ""));
  CHECK(cli::cmd_schedule(no_eps, o, e) == cli::kConfigError);
}

TEST_CASE("zero-constant schedule needs one level") {
  const auto rows = cli::schedule_table({1.0, 0.0, 0.0}, {1.0, 0.1, 1e-3}, 0);
  for (const auto& s : rows) CHECK(s.n_epsilon == 1);
}

TEST_CASE("list-problems") {
  std::ostringstream o;
  CHECK(cli::cmd_list_problems(o) == cli::kOk);
  std::istringstream lines(o.str());
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> names;
  while (std::getline(lines, line)) names.push_back(line.substr(0, line.find(' ')));
  CHECK(names == builtin_names());
}

TEST_CASE("binary exit codes") {
  TempDir dir;
  const auto ok = dir.write("ok.json", config("const_drift", "[[1, 1]]", 2, dir.path / "o.csv"));
  const auto bad = dir.write("bad.json", config("foo", "[[1, 1]]", 2, dir.path / "b.csv"));
  const auto broken = dir.write("broken.json", "{ \"problem\": ");
  CHECK(run_binary("list-problems") == 0);
  CHECK(run_binary("run --config " + ok.string()) == 0);
  CHECK(run_binary("run --config " + ok.string() + " --threads 3") == 0);
  CHECK(run_binary("run --config " + bad.string()) == 2);
  CHECK(run_binary("run --config " + broken.string()) == 2);
  CHECK(run_binary("run") == 2);
  CHECK(run_binary("frobnicate") == 2);
}
