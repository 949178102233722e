#include "mlpode/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include <unistd.h>

#include <fmt/format.h>

#include "mlpode/baseline.hpp"
#include "mlpode/version.hpp"

namespace mlpode::cli {

namespace {

using Json = nlohmann::ordered_json;

Json big_to_json(const BigCount& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void print_summary(const RmseReport& report, std::ostream& out) {
  out << fmt::format("{:>9} {:>6} {:>6} {:>8} {:>14} {:>14} {:>14}  {}\n", "scheme", "n",
                     "m", "R", "rmse", "bound", "z_draws", "status");
  for (const RmseRow& r : report.rows) {
    out << fmt::format("{:>9} {:>6} {:>6} {:>8} {:>14.6e} {:>14.6e} {:>14}  {}\n",
                       to_string(r.scheme), r.n, r.m, r.replications, r.rmse, r.bound,
                       r.z_draws, r.valid ? "ok" : "INVALID");
  }
}

}  // namespace

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target = path.has_parent_path() ? path : fs::path(".") / path;
  fs::path tmp = target;
  tmp += fmt::format(".tmp.{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

Json report_document(const RmseReport& report, const ExperimentConfig& config) {
  Json rows = Json::array();
  for (const RmseRow& r : report.rows) {
    Json row;
    row["scheme"] = std::string(to_string(r.scheme));
    row["n"] = r.n;
    row["m"] = r.m;
    row["R"] = r.replications;
    row["rmse"] = number_or_null(r.rmse);
    row["bound"] = number_or_null(r.bound);
    row["rv_exact"] = r.z_draws;
    row["rv_bound"] = big_to_json(r.rv_bound);
    row["wall_ms"] = r.wall_ms;
    row["valid"] = r.valid;
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["config"] = to_json(config);
  doc["rows"] = std::move(rows);
  doc["version"] = kVersion;
  doc["seed"] = report.seed;
  doc["problem"] = report.problem;
  doc["reference"] = Json(std::vector<double>(report.reference.begin(), report.reference.end()));
  doc["rng"] = {{"generator", kRngAlgorithm}, {"gaussian", kGaussianAlgorithm}};
  return doc;
}

std::vector<Schedule> schedule_table(const BoundInputs& inputs,
                                     const std::vector<double>& epsilons, int mathfrak_n) {
  std::vector<Schedule> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) rows.push_back(n_epsilon(inputs, eps, mathfrak_n));
  return rows;
}

std::string schedule_csv(const BoundInputs& inputs, const std::vector<Schedule>& rows) {
  std::string out = "epsilon,n_epsilon,n_total,total_cost,tail_max,error_bound\n";
  for (const Schedule& s : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", s.epsilon, s.n_epsilon,
                       s.n_epsilon + s.mathfrak_n, s.total_cost.str(), s.tail_max,
                       error_bound(inputs, s.n_epsilon, s.n_epsilon));
  }
  return out;
}

int cmd_run(const std::filesystem::path& config_path, const RunOptions& options,
            std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
    if (config.grid.empty()) throw ConfigError("config field 'grid': missing");
    if (config.output_path.empty()) throw ConfigError("config field 'output_path': missing");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  RmseReport report;
  try {
    const ExpectationOdeProblem problem = builtin(config.problem);
    ExperimentOptions opts;
    opts.scheme = config.scheme;
    opts.grid = config.grid;
    opts.replications = config.replications;
    opts.seed = config.seed;
    opts.threads = options.threads;
    opts.record_wall_time = options.timing;
    opts.on_row = [&err](const RmseRow& r) {
      err << fmt::format("[{}] n={} m={} rmse={}\n", to_string(r.scheme), r.n, r.m, r.rmse);
    };
    report = rmse_experiment(problem, opts);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }

  try {
    const std::string body = config.format == OutputFormat::csv
                                 ? to_csv(report)
                                 : report_document(report, config).dump(2) + "\n";
    atomic_write(config.output_path, body);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }

  print_summary(report, out);
  if (!report.all_valid()) {
    err << "error: non-finite realizations; affected rows are flagged invalid\n";
    return kRuntimeError;
  }
  return kOk;
}

int cmd_schedule(const std::filesystem::path& config_path, std::ostream& out,
                 std::ostream& err) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
    if (!config.epsilon_list || config.epsilon_list->empty())
      throw ConfigError("config field 'epsilon_list': missing");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    const BoundInputs inputs = BoundInputs::from(builtin(config.problem));
    const std::string csv =
        schedule_csv(inputs, schedule_table(inputs, *config.epsilon_list, config.mathfrak_n));
    out << csv;
    if (!config.output_path.empty()) atomic_write(config.output_path, csv);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int cmd_list_problems(std::ostream& out) {
  out << fmt::format("{:<18} {:>4} {:>8} {:>8}  {:<12} {}\n", "name", "dim", "T", "L",
                     "closed_form", "exact_mean_drift");
  for (const std::string& name : builtin_names()) {
    const ExpectationOdeProblem p = builtin(name);
    out << fmt::format("{:<18} {:>4} {:>8} {:>8}  {:<12} {}\n", p.name, p.dim, p.horizon,
                       p.lipschitz, p.closed_form ? "yes" : "no",
                       p.exact_mean_drift ? "yes" : "no");
  }
  return kOk;
}

}  // namespace mlpode::cli
