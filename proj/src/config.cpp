#include "mlpode/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace mlpode {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void field_error(std::string_view field, std::string_view what) {
  throw ConfigError(fmt::format("config field '{}': {}", field, what));
}

std::string line_of(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(end), '\n');
  const auto last_nl = text.rfind('\n', end == 0 ? 0 : end - 1);
  const std::size_t column = last_nl == std::string_view::npos ? end : end - last_nl - 1;
  return fmt::format("line {}, column {}", line, column);
}

const Json& require(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) field_error(key, "missing");
  return *it;
}

std::uint64_t as_unsigned(const Json& v, std::string_view field) {
  if (!v.is_number_unsigned())
    field_error(field, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

int as_int(const Json& v, std::string_view field, int minimum) {
  const std::uint64_t u = as_unsigned(v, field);
  if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max()) ||
      static_cast<int>(u) < minimum)
    field_error(field, fmt::format("expected an integer >= {}", minimum));
  return static_cast<int>(u);
}

std::string as_string(const Json& v, std::string_view field) {
  if (!v.is_string()) field_error(field, "expected a string");
  return v.get<std::string>();
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config parse error at {}: {}", line_of(text, e.byte),
                                  e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  if (const auto it = doc.find("config"); it != doc.end() && it->is_object() &&
                                         doc.contains("rows"))
    doc = Json(*it);

  ExperimentConfig c;
  c.problem = as_string(require(doc, "problem"), "problem");
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), c.problem) == names.end())
    field_error("problem", fmt::format("unknown problem \"{}\"", c.problem));

  if (doc.contains("scheme")) {
    try {
      c.scheme = parse_scheme(as_string(doc["scheme"], "scheme"));
    } catch (const std::invalid_argument& e) {
      field_error("scheme", e.what());
    }
  }

  if (doc.contains("grid")) {
    const Json& grid = doc["grid"];
    if (!grid.is_array() || grid.empty()) field_error("grid", "expected a nonempty array");
    const int min_first = c.scheme == Scheme::mlp ? 0 : 1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::string name = fmt::format("grid[{}]", i);
      const Json& pair = grid[i];
      if (!pair.is_array() || pair.size() != 2)
        field_error(name, "expected a pair [a, b]");
      c.grid.push_back({as_int(pair[0], name + "[0]", min_first),
                        as_int(pair[1], name + "[1]", 1)});
    }
  }

  c.replications = as_unsigned(require(doc, "replications"), "replications");
  if (c.replications < 2) field_error("replications", "must be >= 2");
  c.seed = as_unsigned(require(doc, "seed"), "seed");

  if (doc.contains("mathfrak_n")) c.mathfrak_n = as_int(doc["mathfrak_n"], "mathfrak_n", 0);

  if (doc.contains("epsilon_list")) {
    const Json& list = doc["epsilon_list"];
    if (!list.is_array()) field_error("epsilon_list", "expected an array");
    std::vector<double> eps;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string name = fmt::format("epsilon_list[{}]", i);
      if (!list[i].is_number()) field_error(name, "expected a number");
      const double e = list[i].get<double>();
      if (!(e > 0.0 && e <= 1.0)) field_error(name, "must lie in (0, 1]");
      eps.push_back(e);
    }
    c.epsilon_list = std::move(eps);
  }

  if (doc.contains("output_path")) c.output_path = as_string(doc["output_path"], "output_path");

  if (doc.contains("format")) {
    const std::string f = as_string(doc["format"], "format");
    if (f == "csv")
      c.format = OutputFormat::csv;
    else if (f == "json")
      c.format = OutputFormat::json;
    else
      field_error("format", "expected \"csv\" or \"json\"");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  Json j;
  j["problem"] = c.problem;
  j["scheme"] = std::string(to_string(c.scheme));
  Json grid = Json::array();
  for (const GridPoint& p : c.grid) grid.push_back({p.first, p.second});
  j["grid"] = grid;
  j["replications"] = c.replications;
  j["seed"] = c.seed;
  j["mathfrak_n"] = c.mathfrak_n;
  if (c.epsilon_list) j["epsilon_list"] = *c.epsilon_list;
  j["output_path"] = c.output_path;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  return j;
}

}  // namespace mlpode
