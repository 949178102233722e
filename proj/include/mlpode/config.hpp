#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mlpode/analysis.hpp"

namespace mlpode {

/// Malformed or inconsistent configuration. The message names the line
/// (syntax errors) or the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  std::string problem;
  Scheme scheme = Scheme::mlp;
  std::vector<GridPoint> grid;
  std::uint64_t replications = 2;
  std::uint64_t seed = 0;
  int mathfrak_n = 0;
  std::optional<std::vector<double>> epsilon_list;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
};

/**
 * Parses a JSON configuration:
 *
 *   {
 *     "problem": "linear_meanfield",
 *     "scheme": "mlp",                  // or "mc_euler"
 *     "grid": [[1, 1], [2, 2]],         // (n, m) or (K, M) pairs
 *     "replications": 1000,
 *     "seed": 42,                       // mandatory
 *     "mathfrak_n": 0,                  // optional
 *     "epsilon_list": [0.5, 0.25],      // optional
 *     "output_path": "out.csv",
 *     "format": "csv"                   // or "json"
 *   }
 *
 * A result document written with format "json" is accepted as well; its
 * embedded "config" block is used.
 */
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

}  // namespace mlpode
