#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mlpode/analysis.hpp"
#include "mlpode/config.hpp"

namespace mlpode::cli {

/// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kConfigError = 2;

struct RunOptions {
  unsigned threads = 1;
  bool timing = false;  ///< fill wall_ms; breaks byte-reproducibility
};

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// Result document: {config, rows, version, seed, problem, reference, rng}.
nlohmann::ordered_json report_document(const RmseReport& report,
                                       const ExperimentConfig& config);

std::vector<Schedule> schedule_table(const BoundInputs& inputs,
                                     const std::vector<double>& epsilons, int mathfrak_n);

/// CSV with header epsilon,n_epsilon,n_total,total_cost,tail_max,error_bound.
std::string schedule_csv(const BoundInputs& inputs, const std::vector<Schedule>& rows);

int cmd_run(const std::filesystem::path& config_path, const RunOptions& options,
            std::ostream& out, std::ostream& err);
int cmd_schedule(const std::filesystem::path& config_path, std::ostream& out,
                 std::ostream& err);
int cmd_list_problems(std::ostream& out);

}  // namespace mlpode::cli
