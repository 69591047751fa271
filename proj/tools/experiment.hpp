#pragma once

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cbne_tool {

struct ExperimentOptions {
    unsigned workers = 1;       ///< forwarded to each estimator
    bool row_parallel = false;  ///< compute rows concurrently
    bool timing = false;        ///< fill elapsed_ms
};

/// Runs the sweep described by `config` and writes one CSV row per
/// (instance, k, l, eps, eta, seed, algorithm). Oracle rows are emitted once
/// per (instance, k, l). Relative paths resolve against `base_dir`. Returns
/// the input files that were read.
std::vector<std::string> run_experiment(const nlohmann::json& config, const std::filesystem::path& base_dir,
                                        const ExperimentOptions& opts, std::ostream& out);

}  // namespace cbne_tool
