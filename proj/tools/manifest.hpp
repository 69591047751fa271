#pragma once

#include <json.hpp>

#include <CLI11.hpp>

#include <string>
#include <vector>

namespace cbne_tool {

inline constexpr const char* kToolVersion = "0.1.0";

/// Hex SHA-256 of a file's bytes. Throws std::runtime_error if unreadable.
std::string sha256_file(const std::string& path);

/// Every option of `cmd` (parsed value, or default when not given).
nlohmann::ordered_json collect_parameters(const CLI::App& cmd);

struct RunManifest {
    std::string subcommand;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    nlohmann::ordered_json to_json() const;
};

void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace cbne_tool
