#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "mathreuse/detect/detect.hpp"

namespace mathreuse::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

// Runs the command line `args` (args[0] is the program name) and returns the
// exit status. Nothing is written outside `out`, `err` and the paths named
// on the command line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Detection records share the flat layout of the case records.
std::string detection_to_json(const detect::Detection& d);
detect::Detection detection_from_json(const std::string& line, const std::string& file, std::size_t lineno);
std::vector<detect::Detection> read_detections(const std::filesystem::path& dir);

// SHA-256 over the sorted (relative path, file SHA-256) list of every file
// under `dir` except manifest.json.
std::string output_digest(const std::filesystem::path& dir);

// Writes dir/manifest.json and returns its content.
nlohmann::json write_manifest(const std::filesystem::path& dir, const std::string& command,
                              const nlohmann::json& config, const std::vector<std::string>& inputs,
                              std::uint64_t seed);

}  // namespace mathreuse::cli
