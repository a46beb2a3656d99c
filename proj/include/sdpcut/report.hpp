#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sdpcut {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "sdpcut";
inline constexpr const char* kToolVersion = "0.1.0";

/// Envelope for one CLI run. `results` is the command-specific payload and is
/// a pure function of (command, parameters, seed); timings live outside it.
nlohmann::json make_run_report(const std::string& command,
                               const nlohmann::json& parameters,
                               std::uint64_t seed,
                               const nlohmann::json& results,
                               double total_sec);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

struct ReportRow {
  std::string file;
  std::string command;
  std::uint64_t seed = 0;
  int schema = 0;
  std::string tool_version;
  std::string summary;
};

struct MergedReport {
  std::vector<ReportRow> rows;  // ordered by file name
  std::vector<std::string> warnings;
};

/// Loads every *.json run report in a directory (sorted by name).
MergedReport merge_reports(const std::string& directory);

std::string format_report_table(const MergedReport& merged);
nlohmann::json merged_report_json(const MergedReport& merged);

}  // namespace sdpcut
