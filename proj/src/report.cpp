#include "sdpcut/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sdpcut {

nlohmann::json make_run_report(const std::string& command,
                               const nlohmann::json& parameters,
                               std::uint64_t seed,
                               const nlohmann::json& results,
                               double total_sec) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["timings"] = {{"total_sec", total_sec}};
  j["results"] = results;
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

MergedReport merge_reports(const std::string& directory) {
  namespace fs = std::filesystem;
  MergedReport merged;
  if (!fs::is_directory(directory))
    throw std::runtime_error("not a directory: " + directory);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    nlohmann::json j;
    try {
      j = read_json_file(path.string());
    } catch (const std::exception& e) {
      merged.warnings.push_back(e.what());
      continue;
    }
    if (!j.is_object() || !j.contains("command") || !j.contains("results")) {
      merged.warnings.push_back(path.filename().string() +
                                ": not a run report, skipped");
      continue;
    }
    ReportRow row;
    row.file = path.filename().string();
    row.command = j["command"].get<std::string>();
    row.seed = j.value("seed", std::uint64_t{0});
    row.schema = j.value("schema", 0);
    row.tool_version = j.value("version", std::string{"?"});
    if (j["results"].is_object())
      row.summary = j["results"].value("summary", std::string{});
    if (row.schema != kSchemaVersion)
      merged.warnings.push_back(row.file + ": schema " +
                                std::to_string(row.schema) +
                                " differs from current " +
                                std::to_string(kSchemaVersion));
    merged.rows.push_back(std::move(row));
  }
  return merged;
}

std::string format_report_table(const MergedReport& merged) {
  std::ostringstream out;
  std::size_t file_w = 4, cmd_w = 7;
  for (const auto& r : merged.rows) {
    file_w = std::max(file_w, r.file.size());
    cmd_w = std::max(cmd_w, r.command.size());
  }
  out << std::left;
  out.width(static_cast<std::streamsize>(file_w + 2));
  out << "file";
  out.width(static_cast<std::streamsize>(cmd_w + 2));
  out << "command";
  out << "seed        summary\n";
  for (const auto& r : merged.rows) {
    out.width(static_cast<std::streamsize>(file_w + 2));
    out << r.file;
    out.width(static_cast<std::streamsize>(cmd_w + 2));
    out << r.command;
    std::string seed = std::to_string(r.seed);
    out << seed;
    for (std::size_t i = seed.size(); i < 12; ++i) out << ' ';
    out << r.summary << '\n';
  }
  return out.str();
}

nlohmann::json merged_report_json(const MergedReport& merged) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : merged.rows)
    rows.push_back({{"file", r.file},
                    {"command", r.command},
                    {"seed", r.seed},
                    {"schema", r.schema},
                    {"version", r.tool_version},
                    {"summary", r.summary}});
  return {{"schema", kSchemaVersion},
          {"rows", rows},
          {"warnings", merged.warnings}};
}

}  // namespace sdpcut
