#include "vqa/cli/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vqa/common/hash.hpp"

#ifndef VQA_VERSION
#define VQA_VERSION "unknown"
#endif

namespace vqa::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& r) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const std::string hash = cfg.hash();
  json files = json::array();
  if (cfg.format != "csv") {
    std::string text;
    for (const auto& rec : r.records) {
      json row = rec;
      row["config_hash"] = hash;
      text += row.dump() + "\n";
    }
    write_file(dir / "report.jsonl", text);
    files.push_back("report.jsonl");
  }
  if (cfg.format != "jsonl") {
    write_file(dir / "summary.csv", render_csv(r, hash));
    files.push_back("summary.csv");
  }
  const json manifest = {{"artifact", "vqa-lab"},
                         {"version", VQA_VERSION},
                         {"schema_version", kSchemaVersion},
                         {"experiment", cfg.experiment},
                         {"seed", cfg.canonical()["seed"]},
                         {"config", cfg.canonical()},
                         {"config_hash", hash},
                         {"hash", std::string(kHashId)},
                         {"files", files}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string verify_outputs(const std::string& dir_name) {
  const fs::path dir(dir_name);
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
  } catch (const std::exception& e) {
    return std::string("manifest.json: ") + e.what();
  }
  if (!manifest.contains("config") || !manifest.contains("config_hash")) return "manifest.json: missing config or hash";
  const std::string hash = config_hash(manifest["config"]);
  if (hash != manifest["config_hash"].get<std::string>()) return "manifest.json: config hash does not match its config";
  if (fs::exists(dir / "report.jsonl")) {
    std::istringstream in(read_file(dir / "report.jsonl"));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      const json row = json::parse(line, nullptr, false);
      if (row.is_discarded() || row.value("config_hash", "") != hash) {
        return "report.jsonl line " + std::to_string(n) + ": config hash mismatch";
      }
    }
  }
  if (fs::exists(dir / "summary.csv")) {
    std::istringstream in(read_file(dir / "summary.csv"));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      const auto comma = line.rfind(',');
      const std::string last = comma == std::string::npos ? line : line.substr(comma + 1);
      if (n == 1 ? last != "config_hash" : last != hash) {
        return "summary.csv line " + std::to_string(n) + ": config hash mismatch";
      }
    }
  }
  return {};
}

}  // namespace vqa::cli
