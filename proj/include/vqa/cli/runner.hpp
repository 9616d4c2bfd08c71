#pragma once

#include <string>

#include "vqa/cli/experiments.hpp"

namespace vqa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// Runs the experiment and writes report.jsonl, summary.csv (per format) and
/// manifest.json into cfg.out_dir.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& r);

/// Recomputes the config hash from manifest.json and checks it against the
/// manifest and every row of the report files present. Returns an empty
/// string on success, otherwise the first problem found.
std::string verify_outputs(const std::string& dir);

}  // namespace vqa::cli
