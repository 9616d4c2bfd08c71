// vqa-lab: batch front end for the experiments in libvqa.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vqa/cli/experiments.hpp"
#include "vqa/cli/runner.hpp"
#include "vqa/common/bits.hpp"
#include "vqa/common/parallel.hpp"

namespace {

std::uint64_t parse_seed_flag(const std::string& s) {
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) return vqa::parse_hex(s);
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used, 10);
  if (used != s.size() || s.front() == '-') throw std::invalid_argument("bad seed");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vqa::cli;
  CLI::App app{"Verifiable quantum advantage experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List experiment kinds and their parameters");

  auto* run = app.add_subcommand("run", "Run one experiment");
  std::string config_path;
  std::optional<std::string> seed_text;
  unsigned workers = vqa::default_workers();
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--seed", seed_text, "Master seed (decimal or 0x hex); overrides the config");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  run->add_option("--out", out_dir, "Output directory; overrides the config");
  run->add_option("--format", format, "jsonl, csv or both")->check(CLI::IsMember({"jsonl", "csv", "both"}));

  auto* verify = app.add_subcommand("verify", "Re-derive the config hash of a finished run");
  std::string verify_dir;
  verify->add_option("dir", verify_dir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (list->parsed()) {
    std::cout << list_experiments();
    return kExitOk;
  }
  if (verify->parsed()) {
    const std::string problem = verify_outputs(verify_dir);
    if (!problem.empty()) {
      std::cerr << "verify: " << problem << '\n';
      return kExitValidation;
    }
    std::cout << "ok\n";
    return kExitOk;
  }

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    if (seed_text) cfg.seed = parse_seed_flag(*seed_text);
    if (out_dir) cfg.out_dir = *out_dir;
    if (format) cfg.format = *format;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  }
  try {
    const ExperimentResult r = run_experiment(cfg, workers);
    write_outputs(cfg, r);
    std::cout << r.summary.dump() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
