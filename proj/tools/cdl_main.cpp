// cdl: command line front end over the C API.
//
// Exit codes: 0 completed (or all conditions certified), 2 blow-up detected,
// 3 solver failure, 4 configuration error, 5 a structure condition is
// violated, 1 anything else.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cdl/cdl.h"

namespace {

constexpr int kExitOther = 1;
constexpr int kExitBlowup = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitConfig = 4;
constexpr int kExitViolated = 5;

int report(cdl_status s) {
  std::cerr << "cdl: " << cdl_last_error() << "\n";
  return s == CDL_ERR_CONFIG ? kExitConfig : kExitOther;
}

void print_and_free(char* s) {
  std::fputs(s, stdout);
  cdl_string_free(s);
}

// Loads the config and applies the --out override.
cdl_status open_config(const std::string& source, const std::string& out_dir, cdl_config** cfg) {
  cdl_status s = cdl_config_load(source.c_str(), cfg);
  if (s != CDL_OK) return s;
  if (!out_dir.empty()) s = cdl_config_set_output_dir(*cfg, out_dir.c_str());
  return s;
}

int cmd_run(const std::string& source, const std::string& out_dir) {
  cdl_config* cfg = nullptr;
  if (cdl_status s = open_config(source, out_dir, &cfg); s != CDL_OK) {
    cdl_config_free(cfg);
    return report(s);
  }
  cdl_run* run = nullptr;
  const cdl_status s = cdl_run_execute(cfg, 1, &run);
  cdl_config_free(cfg);
  if (s != CDL_OK) return report(s);

  char* summary = nullptr;
  if (cdl_run_summary(run, &summary) == CDL_OK) print_and_free(summary);
  const cdl_outcome outcome = cdl_run_outcome(run);
  cdl_run_free(run);
  switch (outcome) {
    case CDL_OUTCOME_COMPLETED: return 0;
    case CDL_OUTCOME_BLOWUP: return kExitBlowup;
    case CDL_OUTCOME_SOLVER_FAILURE: return kExitSolverFailure;
  }
  return kExitOther;
}

int cmd_check(const std::string& source, const std::string& out_dir) {
  cdl_config* cfg = nullptr;
  if (cdl_status s = open_config(source, out_dir, &cfg); s != CDL_OK) {
    cdl_config_free(cfg);
    return report(s);
  }
  char* csv = nullptr;
  int violated = 0;
  const cdl_status s = cdl_check(cfg, 1, &csv, &violated);
  cdl_config_free(cfg);
  if (s != CDL_OK) return report(s);
  print_and_free(csv);
  return violated > 0 ? kExitViolated : 0;
}

int cmd_presets(const std::string& name) {
  if (name.empty()) {
    for (size_t i = 0; i < cdl_preset_count(); ++i) std::cout << cdl_preset_name(i) << "\n";
    return 0;
  }
  char* text = nullptr;
  if (cdl_status s = cdl_preset_text(name.c_str(), &text); s != CDL_OK) return report(s);
  print_and_free(text);
  return 0;
}

int cmd_convergence(const std::string& source, int levels) {
  cdl_config* cfg = nullptr;
  if (cdl_status s = cdl_config_load(source.c_str(), &cfg); s != CDL_OK) {
    cdl_config_free(cfg);
    return report(s);
  }
  char* text = nullptr;
  const cdl_status s = cdl_convergence(cfg, levels, &text, nullptr);
  cdl_config_free(cfg);
  if (s != CDL_OK) return report(s);
  print_and_free(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-diffusion simulator and structure checker"};
  app.require_subcommand(1);

  std::string source, out_dir, preset;
  int levels = 3;

  auto* run = app.add_subcommand("run", "Integrate a config and write diagnostics, checkpoints and a summary");
  run->add_option("config", source, "Config file or preset:<name>")->required();
  run->add_option("--out", out_dir, "Override output.dir");

  auto* check = app.add_subcommand("check", "Certify the structural conditions of the config's model");
  check->add_option("config", source, "Config file or preset:<name>")->required();
  check->add_option("--out", out_dir, "Override output.dir");

  auto* presets = app.add_subcommand("presets", "List built-in configs, or print one");
  presets->add_option("name", preset, "Preset to print");

  auto* conv = app.add_subcommand("convergence", "Manufactured-solution convergence study");
  conv->add_option("config", source, "Config file or preset:<name>")->required();
  conv->add_option("--levels", levels, "Number of resolutions")->check(CLI::Range(2, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitOther;
  }

  if (*run) return cmd_run(source, out_dir);
  if (*check) return cmd_check(source, out_dir);
  if (*presets) return cmd_presets(preset);
  if (*conv) return cmd_convergence(source, levels);
  return kExitOther;
}
