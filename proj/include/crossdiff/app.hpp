#ifndef CROSSDIFF_APP_HPP
#define CROSSDIFF_APP_HPP

// Orchestration behind the command line: load a config, run it, certify its
// model, or run the manufactured-solution convergence study.

#include <string>
#include <vector>

#include "crossdiff/config.hpp"
#include "crossdiff/diagnostics.hpp"
#include "crossdiff/solver.hpp"
#include "crossdiff/structure.hpp"

namespace crossdiff {

/// `preset:<name>` loads a built-in config; anything else is a file path.
RunConfig load_config(const std::string& source);

struct RunOutputs {
  RunResult result;
  std::vector<DiagnosticsRecord> records;
  double g_max = 0.0;
  double max_lady_ratio = 0.0;
  double max_poincare_ratio = 0.0;
  std::string diagnostics_csv;
  std::string summary;
};

/// Runs the config. With write_files, output.dir receives diagnostics.csv,
/// final.cdl, resolved.cfg and summary.txt (plus checkpoint.cdl when
/// output.checkpoint_every > 0), each written atomically.
RunOutputs execute_run(const RunConfig& cfg, bool write_files = true);

std::string summary_text(const RunOutputs& out);

struct CheckOutputs {
  std::vector<CertReport> reports;
  std::string csv;
  int violated = 0;
};

/// Certifies the config's model; with write_files the CSV goes to output.dir/cert.csv.
CheckOutputs execute_check(const RunConfig& cfg, bool write_files = true);

struct ConvergenceLevel {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  long steps = 0;
  double error = 0.0;  // max-norm error against the exact solution at t_end
};

struct ConvergenceOutputs {
  std::vector<ConvergenceLevel> levels;
  std::vector<double> ratios;  // error(n) / error(2n)
  std::vector<double> orders;  // log2 of the ratios
  std::string report;
};

/// Heat equation with zero reaction, exact solution
/// sin(pi x/L) sin(pi y/L) exp(-2 pi^2 d t / L^2) on the square of side L =
/// nx h, at nx, 2nx, 4nx, ... (`levels` resolutions) with dt ∝ h^2.
/// Throws ConfigError unless the config is a square, scalar, reaction-free heat problem.
ConvergenceOutputs convergence_study(const RunConfig& cfg, int levels = 3);

}  // namespace crossdiff

#endif  // CROSSDIFF_APP_HPP
