#ifndef CROSSDIFF_CONFIG_HPP
#define CROSSDIFF_CONFIG_HPP

// Run configuration: line-oriented `key = value` text with `[section]`
// headers and `#` comments. Lists are comma separated; matrices are given
// row-major as m*m values.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crossdiff/diagnostics.hpp"
#include "crossdiff/grid.hpp"
#include "crossdiff/model.hpp"
#include "crossdiff/solver.hpp"
#include "crossdiff/structure.hpp"

namespace crossdiff {

struct GridConfig {
  int nx = 0;
  int ny = 0;
  double h = 0.0;  // resolved to 1/nx when absent

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct ModelConfig {
  std::string family = "heat";  // heat | skt | pyramid | custom_poly
  int m = 0;                    // resolved per family when absent
  int r = 2;
  std::vector<double> d, a, b, c, s, beta;
  double k = 1.0;
  double K = 2.0;
  double eps0_scale = 1.0;
  double scale = 1.0;
  double drift = 0.0;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct InitConfig {
  std::string preset = "sine";  // sine | bump | random_smooth | checkpoint:<path>
  double amplitude = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const InitConfig&, const InitConfig&) = default;
};

struct CheckConfig {
  double box_lo = 0.0;
  double box_hi = 10.0;
  int n_samples = 4096;
  int n_dirs = 100;
  std::uint64_t seed = 0;

  friend bool operator==(const CheckConfig&, const CheckConfig&) = default;
};

struct OutputConfig {
  std::string dir = "out";
  int diag_every = 1;
  int excess_every = 1;
  int checkpoint_every = 0;  // 0: only the final checkpoint
  double gronwall_c = 1.0;
  double c_eps = 1.0;
  double c_excess = 1.0;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  GridConfig grid;
  ModelConfig model;
  SolverConfig solver;
  InitConfig init;
  CheckConfig check;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses, applies defaults and validates (including the model
/// coefficients). Throws ConfigError naming the line and key.
RunConfig parse_config(std::string_view text);

/// Canonical text of a resolved config; parse_config(echo_config(c)) == c.
std::string echo_config(const RunConfig& cfg);

Grid2D build_grid(const RunConfig& cfg);
std::unique_ptr<Model> build_model(const RunConfig& cfg);
/// Initial state with the Dirichlet boundary pinned.
Field build_initial_state(const RunConfig& cfg, const Grid2D& grid, int m);
CheckOptions check_options(const RunConfig& cfg);
MonitorOptions monitor_options(const RunConfig& cfg);

}  // namespace crossdiff

#endif  // CROSSDIFF_CONFIG_HPP
