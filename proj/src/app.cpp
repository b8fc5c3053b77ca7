#include "crossdiff/app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "crossdiff/checkpoint.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/format.hpp"
#include "crossdiff/models.hpp"
#include "crossdiff/presets.hpp"

namespace crossdiff {

RunConfig load_config(const std::string& source) {
  if (source.rfind("preset:", 0) == 0) {
    const std::string name = source.substr(7);
    const auto text = preset_text(name);
    if (!text) throw ConfigError("unknown preset '" + name + "'");
    return parse_config(*text);
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + source + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string summary_text(const RunOutputs& out) {
  const RunResult& r = out.result;
  std::string s;
  s += "outcome=" + std::string(to_string(r.outcome)) + "\n";
  s += "t_final=" + format_double(r.t_final) + "\n";
  s += "steps=" + std::to_string(r.steps) + "\n";
  s += "blowup_time=" + (r.blowup_time ? format_double(*r.blowup_time) : std::string()) + "\n";
  s += "blowup_time_kind=numerical_surrogate\n";
  s += "g_max=" + format_double(out.g_max) + "\n";
  s += "max_lady_ratio=" + format_double(out.max_lady_ratio) + "\n";
  s += "max_poincare_ratio=" + format_double(out.max_poincare_ratio) + "\n";
  s += "message=" + r.message + "\n";
  if (!r.residual_history.empty()) {
    s += "residual_history=";
    for (std::size_t k = 0; k < r.residual_history.size(); ++k)
      s += (k ? ";" : "") + format_double(r.residual_history[k]);
    s += "\n";
  }
  return s;
}

RunOutputs execute_run(const RunConfig& cfg, bool write_files) {
  const Grid2D grid = build_grid(cfg);
  const auto model = build_model(cfg);
  const Field u0 = build_initial_state(cfg, grid, model->m());
  const std::filesystem::path dir = cfg.output.dir;
  if (write_files) std::filesystem::create_directories(dir);

  Monitor monitor(*model, monitor_options(cfg));
  const int every = cfg.output.checkpoint_every;
  const StepObserver observer = [&](const StepEvent& ev) {
    monitor.observe(ev);
    if (write_files && every > 0 && ev.step > 0 && ev.step % every == 0)
      write_checkpoint(dir / "checkpoint.cdl", ev.state, ev.t);
  };

  RunResult result = run(*model, u0, cfg.solver, observer);
  RunOutputs out{std::move(result), monitor.records(), monitor.g_max(), monitor.max_lady_ratio(),
                 monitor.max_poincare_ratio(), {}, {}};
  out.diagnostics_csv = to_csv(out.records);
  out.summary = summary_text(out);

  if (write_files) {
    write_file_atomic(dir / "diagnostics.csv", out.diagnostics_csv);
    write_checkpoint(dir / "final.cdl", out.result.final_state, out.result.t_final);
    write_file_atomic(dir / "resolved.cfg", echo_config(cfg));
    write_file_atomic(dir / "summary.txt", out.summary);
  }
  return out;
}

CheckOutputs execute_check(const RunConfig& cfg, bool write_files) {
  const auto model = build_model(cfg);
  CheckOutputs out;
  out.reports = check_all(*model, check_options(cfg));
  out.csv = to_csv(out.reports);
  for (const auto& r : out.reports)
    if (r.verdict == Verdict::violated) ++out.violated;
  if (write_files) {
    const std::filesystem::path dir = cfg.output.dir;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "cert.csv", out.csv);
  }
  return out;
}

ConvergenceOutputs convergence_study(const RunConfig& cfg, int levels) {
  const ModelConfig& mc = cfg.model;
  const auto zero = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != 0.0) return false;
    return true;
  };
  if (mc.family != "heat" || mc.m != 1 || !zero(mc.b) || !zero(mc.c))
    throw ConfigError("convergence: needs model.family = heat with m = 1 and no reaction");
  if (cfg.grid.nx != cfg.grid.ny) throw ConfigError("convergence: needs a square grid (nx = ny)");
  if (levels < 2) throw ConfigError("convergence: needs at least two levels");

  const double L = cfg.grid.nx * cfg.grid.h;
  const double d = mc.d.at(0);
  const double pi = std::numbers::pi;
  const double rate = 2.0 * pi * pi * d / (L * L);
  const auto model = build_model(cfg);

  ConvergenceOutputs out;
  for (int level = 0; level < levels; ++level) {
    const int n = cfg.grid.nx << level;
    const Grid2D grid(n, n, L / n);
    const double h = grid.h();
    const double limit = cfg.solver.cfl_safety * h * h / (4.0 * d);
    const double steps = std::ceil(cfg.solver.t_end / limit);
    SolverConfig sc = cfg.solver;
    sc.scheme = Scheme::explicit_euler;
    sc.dt_init = cfg.solver.t_end / steps;
    sc.dt_min = std::min(sc.dt_min, 0.1 * sc.dt_init);

    Field u0 = Field::from_function(grid, 1, [&](int, double x, double y) {
      return std::sin(pi * x / L) * std::sin(pi * y / L);
    });
    u0.pin_boundary();
    const RunResult r = run(*model, u0, sc);
    if (r.outcome != Outcome::completed) throw NumericalError("convergence: run at n = " + std::to_string(n) +
                                                              " ended with " + to_string(r.outcome));
    const double decay = std::exp(-rate * r.t_final);
    double err = 0.0;
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        err = std::max(err, std::abs(r.final_state(0, i, j) -
                                     decay * std::sin(pi * grid.x(i) / L) * std::sin(pi * grid.y(j) / L)));
    out.levels.push_back({n, h, sc.dt_init, r.steps, err});
  }

  std::string rep = "n,h,dt,steps,max_error\n";
  for (const auto& l : out.levels)
    rep += std::to_string(l.n) + "," + format_double(l.h) + "," + format_double(l.dt) + "," +
           std::to_string(l.steps) + "," + format_double(l.error) + "\n";
  for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
    const double ratio = out.levels[k].error / out.levels[k + 1].error;
    out.ratios.push_back(ratio);
    out.orders.push_back(std::log2(ratio));
    rep += "ratio " + std::to_string(out.levels[k].n) + "->" + std::to_string(out.levels[k + 1].n) + " = " +
           format_double(ratio) + " (observed order " + format_double(out.orders.back()) + ")\n";
  }
  out.report = rep;
  return out;
}

}  // namespace crossdiff
