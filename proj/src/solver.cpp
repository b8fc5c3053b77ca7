#include "crossdiff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossdiff/error.hpp"
#include "crossdiff/format.hpp"
#include "crossdiff/linalg.hpp"

namespace crossdiff {
namespace {

// f(u) + B(u)Du at interior nodes.
Field reaction_field(const Model& model, const Field& u) {
  const Grid2D& g = u.grid();
  const int m = model.m();
  Field out(g, m);
  std::optional<GradField> du;
  if (model.has_drift()) du.emplace(gradient(u));
  std::vector<double> s(m), d(2 * m, 0.0), f(m);
  for (int j = 1; j < g.ny(); ++j) {
    for (int i = 1; i < g.nx(); ++i) {
      u.node_state(i, j, s);
      if (du) du->node_gradient(i, j, d);
      model.full_reaction(s, d, f);
      for (int c = 0; c < m; ++c) out(c, i, j) = f[c];
    }
  }
  return out;
}

bool all_finite(const Field& u) { return !u.first_nonfinite().has_value(); }

}  // namespace

const char* to_string(Scheme s) noexcept { return s == Scheme::imex ? "imex" : "explicit"; }

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::completed: return "completed";
    case Outcome::blowup: return "blowup";
    case Outcome::solver_failure: return "solver_failure";
  }
  return "completed";
}

void validate(const SolverConfig& c) {
  if (!(c.t_end > 0.0)) throw ConfigError("solver.t_end: must be > 0");
  if (!(c.dt_init > 0.0)) throw ConfigError("solver.dt_init: must be > 0");
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) throw ConfigError("solver.cfl_safety: must be in (0, 1]");
  if (!(c.dt_min > 0.0 && c.dt_min < c.dt_init)) throw ConfigError("solver.dt_min: must be in (0, dt_init)");
  if (!(c.lin_tol > 0.0)) throw ConfigError("solver.lin_tol: must be > 0");
  if (c.lin_maxit < 1) throw ConfigError("solver.lin_maxit: must be >= 1");
  if (!(c.blowup_value_cap > 0.0)) throw ConfigError("solver.blowup_value_cap: must be > 0");
  if (!(c.blowup_w12_cap > 0.0)) throw ConfigError("solver.blowup_w12_cap: must be > 0");
  if (c.max_halvings < 0) throw ConfigError("solver.max_halvings: must be >= 0");
}

Field rhs(const Model& model, const Field& u) {
  Field out = div_flux(model.diffusion_fn(), u);
  out.axpy(1.0, reaction_field(model, u));
  out.require_finite("rhs");
  return out;
}

double stable_dt(const Model& model, const Field& u, double cfl_safety) {
  const Grid2D& g = u.grid();
  const int m = model.m();
  std::vector<double> s(m), a(static_cast<std::size_t>(m) * m);
  double peak = 0.0;
  for (int j = 0; j <= g.ny(); ++j) {
    for (int i = 0; i <= g.nx(); ++i) {
      u.node_state(i, j, s);
      model.diffusion(s, a);
      peak = std::max(peak, max_abs_eigenvalue_sym(a, m));
    }
  }
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  return cfl_safety * g.h() * g.h() / (4.0 * peak);
}

Field step_explicit(const Model& model, const Field& u, double dt) {
  Field next = u;
  next.axpy(dt, rhs(model, u));
  next.pin_boundary();
  return next;
}

ImexStep step_imex(const Model& model, const Field& u, double dt, double lin_tol, int lin_maxit) {
  u.require_finite("step_imex");
  const FaceDiffusion op(model.diffusion_fn(), u);
  Field b = u;
  b.axpy(dt, reaction_field(model, u));
  b.pin_boundary();

  std::vector<double> diag = op.negative_diagonal();
  for (double& d : diag) d = 1.0 + dt * d;

  Field work(u.grid(), u.components());
  const LinearOperator apply = [&](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), work.values().begin());
    const Field lx = op.apply(work);
    const auto lv = lx.values();
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] - dt * lv[k];
  };

  ImexStep out{u, {}};
  out.krylov = bicgstab(apply, b.values(), out.state.values(), diag, lin_tol, lin_maxit);
  out.state.pin_boundary();
  return out;
}

double w12_norm(const Field& u) {
  const Grid2D& g = u.grid();
  const GradField du = gradient(u);
  std::vector<double> w(g.node_count(), 0.0);
  for (int c = 0; c < u.components(); ++c) {
    const auto uc = u.component(c);
    const auto dx = du.axis(c, 0);
    const auto dy = du.axis(c, 1);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += uc[k] * uc[k] + dx[k] * dx[k] + dy[k] * dy[k];
  }
  return integrate(g, w);
}

RunResult run(const Model& model, const Field& u0, const SolverConfig& cfg, const StepObserver& observer) {
  validate(cfg);
  if (u0.components() != model.m()) throw InputError("run: initial state has the wrong component count");
  u0.require_finite("initial state");
  if (!u0.boundary_is_zero()) throw InputError("run: initial state violates the Dirichlet boundary condition");

  RunResult res{Outcome::completed, 0.0, 0, std::nullopt, u0, {}, {}};
  Field& u = res.final_state;
  double t = 0.0;
  long step = 0;
  const auto notify = [&](double dt, bool last) {
    if (observer) observer(StepEvent{step, t, dt, u, last});
  };
  const auto stop = [&](Outcome o, std::string msg, double dt_last) {
    res.outcome = o;
    res.message = std::move(msg);
    if (o == Outcome::blowup) res.blowup_time = t;
    notify(dt_last, true);
  };

  notify(0.0, false);
  double last_dt = 0.0;
  while (true) {
    const double remaining = cfg.t_end - t;
    if (remaining <= 1e-12 * cfg.t_end) {
      res.message = "reached t_end";
      notify(last_dt, true);
      break;
    }

    double scale = 1.0;
    std::optional<Field> next;
    double dt = 0.0;
    bool underflow = false;
    for (int attempt = 0; attempt <= cfg.max_halvings && !next; ++attempt, scale *= 0.5) {
      dt = cfg.dt_init * scale;
      if (cfg.scheme == Scheme::explicit_euler) dt = std::min(dt, scale * stable_dt(model, u, cfg.cfl_safety));
      dt = std::min(dt, remaining);
      if (dt < cfg.dt_min && dt < remaining) {
        underflow = true;
        break;
      }
      try {
        if (cfg.scheme == Scheme::explicit_euler) {
          Field cand = step_explicit(model, u, dt);
          if (all_finite(cand)) next.emplace(std::move(cand));
        } else {
          ImexStep s = step_imex(model, u, dt, cfg.lin_tol, cfg.lin_maxit);
          const bool finite = all_finite(s.state);
          if (!s.krylov.converged && finite) {
            res.residual_history = std::move(s.krylov.history);
            stop(Outcome::solver_failure,
                 "linear solve did not reach lin_tol after " + std::to_string(s.krylov.iterations) +
                     " iterations (relative residual " + format_double(s.krylov.rel_residual) + ")",
                 last_dt);
            res.t_final = t;
            res.steps = step;
            return res;
          }
          if (finite) next.emplace(std::move(s.state));
        }
      } catch (const CorruptionError&) {
        // non-finite intermediate; retry with a smaller step
      }
    }

    if (!next) {
      stop(Outcome::blowup,
           underflow ? "time step fell below dt_min" : "non-finite state persisted after step halving", last_dt);
      break;
    }

    u = std::move(*next);
    t += dt;
    ++step;
    last_dt = dt;
    const double peak = u.max_abs();
    const double w12 = w12_norm(u);
    if (peak > cfg.blowup_value_cap || w12 > cfg.blowup_w12_cap) {
      stop(Outcome::blowup,
           peak > cfg.blowup_value_cap ? "max|u| exceeded blowup_value_cap" : "W12 norm exceeded blowup_w12_cap",
           dt);
      break;
    }
    notify(dt, cfg.t_end - t <= 1e-12 * cfg.t_end);
    if (cfg.t_end - t <= 1e-12 * cfg.t_end) {
      res.message = "reached t_end";
      break;
    }
  }
  res.t_final = t;
  res.steps = step;
  return res;
}

}  // namespace crossdiff
