#ifndef CROSSDIFF_SOLVER_HPP
#define CROSSDIFF_SOLVER_HPP

// Time integration of the semi-discrete system: forward Euler under a CFL
// limit, or a linearized backward Euler step with A frozen at the old state.
// A run ends when t_end is reached, when a blow-up trigger fires, or when the
// implicit solve fails on a finite state.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crossdiff/grid.hpp"
#include "crossdiff/krylov.hpp"
#include "crossdiff/model.hpp"

namespace crossdiff {

enum class Scheme { explicit_euler, imex };
enum class Outcome { completed, blowup, solver_failure };

const char* to_string(Scheme s) noexcept;
const char* to_string(Outcome o) noexcept;

struct SolverConfig {
  Scheme scheme = Scheme::explicit_euler;
  double t_end = 0.1;
  double dt_init = 1e-3;  // upper bound on the step (explicit steps are also CFL-limited)
  double cfl_safety = 0.9;
  double dt_min = 1e-12;
  double lin_tol = 1e-10;
  int lin_maxit = 500;
  double blowup_value_cap = 1e6;
  double blowup_w12_cap = 1e12;
  int max_halvings = 20;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Throws ConfigError naming the offending solver.* key.
void validate(const SolverConfig& cfg);

/// div(A(u)Du) + f(u) + B(u)Du at interior nodes, 0 on the boundary.
Field rhs(const Model& model, const Field& u);

/// cfl_safety h^2 / (4 max_nodes max|eig sym A(u)|); +inf if A vanishes everywhere.
double stable_dt(const Model& model, const Field& u, double cfl_safety);

/// u + dt rhs(u) with the boundary re-pinned.
Field step_explicit(const Model& model, const Field& u, double dt);

struct ImexStep {
  Field state;
  KrylovResult krylov;
};

/// Solves (I - dt L_{A(u)}) v = u + dt (f(u) + B(u)Du), warm-started from u.
ImexStep step_imex(const Model& model, const Field& u, double dt, double lin_tol, int lin_maxit);

/// ∫|u|^2 + ∫|Du|^2 (summed over components).
double w12_norm(const Field& u);

struct StepEvent {
  long step;
  double t;
  double dt;  // step that produced this state (0 for the initial state)
  const Field& state;
  bool last;
};

/// Called for the initial state and after every accepted step. last = true
/// marks the terminal state; that call repeats the previous step number when
/// the run stops without accepting a new state.
using StepObserver = std::function<void(const StepEvent&)>;

struct RunResult {
  Outcome outcome = Outcome::completed;
  double t_final = 0.0;
  long steps = 0;
  /// Numerical surrogate for the blow-up time; present iff outcome = blowup.
  std::optional<double> blowup_time;
  Field final_state;
  /// Residual history of the failed linear solve (solver_failure only).
  std::vector<double> residual_history;
  std::string message;
};

RunResult run(const Model& model, const Field& u0, const SolverConfig& cfg, const StepObserver& observer = {});

}  // namespace crossdiff

#endif  // CROSSDIFF_SOLVER_HPP
