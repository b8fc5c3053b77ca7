#ifndef CROSSDIFF_KRYLOV_HPP
#define CROSSDIFF_KRYLOV_HPP

#include <functional>
#include <span>
#include <vector>

namespace crossdiff {

/// y = A x
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct KrylovResult {
  bool converged = false;
  int iterations = 0;
  double rel_residual = 0.0;
  /// ||b - A x|| / ||b|| after every iteration, starting with the initial guess.
  std::vector<double> history;
};

/// Right-preconditioned BiCGSTAB with a Jacobi preconditioner. `x` holds the
/// initial guess on entry and the iterate on return. A zero right-hand side
/// returns x = 0 immediately.
KrylovResult bicgstab(const LinearOperator& op, std::span<const double> b, std::span<double> x,
                      std::span<const double> diagonal, double tol, int max_iterations);

}  // namespace crossdiff

#endif  // CROSSDIFF_KRYLOV_HPP
