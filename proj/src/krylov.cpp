#include "crossdiff/krylov.hpp"

#include <cmath>

#include "crossdiff/grid.hpp"

namespace crossdiff {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  std::vector<double> p(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) p[k] = a[k] * b[k];
  return pairwise_sum(p);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

KrylovResult bicgstab(const LinearOperator& op, std::span<const double> b, std::span<double> x,
                      std::span<const double> diagonal, double tol, int max_iterations) {
  const std::size_t n = b.size();
  KrylovResult res;
  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    for (double& v : x) v = 0.0;
    res.converged = true;
    res.history.push_back(0.0);
    return res;
  }

  std::vector<double> inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[k] = diagonal[k] != 0.0 ? 1.0 / diagonal[k] : 1.0;

  std::vector<double> r(n), r0(n), p(n, 0.0), v(n, 0.0), s(n), t(n), ph(n), sh(n);
  op(x, r);
  for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
  r0 = r;
  res.rel_residual = norm(r) / bnorm;
  res.history.push_back(res.rel_residual);
  if (res.rel_residual <= tol) {
    res.converged = true;
    return res;
  }

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const double rho_new = dot(r0, r);
    if (rho_new == 0.0 || !std::isfinite(rho_new)) break;
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
    for (std::size_t k = 0; k < n; ++k) ph[k] = inv[k] * p[k];
    op(ph, v);
    const double r0v = dot(r0, v);
    if (r0v == 0.0 || !std::isfinite(r0v)) break;
    alpha = rho / r0v;
    for (std::size_t k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];

    res.iterations = it;
    if (norm(s) / bnorm <= tol) {
      for (std::size_t k = 0; k < n; ++k) x[k] += alpha * ph[k];
      res.rel_residual = norm(s) / bnorm;
      res.history.push_back(res.rel_residual);
      res.converged = true;
      return res;
    }

    for (std::size_t k = 0; k < n; ++k) sh[k] = inv[k] * s[k];
    op(sh, t);
    const double tt = dot(t, t);
    if (tt == 0.0 || !std::isfinite(tt)) break;
    omega = dot(t, s) / tt;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * ph[k] + omega * sh[k];
      r[k] = s[k] - omega * t[k];
    }
    res.rel_residual = norm(r) / bnorm;
    res.history.push_back(res.rel_residual);
    if (res.rel_residual <= tol) {
      res.converged = true;
      return res;
    }
    if (omega == 0.0 || !std::isfinite(res.rel_residual)) break;
  }
  return res;
}

}  // namespace crossdiff
