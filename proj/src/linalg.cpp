#include "crossdiff/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "crossdiff/error.hpp"

namespace crossdiff {
namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTol = 1e-10;

double off_norm(const std::vector<double>& s, int m) {
  double acc = 0.0;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      if (p != q) acc += s[p * m + q] * s[p * m + q];
  return std::sqrt(acc);
}

std::vector<double> jacobi_eigenvalues(std::vector<double> s, int m) {
  const double scale = std::max(1.0, frobenius_norm(s));
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_norm(s, m) <= kJacobiTol * scale) {
      std::vector<double> ev(m);
      for (int p = 0; p < m; ++p) ev[p] = s[p * m + p];
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = s[p * m + q];
        if (apq == 0.0) continue;
        const double app = s[p * m + p];
        const double aqq = s[q * m + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < m; ++k) {
          const double skp = s[k * m + p];
          const double skq = s[k * m + q];
          s[k * m + p] = c * skp - sn * skq;
          s[k * m + q] = sn * skp + c * skq;
        }
        for (int k = 0; k < m; ++k) {
          const double spk = s[p * m + k];
          const double sqk = s[q * m + k];
          s[p * m + k] = c * spk - sn * sqk;
          s[q * m + k] = sn * spk + c * sqk;
        }
      }
    }
  }
  throw NumericalError("Jacobi eigenvalue iteration did not converge in " + std::to_string(kMaxJacobiSweeps) +
                       " sweeps");
}

}  // namespace

std::vector<double> sym_part_eigenvalues(std::span<const double> a, int m) {
  if (m == 1) return {a[0]};
  if (m == 2) {
    const double p = a[0];
    const double r = a[3];
    const double q = 0.5 * (a[1] + a[2]);
    const double mean = 0.5 * (p + r);
    const double rad = std::hypot(0.5 * (p - r), q);
    return {mean - rad, mean + rad};
  }
  std::vector<double> s(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s[i * m + j] = 0.5 * (a[i * m + j] + a[j * m + i]);
  return jacobi_eigenvalues(std::move(s), m);
}

double lambda_min_sym(std::span<const double> a, int m) { return sym_part_eigenvalues(a, m).front(); }

double max_abs_eigenvalue_sym(std::span<const double> a, int m) {
  const auto ev = sym_part_eigenvalues(a, m);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double frobenius_norm(std::span<const double> a) noexcept {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

double euclidean_norm(std::span<const double> v) noexcept { return frobenius_norm(v); }

void matvec(std::span<const double> a, int m, std::span<const double> x, std::span<double> out) noexcept {
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += a[i * m + j] * x[j];
    out[i] = s;
  }
}

}  // namespace crossdiff
