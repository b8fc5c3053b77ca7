#ifndef CROSSDIFF_TESTS_ORACLES_HPP
#define CROSSDIFF_TESTS_ORACLES_HPP

// Test-only reference computations, written independently of the library:
// literal sums, closed forms and brute-force scans.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

using MatFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// d a_ij / d u_k by central differences with step h, layout [(i*m+j)*m+k].
inline std::vector<double> fd_jacobian(const MatFn& A, const std::vector<double>& u, double h = 1e-6) {
  const std::size_t m = u.size();
  std::vector<double> out(m * m * m);
  for (std::size_t k = 0; k < m; ++k) {
    auto up = u, um = u;
    up[k] += h;
    um[k] -= h;
    const auto ap = A(up), am = A(um);
    for (std::size_t ij = 0; ij < m * m; ++ij) out[ij * m + k] = (ap[ij] - am[ij]) / (2 * h);
  }
  return out;
}

/// The excess expansion summed literally over (i, l, k, j, axis), with du
/// laid out as du[2c + axis] and da as in fd_jacobian.
inline double excess_quadruple_sum(const std::vector<double>& a, const std::vector<double>& da, int m,
                                   const std::vector<double>& du, const std::vector<double>& ut, int n = 0) {
  if (n == 0) n = m;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          for (int ax = 0; ax < 2; ++ax)
            s += a[i * m + l] * da[(i * m + j) * m + k] * (du[2 * k + ax] * ut[j] - ut[k] * du[2 * j + ax]) *
                 du[2 * l + ax];
  return s;
}

/// Smallest and largest eigenvalue of the symmetric part of a 2x2 matrix.
inline std::pair<double, double> sym2_eigs(double a, double b, double c, double d) {
  const double off = 0.5 * (b + c);
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  return {mean - rad, mean + rad};
}

/// Smallest singular value of a 2x2 matrix [[a,b],[c,d]].
inline double smallest_singular2(double a, double b, double c, double d) {
  const double p = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  return std::sqrt(0.5 * (p - std::sqrt(std::max(0.0, p * p - 4 * det * det))));
}

/// Plain row-by-row trapezoidal rule on the unit-spacing node array w.
inline double trapezoid(const std::vector<double>& w, int nx, int ny, double h) {
  double s = 0.0;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const double wx = (i == 0 || i == nx) ? 0.5 : 1.0;
      const double wy = (j == 0 || j == ny) ? 0.5 : 1.0;
      s += wx * wy * w[j * (nx + 1) + i];
    }
  return s * h * h;
}

/// max of fn over an n^d tensor grid of the box [lo, hi]^d.
inline double dense_max(int d, double lo, double hi, int n, const std::function<double(const std::vector<double>&)>& fn) {
  std::vector<int> idx(d, 0);
  std::vector<double> u(d);
  double best = -INFINITY;
  while (true) {
    for (int k = 0; k < d; ++k) u[k] = lo + (hi - lo) * idx[k] / (n - 1);
    best = std::max(best, fn(u));
    int k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
  return best;
}

// Analytic integrals for U = sin(pi x) sin(pi y) on the unit square.
inline constexpr double int_U = 4.0 / (pi * pi);
inline constexpr double int_U2 = 0.25;
inline constexpr double int_U4 = 9.0 / 64.0;
inline constexpr double int_DU2 = pi * pi / 2.0;

}  // namespace oracle

#endif  // CROSSDIFF_TESTS_ORACLES_HPP
