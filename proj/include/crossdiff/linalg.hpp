#ifndef CROSSDIFF_LINALG_HPP
#define CROSSDIFF_LINALG_HPP

// Small dense m x m matrices stored row-major in contiguous spans.

#include <span>
#include <vector>

namespace crossdiff {

/// Eigenvalues of the symmetric part (A + A^T)/2, ascending. Closed form for
/// m <= 2; cyclic Jacobi otherwise (off-diagonal residual below 1e-10).
/// Throws NumericalError if Jacobi does not converge within its sweep cap.
std::vector<double> sym_part_eigenvalues(std::span<const double> a, int m);

/// Smallest eigenvalue of (A + A^T)/2.
double lambda_min_sym(std::span<const double> a, int m);

/// Largest eigenvalue magnitude of (A + A^T)/2.
double max_abs_eigenvalue_sym(std::span<const double> a, int m);

double frobenius_norm(std::span<const double> a) noexcept;
double euclidean_norm(std::span<const double> v) noexcept;

/// out = A x
void matvec(std::span<const double> a, int m, std::span<const double> x, std::span<double> out) noexcept;

}  // namespace crossdiff

#endif  // CROSSDIFF_LINALG_HPP
