#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "crossdiff/krylov.hpp"

using namespace crossdiff;

namespace {

// 1D nonsymmetric convection-diffusion matrix: tridiag(-1 - c, 2 + s, -1 + c).
struct Tridiag {
  int n;
  double lower, diag, upper;
  void apply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n; ++i) {
      double v = diag * x[i];
      if (i > 0) v += lower * x[i - 1];
      if (i + 1 < n) v += upper * x[i + 1];
      y[i] = v;
    }
  }
};

double residual(const Tridiag& t, std::span<const double> x, std::span<const double> b) {
  std::vector<double> y(t.n);
  t.apply(x, y);
  double r = 0.0, nb = 0.0;
  for (int i = 0; i < t.n; ++i) {
    r += (b[i] - y[i]) * (b[i] - y[i]);
    nb += b[i] * b[i];
  }
  return std::sqrt(r / nb);
}

}  // namespace

TEST(Krylov, SolvesNonsymmetricSystem) {
  const Tridiag t{200, -1.3, 2.5, -0.7};
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> b(t.n), x(t.n, 0.0), diag(t.n, t.diag);
  for (double& v : b) v = g(rng);
  const auto r = bicgstab([&](auto in, auto out) { t.apply(in, out); }, b, x, diag, 1e-10, 500);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.rel_residual, 1e-10);
  EXPECT_LE(residual(t, x, b), 1e-9);
  EXPECT_EQ(r.history.size(), static_cast<std::size_t>(r.iterations) + 1);
  EXPECT_DOUBLE_EQ(r.history.front(), 1.0);
}

TEST(Krylov, IdentityConvergesImmediately) {
  const Tridiag t{10, 0.0, 1.0, 0.0};
  std::vector<double> b(10), x(10, 0.0), diag(10, 1.0);
  for (int i = 0; i < 10; ++i) b[i] = i + 1;
  const auto r = bicgstab([&](auto in, auto out) { t.apply(in, out); }, b, x, diag, 1e-12, 5);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(x[i], i + 1, 1e-12);
}

TEST(Krylov, ExactWarmStartNeedsNoIterations) {
  const Tridiag t{50, -1.0, 3.0, -1.0};
  std::vector<double> xs(50), b(50), diag(50, 3.0);
  for (int i = 0; i < 50; ++i) xs[i] = std::sin(0.1 * i);
  t.apply(xs, b);
  auto x = xs;
  const auto r = bicgstab([&](auto in, auto out) { t.apply(in, out); }, b, x, diag, 1e-10, 100);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Krylov, ZeroRightHandSide) {
  const Tridiag t{20, -1.0, 2.0, -1.0};
  std::vector<double> b(20, 0.0), x(20, 5.0), diag(20, 2.0);
  const auto r = bicgstab([&](auto in, auto out) { t.apply(in, out); }, b, x, diag, 1e-10, 100);
  EXPECT_TRUE(r.converged);
  for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(Krylov, IterationCapReportsFailure) {
  const Tridiag t{400, -1.0, 2.0, -1.0};
  std::vector<double> b(400, 1.0), x(400, 0.0), diag(400, 2.0);
  const auto r = bicgstab([&](auto in, auto out) { t.apply(in, out); }, b, x, diag, 1e-14, 3);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_GT(r.rel_residual, 1e-14);
  EXPECT_EQ(r.history.size(), 4u);
}

TEST(Krylov, JacobiHandlesBadlyScaledRows) {
  const int n = 100;
  std::vector<double> scale(n);
  for (int i = 0; i < n; ++i) scale[i] = std::pow(10.0, (i % 7) - 3);
  auto op = [&](std::span<const double> x, std::span<double> y) {
    for (int i = 0; i < n; ++i) {
      double v = 4 * x[i];
      if (i > 0) v -= x[i - 1];
      if (i + 1 < n) v -= 2 * x[i + 1];
      y[i] = scale[i] * v;
    }
  };
  std::vector<double> b(n, 1.0), x(n, 0.0), diag(n);
  for (int i = 0; i < n; ++i) diag[i] = 4 * scale[i];
  const auto r = bicgstab(op, b, x, diag, 1e-10, 300);
  ASSERT_TRUE(r.converged);
  std::vector<double> y(n);
  op(x, y);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(y[i], 1.0, 1e-8);
}
