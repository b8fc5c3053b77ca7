#include <gtest/gtest.h>

#include <random>

#include "crossdiff/diagnostics.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/linalg.hpp"
#include "crossdiff/models.hpp"
#include "crossdiff/sampling.hpp"
#include "oracles.hpp"

using namespace crossdiff;

namespace {

std::unique_ptr<PolynomialModel> classical_skt() {
  SKTParams p;
  p.m = 2;
  p.d = {1, 1};
  p.a = {1, 1, 1, 1};
  return skt_model(p);
}

std::vector<double> eval_A(const Model& model, const std::vector<double>& u) {
  std::vector<double> a(model.m() * model.m());
  model.diffusion(u, a);
  return a;
}

// Built-in families used by the property tests.
std::vector<std::unique_ptr<Model>> builtins() {
  std::vector<std::unique_ptr<Model>> out;
  out.push_back(classical_skt());
  SKTParams heat;
  heat.m = 2;
  heat.d = {1, 3};
  out.push_back(skt_model(heat));
  SKTParams cubic;
  cubic.m = 2;
  cubic.r = 3;
  cubic.a = {0.5, 1, 0.25, 0.5};
  out.push_back(skt_model(cubic));
  FoodChainParams fc;
  fc.s = {0.5, 0.5, 0.5};
  fc.beta = {0, 0, 0, 0.1, 0, 0, 0.1, 0.1, 0};
  out.push_back(pyramid_model(food_chain_table(fc)));
  PowerLawParams pl;
  pl.m = 2;
  pl.k = 1;
  pl.K = 2;
  out.push_back(power_law_model(pl));
  return out;
}

}  // namespace

TEST(SKT, ClassicalDiffusionMatrix) {
  const auto model = classical_skt();
  const std::vector<double> u{0.4, 1.3};
  const auto a = eval_A(*model, u);
  EXPECT_NEAR(a[0], 1 + 2 * 0.4 + 1.3, 1e-14);
  EXPECT_NEAR(a[1], 0.4, 1e-14);
  EXPECT_NEAR(a[2], 1.3, 1e-14);
  EXPECT_NEAR(a[3], 1 + 0.4 + 2 * 1.3, 1e-14);
  std::vector<double> p(2);
  model->potential(u, p);
  EXPECT_NEAR(p[0], 0.4 * (1 + 0.4 + 1.3), 1e-14);
  EXPECT_EQ(model->structure(), StructureTag::gradient);
  EXPECT_EQ(model->traits().k, 1.0);
  EXPECT_EQ(model->traits().K, 2.0);
}

TEST(SKT, PotentialJacobianMatchesA) {
  const auto model = classical_skt();
  const std::vector<double> u{0.3, 0.7};
  const oracle::MatFn P = [&](const std::vector<double>& v) {
    std::vector<double> p(2);
    model->potential(v, p);
    return p;
  };
  const double h = 1e-6;
  const auto a = eval_A(*model, u);
  for (int j = 0; j < 2; ++j) {
    auto up = u, um = u;
    up[j] += h;
    um[j] -= h;
    const auto pp = P(up), pm = P(um);
    for (int i = 0; i < 2; ++i) {
      const double fd = (pp[i] - pm[i]) / (2 * h);
      EXPECT_LT(std::abs(fd - a[i * 2 + j]) / std::abs(a[i * 2 + j]), 1e-6);
    }
  }
}

TEST(SKT, GradientStructureOnSamples) {
  SKTParams p;
  p.m = 3;
  p.r = 3;
  p.a = {1, 0.5, 0.2, 0.3, 1, 0.1, 0.7, 0.4, 1};
  const auto model = skt_model(p);
  const SampleSet s = box_samples(Box::cube(3, 0.0, 10.0), 200);
  for (std::size_t n = 0; n < s.size(); ++n) {
    const std::vector<double> u(s[n].begin(), s[n].end());
    const oracle::MatFn P = [&](const std::vector<double>& v) {
      std::vector<double> out(3);
      model->potential(v, out);
      return out;
    };
    const auto a = eval_A(*model, u);
    for (int j = 0; j < 3; ++j) {
      auto up = u, um = u;
      const double h = 1e-5 * std::max(1.0, std::abs(u[j]));
      up[j] += h;
      um[j] -= h;
      const auto pp = P(up), pm = P(um);
      for (int i = 0; i < 3; ++i) {
        const double fd = (pp[i] - pm[i]) / (2 * h);
        EXPECT_LE(std::abs(fd - a[i * 3 + j]), 1e-5 * std::max(1.0, std::abs(a[i * 3 + j])));
      }
    }
    // mixed partials of P: d a_ij / d u_k = d a_ik / d u_j
    std::vector<double> da(27);
    model->diffusion_grad(u, da);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(da[(i * 3 + j) * 3 + k], da[(i * 3 + k) * 3 + j], 1e-12);
  }
}

TEST(SKT, ZeroCrossDiffusionIsHeat) {
  SKTParams p;
  p.m = 2;
  p.d = {2, 0.5};
  const auto model = skt_model(p);
  const std::vector<double> u{3.0, 7.0};
  const auto a = eval_A(*model, u);
  EXPECT_EQ(a, (std::vector<double>{2, 0, 0, 0.5}));
  EXPECT_DOUBLE_EQ(model->lambda(u), 0.5);
  EXPECT_EQ(model->traits().name, "heat");
  const std::vector<double> du{1, 2, -3, 4}, ut{0.5, -0.25};
  EXPECT_EQ(excess_density(*model, u, du, ut), 0.0);
}

TEST(SKT, RejectsBadCoefficients) {
  SKTParams p;
  p.m = 2;
  p.d = {1, 0};
  EXPECT_THROW(skt_model(p), ConfigError);
  p.d = {1, 1};
  p.a = {1, -1, 0, 0};
  EXPECT_THROW(skt_model(p), ConfigError);
  p.a = {1, 1, 1};
  EXPECT_THROW(skt_model(p), ConfigError);
  p.a = {};
  p.r = 1;
  EXPECT_THROW(skt_model(p), ConfigError);
}

TEST(Models, EllipticityHoldsOnSamplesAndDirections) {
  const SampleSet dirs3 = unit_directions(3, 100, 1);
  const SampleSet dirs2 = unit_directions(2, 100, 1);
  for (const auto& model : builtins()) {
    const int m = model->m();
    const SampleSet s = box_samples(Box::cube(m, 0.0, 10.0), 10000, 2);
    const SampleSet& dirs = m == 3 ? dirs3 : dirs2;
    std::vector<double> a(m * m), az(m);
    for (std::size_t n = 0; n < s.size(); ++n) {
      model->diffusion(s[n], a);
      const double lam = model->lambda(s[n]);
      ASSERT_GT(lam, 0.0);
      for (std::size_t z = 0; z < dirs.size(); ++z) {
        matvec(a, m, dirs[z], az);
        double q = 0.0;
        for (int i = 0; i < m; ++i) q += az[i] * dirs[z][i];
        ASSERT_GE(q, lam * (1 - 1e-12)) << model->traits().name;
      }
    }
  }
}

TEST(Models, LambdaGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(0.1, 10.0);
  for (const auto& model : builtins()) {
    const int m = model->m();
    for (int t = 0; t < 50; ++t) {
      std::vector<double> u(m), g(m);
      for (double& v : u) v = d(rng);
      model->lambda_grad(u, g);
      for (int k = 0; k < m; ++k) {
        auto up = u, um = u;
        const double h = 1e-6;
        up[k] += h;
        um[k] -= h;
        const double fd = (model->lambda(up) - model->lambda(um)) / (2 * h);
        EXPECT_LE(std::abs(fd - g[k]), 1e-5 * std::max(1.0, std::abs(g[k]))) << model->traits().name;
      }
    }
  }
}

TEST(Models, AnalyticDiffusionGradMatchesFiniteDifferences) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(0.0, 5.0);
  for (const auto& model : builtins()) {
    const int m = model->m();
    std::vector<double> u(m), da(m * m * m);
    for (double& v : u) v = d(rng);
    model->diffusion_grad(u, da);
    const auto fd = oracle::fd_jacobian([&](const std::vector<double>& v) { return eval_A(*model, v); }, u);
    for (std::size_t k = 0; k < da.size(); ++k) EXPECT_NEAR(da[k], fd[k], 1e-6 * std::max(1.0, std::abs(da[k])));
  }
}

TEST(Pyramid, TwoSpeciesTable) {
  PyramidTable t;
  t.m = 2;
  t.a = {Polynomial::constant(2, 1) + Polynomial::variable(2, 0), Polynomial(2),
         Polynomial::monomial(2, 1.0, {1, 1}), Polynomial::constant(2, 1) + Polynomial::variable(2, 1)};
  t.f = {Polynomial(2), Polynomial(2)};
  t.k = 1;
  const auto model = pyramid_model(t);
  EXPECT_EQ(model->structure(), StructureTag::triangular);
  // a12 = 0 and |d a21 / d u2| = u1 <= 10 (1 + |u|)^{1/2} on a 100 x 100 grid of |u| <= 10.
  std::vector<double> da(8);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) {
      const std::vector<double> u{10.0 * i / 99, 10.0 * j / 99};
      if (std::hypot(u[0], u[1]) > 10.0) continue;
      EXPECT_EQ(eval_A(*model, u)[1], 0.0);
      model->diffusion_grad(u, da);
      EXPECT_NEAR(da[(1 * 2 + 0) * 2 + 1], u[0], 1e-12);
      worst = std::max(worst, std::abs(da[(1 * 2 + 0) * 2 + 1]) / std::sqrt(1 + std::hypot(u[0], u[1])));
    }
  EXPECT_LE(worst, 10.0);
}

TEST(Pyramid, RejectsUpperEntriesAndLaterDependence) {
  PyramidTable t;
  t.m = 2;
  t.a = {Polynomial::constant(2, 1), Polynomial::variable(2, 0), Polynomial(2), Polynomial::constant(2, 1)};
  t.f = {Polynomial(2), Polynomial(2)};
  EXPECT_THROW(pyramid_model(t), ConfigError);
  t.a[1] = Polynomial(2);
  t.a[0] = Polynomial::constant(2, 1) + Polynomial::variable(2, 1);
  EXPECT_THROW(pyramid_model(t), ConfigError);
  t.a[0] = Polynomial::constant(2, 1);
  t.f[0] = Polynomial::variable(2, 1);
  EXPECT_THROW(pyramid_model(t), ConfigError);
}

TEST(Pyramid, DiagonalChainIsTriangular) {
  PyramidTable t;
  t.m = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.a.push_back(i == j ? Polynomial::constant(3, 1) + Polynomial::variable(3, i) : Polynomial(3));
  t.f.assign(3, Polynomial(3));
  t.box = Box::cube(3, 0, 10);
  const auto model = pyramid_model(t);
  const std::vector<double> u{1, 2, 3};
  EXPECT_EQ(eval_A(*model, u), (std::vector<double>{2, 0, 0, 0, 3, 0, 0, 0, 4}));
}

TEST(Pyramid, SingleEquationHasNoExcess) {
  FoodChainParams fc;
  fc.m = 1;
  fc.s = {2.0};
  fc.box = Box::cube(1, 0, 10);
  const auto model = pyramid_model(food_chain_table(fc));
  const std::vector<double> u{1.7}, du{0.3, -2.0}, ut{4.0};
  EXPECT_EQ(excess_density(*model, u, du, ut), 0.0);
}

TEST(FoodChain, Validation) {
  FoodChainParams fc;
  fc.m = 2;
  fc.beta = {0, 1, 0, 0};
  EXPECT_THROW(food_chain_table(fc), ConfigError);
  fc.beta = {};
  fc.c = {1, 1, 0, 1};
  EXPECT_THROW(food_chain_table(fc), ConfigError);
  fc.c = {};
  fc.d = {1, -1};
  EXPECT_THROW(food_chain_table(fc), ConfigError);
}

TEST(FoodChain, RowDependsOnOwnSpeciesOnly) {
  FoodChainParams fc;
  fc.s = {0.5, 0.5, 0.5};
  fc.beta = {0, 0, 0, 0.1, 0, 0, 0.1, 0.1, 0};
  const auto model = pyramid_model(food_chain_table(fc));
  std::vector<double> da(27);
  model->diffusion_grad(std::vector<double>{1, 2, 3}, da);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (k != i) EXPECT_EQ(da[(i * 3 + j) * 3 + k], 0.0);
}

TEST(PowerLaw, FocusingFamily) {
  PowerLawParams p;
  p.k = 0;
  p.K = 3;
  const auto model = power_law_model(p);
  const std::vector<double> u{2.0};
  std::vector<double> f(1), a(1);
  model->reaction(u, f);
  model->diffusion(u, a);
  EXPECT_DOUBLE_EQ(f[0], 8.0);
  EXPECT_DOUBLE_EQ(a[0], 1.0);
  EXPECT_TRUE(model->has_potential());
  EXPECT_EQ(model->structure(), StructureTag::gradient);
}

TEST(PowerLaw, DriftEntersFullReaction) {
  PowerLawParams p;
  p.m = 2;
  p.k = 2;
  p.eps0 = 0;
  p.drift = 0.5;
  const auto model = power_law_model(p);
  const std::vector<double> u{1.0, 1.0}, du{2.0, 7.0, -1.0, 3.0};
  std::vector<double> out(2);
  model->full_reaction(u, du, out);
  const double s = 0.5 * std::sqrt(model->lambda(u));
  EXPECT_NEAR(out[0], s * 2.0, 1e-14);
  EXPECT_NEAR(out[1], s * -1.0, 1e-14);
}

TEST(PowerLaw, RejectsBadExponents) {
  PowerLawParams p;
  p.k = -1;
  EXPECT_THROW(power_law_model(p), ConfigError);
  p.k = 1;
  p.K = 0.5;
  EXPECT_THROW(power_law_model(p), ConfigError);
}
