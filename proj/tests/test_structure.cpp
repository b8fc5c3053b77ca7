#include <gtest/gtest.h>

#include <cmath>

#include "crossdiff/error.hpp"
#include "crossdiff/linalg.hpp"
#include "crossdiff/models.hpp"
#include "crossdiff/structure.hpp"
#include "oracles.hpp"

using namespace crossdiff;

namespace {

// A = lambda I with lambda = exp(|u|^2); |lambda_u| / lambda = 2|u|.
class ExpModel : public Model {
 public:
  explicit ExpModel(int m) : Model(m, ModelTraits{"exp", StructureTag::gradient, 0, 1, 0}) {}
  void diffusion(std::span<const double> u, std::span<double> a) const override {
    const int n = m();
    std::fill(a.begin(), a.begin() + n * n, 0.0);
    for (int i = 0; i < n; ++i) a[i * n + i] = lambda(u);
  }
  double lambda(std::span<const double> u) const override {
    double r2 = 0.0;
    for (double v : u) r2 += v * v;
    return std::exp(r2);
  }
  void lambda_grad(std::span<const double> u, std::span<double> out) const override {
    const double l = lambda(u);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = 2 * u[i] * l;
  }
  void reaction(std::span<const double>, std::span<double> f) const override {
    std::fill(f.begin(), f.end(), 0.0);
  }
};

// Wraps a model and overstates its lambda by a factor.
class InflatedLambda : public Model {
 public:
  InflatedLambda(const Model& base, double factor) : Model(base.m(), base.traits()), base_(base), factor_(factor) {}
  void diffusion(std::span<const double> u, std::span<double> a) const override { base_.diffusion(u, a); }
  double lambda(std::span<const double> u) const override { return factor_ * base_.lambda(u); }
  void lambda_grad(std::span<const double> u, std::span<double> out) const override {
    base_.lambda_grad(u, out);
    for (double& v : out) v *= factor_;
  }
  void reaction(std::span<const double> u, std::span<double> f) const override { base_.reaction(u, f); }

 private:
  const Model& base_;
  double factor_;
};

std::unique_ptr<PolynomialModel> classical_skt() {
  SKTParams p;
  p.d = {1, 1};
  p.a = {1, 1, 1, 1};
  return skt_model(p);
}

CheckOptions opts_for(int m, double hi = 10.0, int n = 1024) {
  CheckOptions o;
  o.box = Box::cube(m, 0.0, hi);
  o.n_samples = n;
  o.n_dirs = 50;
  return o;
}

const CertReport& find(const std::vector<CertReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.condition == id) return r;
  throw std::runtime_error("no report " + id);
}

}  // namespace

TEST(Structure, HeatIsCertifiedEverywhere) {
  SKTParams p;
  p.m = 1;
  p.d = {1};
  p.box = Box::cube(1, 0, 10);
  const auto model = skt_model(p);
  const auto reports = check_all(*model, opts_for(1));
  for (const auto& r : reports) EXPECT_EQ(r.verdict, Verdict::certified) << r.condition;
  const auto& a1 = find(reports, "A1");
  EXPECT_DOUBLE_EQ(a1.constant("lambda0"), 1.0);
  EXPECT_DOUBLE_EQ(a1.constant("C"), 1.0);
}

TEST(Structure, ClassicalSKTCertified) {
  const auto model = classical_skt();
  const auto reports = check_all(*model, opts_for(2));
  for (const auto& r : reports) EXPECT_EQ(r.verdict, Verdict::certified) << r.condition;
  EXPECT_GE(find(reports, "A1").constant("ellipticity"), 1.0 - 1e-12);
}

TEST(Structure, ExpLambdaWithDeclaredConstants) {
  ExpModel model(2);
  auto o = opts_for(2);
  o.declared["Fghyp"] = 30.0;
  auto r = find(check_A(model, o), "Fghyp");
  EXPECT_EQ(r.verdict, Verdict::certified);
  // 2|u| peaks at the far corner (10, 10)
  EXPECT_NEAR(r.constant("C"), 2 * std::sqrt(200.0), 1e-9);
  o.declared["Fghyp"] = 20.0;
  r = find(check_A(model, o), "Fghyp");
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_NEAR(ratio_Fghyp(model, r.witness), r.witness_ratio, 1e-12);
}

TEST(Structure, ExpLambdaOneComponent) {
  ExpModel model(1);
  auto o = opts_for(1);
  o.declared["Fghyp"] = 20.0;
  EXPECT_EQ(find(check_A(model, o), "Fghyp").verdict, Verdict::certified);
  o.declared["Fghyp"] = 19.9;
  const auto r = find(check_A(model, o), "Fghyp");
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_DOUBLE_EQ(r.witness[0], 10.0);
}

TEST(Structure, ExpLambdaGrowthTestWithoutDeclaration) {
  // 2|u| doubles from the half box to the full box, beyond 2^{1/2}
  ExpModel model(1);
  EXPECT_EQ(find(check_A(model, opts_for(1)), "Fghyp").verdict, Verdict::violated);
}

class PowerLawMatched : public ::testing::TestWithParam<int> {};

TEST_P(PowerLawMatched, KEqualsKPlusOneCertified) {
  for (int m : {1, 2}) {
    PowerLawParams p;
    p.m = m;
    p.k = GetParam();
    p.K = p.k + 1;
    const auto model = power_law_model(p);
    const auto reports = check_all(*model, opts_for(m));
    for (const auto& r : reports) EXPECT_EQ(r.verdict, Verdict::certified) << r.condition << " m=" << m;
  }
}

INSTANTIATE_TEST_SUITE_P(Structure, PowerLawMatched, ::testing::Values(1, 2, 3));

TEST(Structure, SuperlinearReactionViolatedWithReproducibleWitness) {
  PowerLawParams p;
  p.m = 2;
  p.k = 1;
  p.K = 4;
  const auto model = power_law_model(p);
  const auto reports = check_F(*model, opts_for(2));
  const auto& r = find(reports, "fuuu");
  ASSERT_EQ(r.verdict, Verdict::violated);
  EXPECT_NEAR(ratio_fuuu(*model, r.witness), r.witness_ratio, 1e-12 * r.witness_ratio);
  EXPECT_GT(r.witness_ratio, r.bound);
  // the ratio grows outward: witness at the far corner
  EXPECT_DOUBLE_EQ(r.witness[0], 10.0);
  EXPECT_DOUBLE_EQ(r.witness[1], 10.0);
  EXPECT_EQ(find(reports, "fu").verdict, Verdict::violated);
}

TEST(Structure, SampledConstantsMatchDenseScan) {
  const auto model = classical_skt();
  const auto reports = check_A(*model, opts_for(2, 10.0, 4096));
  const auto fg = [&](const std::vector<double>& u) {
    std::vector<double> g(2);
    model->lambda_grad(u, g);
    return std::hypot(g[0], g[1]) / model->lambda(u);
  };
  const auto anorm = [&](const std::vector<double>& u) {
    std::vector<double> a(4);
    model->diffusion(u, a);
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]) / model->lambda(u);
  };
  const double dense_fg = oracle::dense_max(2, 0, 10, 200, fg);
  const double dense_an = oracle::dense_max(2, 0, 10, 200, anorm);
  EXPECT_LE(std::abs(find(reports, "Fghyp").constant("C") - dense_fg), 0.05 * dense_fg);
  EXPECT_LE(std::abs(find(reports, "A1").constant("C") - dense_an), 0.05 * dense_an);

  PowerLawParams p;
  p.m = 2;
  p.k = 1;
  p.K = 4;
  const auto pl = power_law_model(p);
  const double sampled = find(check_F(*pl, opts_for(2, 10.0, 4096)), "fuuu").constant("C");
  const double dense = oracle::dense_max(2, 0, 10, 200, [&](const std::vector<double>& u) { return ratio_fuuu(*pl, u); });
  EXPECT_LE(std::abs(sampled - dense), 0.05 * dense);
}

TEST(Structure, A2MatchesClosedFormSingularValues) {
  const auto model = classical_skt();
  const auto r = check_A2(*model, opts_for(2, 10.0, 1000));
  EXPECT_EQ(r.verdict, Verdict::certified);
  EXPECT_GE(r.constant("min_ratio"), 1.0 - 1e-12);
  // |A zeta| / |zeta| >= sigma_min(A) >= lambda, checked in closed form on a grid
  const double worst = -oracle::dense_max(2, 0, 10, 50, [&](const std::vector<double>& u) {
    std::vector<double> a(4);
    model->diffusion(u, a);
    return -oracle::smallest_singular2(a[0], a[1], a[2], a[3]) / model->lambda(u);
  });
  EXPECT_GE(worst, 1.0 - 1e-12);
}

TEST(Structure, A2ViolatedByInflatedLambda) {
  const auto base = classical_skt();
  InflatedLambda model(*base, 4.0);
  const auto r = check_A2(model, opts_for(2, 10.0, 256));
  ASSERT_EQ(r.verdict, Verdict::violated);
  ASSERT_EQ(r.witness_dir.size(), 2u);
  EXPECT_NEAR(ratio_A2(model, r.witness, r.witness_dir), r.witness_ratio, 1e-12);
  EXPECT_LT(r.witness_ratio, 1.0);
}

TEST(Structure, TriangularCouplingCertifiedForFoodChain) {
  FoodChainParams fc;
  fc.s = {0.5, 0.5, 0.5};
  fc.beta = {0, 0, 0, 0.1, 0, 0, 0.1, 0.1, 0};
  const auto model = pyramid_model(food_chain_table(fc));
  const auto r = check_ak0(*model, opts_for(3, 10.0, 512));
  EXPECT_EQ(r.verdict, Verdict::certified);
  EXPECT_NO_THROW(r.constant("C_21"));
  EXPECT_NO_THROW(r.constant("C_32"));
}

TEST(Structure, TriangularCouplingViolatedForCubicEntry) {
  PyramidTable t;
  t.m = 2;
  t.a = {Polynomial::constant(2, 1), Polynomial(2), Polynomial::monomial(2, 1.0, {0, 3}),
         Polynomial::constant(2, 1)};
  t.f = {Polynomial(2), Polynomial(2)};
  t.k = 2;
  const auto model = pyramid_model(t);
  const auto r = check_ak0(*model, opts_for(2));
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_DOUBLE_EQ(r.witness[1], 10.0);
  EXPECT_NEAR(ratio_ak0(*model, r.witness), r.witness_ratio, 1e-12 * r.witness_ratio);
}

TEST(Structure, AkZeroRejectsNonTriangular) {
  const auto model = classical_skt();
  EXPECT_THROW(check_ak0(*model, opts_for(2)), ConfigError);
}

TEST(Structure, BoxDimensionMustMatch) {
  const auto model = classical_skt();
  EXPECT_THROW(check_A(*model, opts_for(3)), ConfigError);
}

TEST(Structure, DeterministicUnderSeed) {
  const auto model = classical_skt();
  auto o = opts_for(2, 10.0, 512);
  o.seed = 17;
  EXPECT_EQ(to_csv(check_all(*model, o)), to_csv(check_all(*model, o)));
}

TEST(Structure, ConstantsNonDecreasingInBox) {
  for (int k : {1, 2}) {
    PowerLawParams p;
    p.m = 2;
    p.k = k;
    p.K = k + 1;
    const auto model = power_law_model(p);
    const auto small = check_all(*model, opts_for(2, 5.0));
    const auto large = check_all(*model, opts_for(2, 10.0));
    ASSERT_EQ(small.size(), large.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      if (small[i].condition == "A2") continue;
      // the large box re-uses the small box's samples but not those of its lower half
      EXPECT_LE(small[i].constant("C"), large[i].constant("C") * (1 + 1e-4)) << small[i].condition;
    }
  }
}

TEST(Structure, CsvRowShape) {
  const auto model = classical_skt();
  const auto reports = check_all(*model, opts_for(2, 10.0, 64));
  const std::string csv = to_csv(reports);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), cert_csv_header());
  const std::string row = to_csv_row(find(reports, "A2"));
  EXPECT_EQ(row.rfind("A2,certified,min_ratio=", 0), 0u);
  EXPECT_NE(row.find("[0;10]x[0;10]"), std::string::npos);
  EXPECT_NE(row.find('|'), std::string::npos);
}

TEST(Structure, InfiniteRatioIsViolated) {
  // constant lambda with a state-dependent A: |A_u| <= C |lambda_u| = 0 cannot hold
  PyramidTable t;
  t.m = 2;
  t.a = {Polynomial::constant(2, 1), Polynomial(2), Polynomial::constant(2, 0.1) * Polynomial::variable(2, 1),
         Polynomial::constant(2, 2)};
  t.f = {Polynomial(2), Polynomial(2)};
  t.k = 0;
  const auto model = pyramid_model(t);
  const auto r = find(check_A(*model, opts_for(2, 10.0, 128)), "Au");
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_TRUE(std::isinf(r.witness_ratio));
}
