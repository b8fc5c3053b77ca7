#ifndef CROSSDIFF_MODELS_HPP
#define CROSSDIFF_MODELS_HPP

#include <memory>
#include <vector>

#include "crossdiff/model.hpp"
#include "crossdiff/polynomial.hpp"

namespace crossdiff {

/// lambda(u) = lambda0 + c((1 + |u|_1)^k - 1). Equivalent to (1+|u|)^k and,
/// unlike the Euclidean form, has a non-vanishing gradient at u = 0 when
/// c > 0, so |A_u| <= C|lambda_u| stays meaningful at the origin. The
/// gradient uses sign(0) = +1 (the one-sided derivative into the positive
/// orthant).
struct LambdaLaw {
  double lambda0 = 1.0;
  double c = 0.0;
  double k = 0.0;

  double operator()(std::span<const double> u) const noexcept;
  void grad(std::span<const double> u, std::span<double> out) const noexcept;
};

/// Fits a LambdaLaw below the smallest eigenvalue of sym(A) on `box`:
/// lambda0 is the sampled minimum and c is 0.9 times the largest slope that
/// keeps lambda(u) <= lambda_min_sym(A(u)) at every sample. When A is not
/// elliptic somewhere on the box lambda0 falls back to 1e-3; the structure
/// checks then report the violation.
LambdaLaw calibrate_lambda(const DiffusionFn& diffusion, int m, const Box& box, double k, int n_samples);

/// Model whose A, f and (optionally) potential are polynomials, with exact
/// polynomial derivatives.
class PolynomialModel : public Model {
 public:
  struct Spec {
    int m = 1;
    std::vector<Polynomial> a;          // m*m, row-major
    std::vector<Polynomial> f;          // m
    std::vector<Polynomial> potential;  // empty or m
    LambdaLaw lambda;
    ModelTraits traits;
  };

  explicit PolynomialModel(Spec spec);

  void diffusion(std::span<const double> u, std::span<double> a) const override;
  double lambda(std::span<const double> u) const override { return lambda_(u); }
  void lambda_grad(std::span<const double> u, std::span<double> out) const override { lambda_.grad(u, out); }
  void reaction(std::span<const double> u, std::span<double> f) const override;
  void diffusion_grad(std::span<const double> u, std::span<double> da) const override;
  bool has_analytic_diffusion_grad() const noexcept override { return true; }
  void reaction_grad(std::span<const double> u, std::span<double> df) const override;
  bool has_potential() const noexcept override { return !potential_.empty(); }
  void potential(std::span<const double> u, std::span<double> out) const override;

  const Polynomial& a(int i, int j) const { return a_[i * m() + j]; }
  const Polynomial& f(int i) const { return f_[i]; }
  const LambdaLaw& lambda_law() const noexcept { return lambda_; }

 private:
  std::vector<Polynomial> a_, da_, f_, df_, potential_;
  LambdaLaw lambda_;
};

/// Generalized SKT: P_i(u) = u_i (d_i + sum_j a_ij u_j^{r-1}), A = dP/du,
/// Lotka-Volterra reaction f_i = u_i (b_i - sum_j c_ij u_j).
struct SKTParams {
  int m = 2;
  std::vector<double> d;  // m, > 0
  std::vector<double> a;  // m*m, >= 0
  int r = 2;              // >= 2
  std::vector<double> b;  // m (empty = 0)
  std::vector<double> c;  // m*m, >= 0 (empty = 0)
  Box box = Box::cube(2, 0.0, 10.0);  // lambda calibration box
  int calibration_samples = 2048;
};

std::unique_ptr<PolynomialModel> skt_model(const SKTParams& params);

/// Lower-triangular ("food pyramid") system given by polynomial entries.
struct PyramidTable {
  int m = 2;
  std::vector<Polynomial> a;  // m*m row-major; entries above the diagonal must be zero
  std::vector<Polynomial> f;  // m; f_i may only involve u_1..u_i
  double k = 0.0;
  double K = 2.0;
  double eps0 = 0.0;
  Box box = Box::cube(2, 0.0, 10.0);
  int calibration_samples = 2048;
};

std::unique_ptr<PolynomialModel> pyramid_model(const PyramidTable& table);

/// Food chain: a_ii = d_i + s_i u_i, a_ij = beta_ij u_i (j < i), and
/// f_i = u_i (b_i - sum_{j<=i} c_ij u_j). Row i depends on u_i alone.
struct FoodChainParams {
  int m = 3;
  std::vector<double> d;     // m, > 0
  std::vector<double> s;     // m, >= 0 (empty = 0)
  std::vector<double> beta;  // m*m, strictly lower triangular (empty = 0)
  std::vector<double> b;     // m (empty = 0)
  std::vector<double> c;     // m*m, lower triangular (empty = 0)
  Box box = Box::cube(3, 0.0, 10.0);
  int calibration_samples = 2048;
};

PyramidTable food_chain_table(const FoodChainParams& params);

/// Power-law family: A = scale <u>^k I with <u> = sqrt(1 + |u|^2),
/// f = eps0 u |u|^{K-1}, optional drift B(u)Du = drift lambda^{1/2} d_x u.
struct PowerLawParams {
  int m = 1;
  double k = 1.0;
  double K = 2.0;
  double eps0 = 1.0;
  double scale = 1.0;
  double drift = 0.0;
};

class PowerLawModel : public Model {
 public:
  explicit PowerLawModel(const PowerLawParams& params);

  void diffusion(std::span<const double> u, std::span<double> a) const override;
  double lambda(std::span<const double> u) const override;
  void lambda_grad(std::span<const double> u, std::span<double> out) const override;
  void reaction(std::span<const double> u, std::span<double> f) const override;
  void diffusion_grad(std::span<const double> u, std::span<double> da) const override;
  bool has_analytic_diffusion_grad() const noexcept override { return true; }
  void reaction_grad(std::span<const double> u, std::span<double> df) const override;
  bool has_drift() const noexcept override { return params_.drift != 0.0; }
  void drift(std::span<const double> u, std::span<double> b) const override;
  bool has_potential() const noexcept override { return params_.k == 0.0; }
  void potential(std::span<const double> u, std::span<double> out) const override;

 private:
  PowerLawParams params_;
};

std::unique_ptr<PowerLawModel> power_law_model(const PowerLawParams& params);

}  // namespace crossdiff

#endif  // CROSSDIFF_MODELS_HPP
