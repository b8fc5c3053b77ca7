#include "crossdiff/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crossdiff/error.hpp"
#include "crossdiff/linalg.hpp"
#include "crossdiff/sampling.hpp"

namespace crossdiff {
namespace {

std::string entry_name(const char* what, int i, int j) {
  return std::string(what) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::vector<double> or_zeros(const std::vector<double>& v, std::size_t n, const char* key) {
  if (v.empty()) return std::vector<double>(n, 0.0);
  if (v.size() != n)
    throw ConfigError(std::string("model.") + key + ": expected " + std::to_string(n) + " values, got " +
                      std::to_string(v.size()));
  return v;
}

Box fit_box(const Box& box, int m) {
  if (box.dims() == m) return box;
  if (box.dims() < 1) return Box::cube(m, 0.0, 10.0);
  return Box::cube(m, box.lo[0], box.hi[0]);
}

}  // namespace

double LambdaLaw::operator()(std::span<const double> u) const noexcept {
  if (c == 0.0) return lambda0;
  double l1 = 0.0;
  for (double v : u) l1 += std::abs(v);
  return lambda0 + c * (std::pow(1.0 + l1, k) - 1.0);
}

void LambdaLaw::grad(std::span<const double> u, std::span<double> out) const noexcept {
  if (c == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  double l1 = 0.0;
  for (double v : u) l1 += std::abs(v);
  const double s = c * k * std::pow(1.0 + l1, k - 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] < 0.0 ? -s : s;
}

LambdaLaw calibrate_lambda(const DiffusionFn& diffusion, int m, const Box& box, double k, int n_samples) {
  // Halton points rarely come close to lo, where (1+|u|_1)^k - 1 is linear
  // but lambda_min may grow faster; shrunken copies of each sample toward lo
  // keep the fitted slope honest there.
  const SampleSet base = box_samples(box, n_samples);
  SampleSet samples = base;
  std::vector<double> p(m);
  for (int shrink = 1; shrink <= 10; ++shrink) {
    const double f = std::ldexp(1.0, -shrink);
    for (std::size_t s = 0; s < base.size(); ++s) {
      for (int i = 0; i < m; ++i) p[i] = box.lo[i] + f * (base[s][i] - box.lo[i]);
      samples.push(p);
    }
  }
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  std::vector<double> eig(samples.size());
  double emin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    diffusion(samples[s], a);
    eig[s] = lambda_min_sym(a, m);
    emin = std::min(emin, eig[s]);
  }
  LambdaLaw law;
  law.k = k;
  law.lambda0 = emin > 0.0 ? emin : 1e-3;
  if (emin <= 0.0 || k == 0.0) return law;

  double slope = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    double l1 = 0.0;
    for (double v : samples[s]) l1 += std::abs(v);
    const double g = std::pow(1.0 + l1, k) - 1.0;
    if (g > 0.0) slope = std::min(slope, (eig[s] - law.lambda0) / g);
  }
  law.c = std::isfinite(slope) ? std::max(0.0, 0.9 * slope) : 0.0;
  return law;
}

PolynomialModel::PolynomialModel(Spec spec)
    : Model(spec.m, std::move(spec.traits)),
      a_(std::move(spec.a)),
      f_(std::move(spec.f)),
      potential_(std::move(spec.potential)),
      lambda_(spec.lambda) {
  const int n = m();
  if (static_cast<int>(a_.size()) != n * n) throw ConfigError("polynomial model: need m*m diffusion entries");
  if (static_cast<int>(f_.size()) != n) throw ConfigError("polynomial model: need m reaction entries");
  if (!potential_.empty() && static_cast<int>(potential_.size()) != n)
    throw ConfigError("polynomial model: need m potential entries");
  for (const auto& p : a_)
    if (p.variables() != n) throw ConfigError("polynomial model: entry variable count must equal m");
  da_.reserve(static_cast<std::size_t>(n) * n * n);
  for (const auto& p : a_)
    for (int k = 0; k < n; ++k) da_.push_back(p.derivative(k));
  df_.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& p : f_)
    for (int j = 0; j < n; ++j) df_.push_back(p.derivative(j));
}

void PolynomialModel::diffusion(std::span<const double> u, std::span<double> a) const {
  for (std::size_t k = 0; k < a_.size(); ++k) a[k] = a_[k](u);
}

void PolynomialModel::reaction(std::span<const double> u, std::span<double> f) const {
  for (std::size_t k = 0; k < f_.size(); ++k) f[k] = f_[k](u);
}

void PolynomialModel::diffusion_grad(std::span<const double> u, std::span<double> da) const {
  for (std::size_t k = 0; k < da_.size(); ++k) da[k] = da_[k](u);
}

void PolynomialModel::reaction_grad(std::span<const double> u, std::span<double> df) const {
  for (std::size_t k = 0; k < df_.size(); ++k) df[k] = df_[k](u);
}

void PolynomialModel::potential(std::span<const double> u, std::span<double> out) const {
  if (potential_.empty()) Model::potential(u, out);
  for (std::size_t k = 0; k < potential_.size(); ++k) out[k] = potential_[k](u);
}

std::unique_ptr<PolynomialModel> skt_model(const SKTParams& p) {
  const int m = p.m;
  if (m < 1) throw ConfigError("model.m: must be >= 1");
  if (p.r < 2) throw ConfigError("model.r: must be >= 2");
  const auto d = or_zeros(p.d.empty() ? std::vector<double>(m, 1.0) : p.d, m, "d");
  const auto a = or_zeros(p.a, static_cast<std::size_t>(m) * m, "a");
  const auto b = or_zeros(p.b, m, "b");
  const auto c = or_zeros(p.c, static_cast<std::size_t>(m) * m, "c");
  for (int i = 0; i < m; ++i)
    if (!(d[i] > 0.0)) throw ConfigError("model.d: " + entry_name("d", i, i) + " must be > 0");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (a[i * m + j] < 0.0) throw ConfigError("model.a: " + entry_name("a", i, j) + " must be >= 0");
      if (c[i * m + j] < 0.0) throw ConfigError("model.c: " + entry_name("c", i, j) + " must be >= 0");
    }

  PolynomialModel::Spec spec;
  spec.m = m;
  for (int i = 0; i < m; ++i) {
    Polynomial pi = d[i] * Polynomial::variable(m, i);
    Polynomial fi = b[i] * Polynomial::variable(m, i);
    for (int j = 0; j < m; ++j) {
      std::vector<int> e(m, 0);
      e[i] += 1;
      e[j] += p.r - 1;
      pi.add_term(a[i * m + j], e);
      std::vector<int> q(m, 0);
      q[i] += 1;
      q[j] += 1;
      fi.add_term(-c[i * m + j], q);
    }
    spec.potential.push_back(pi);
    spec.f.push_back(fi);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) spec.a.push_back(spec.potential[i].derivative(j));

  const bool heat = std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
  spec.traits.name = heat ? "heat" : "skt";
  spec.traits.structure = StructureTag::gradient;
  spec.traits.k = heat ? 0.0 : p.r - 1;
  spec.traits.K = 2.0;
  spec.traits.eps0 = *std::max_element(c.begin(), c.end());

  const Box box = fit_box(p.box, m);
  // Calibrate against a throwaway model carrying the final A.
  PolynomialModel probe(spec);
  spec.lambda = calibrate_lambda(probe.diffusion_fn(), m, box, spec.traits.k, p.calibration_samples);
  return std::make_unique<PolynomialModel>(std::move(spec));
}

std::unique_ptr<PolynomialModel> pyramid_model(const PyramidTable& t) {
  const int m = t.m;
  if (m < 1) throw ConfigError("model.m: must be >= 1");
  if (static_cast<int>(t.a.size()) != m * m) throw ConfigError("pyramid: need m*m diffusion entries");
  if (static_cast<int>(t.f.size()) != m) throw ConfigError("pyramid: need m reaction entries");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Polynomial& aij = t.a[i * m + j];
      if (aij.variables() != m) throw ConfigError("pyramid: entry variable count must equal m");
      if (j > i && !aij.is_zero())
        throw ConfigError("pyramid: " + entry_name("a", i, j) + " above the diagonal must vanish");
      for (int l = i + 1; l < m; ++l)
        if (aij.depends_on(l))
          throw ConfigError("pyramid: " + entry_name("a", i, j) + " depends on u" + std::to_string(l + 1));
    }
    for (int l = i + 1; l < m; ++l)
      if (t.f[i].depends_on(l))
        throw ConfigError("pyramid: f" + std::to_string(i + 1) + " depends on u" + std::to_string(l + 1));
  }

  PolynomialModel::Spec spec;
  spec.m = m;
  spec.a = t.a;
  spec.f = t.f;
  spec.traits.name = "pyramid";
  spec.traits.structure = StructureTag::triangular;
  spec.traits.k = t.k;
  spec.traits.K = t.K;
  spec.traits.eps0 = t.eps0;
  PolynomialModel probe(spec);
  spec.lambda = calibrate_lambda(probe.diffusion_fn(), m, fit_box(t.box, m), t.k, t.calibration_samples);
  return std::make_unique<PolynomialModel>(std::move(spec));
}

PyramidTable food_chain_table(const FoodChainParams& p) {
  const int m = p.m;
  if (m < 1) throw ConfigError("model.m: must be >= 1");
  const auto d = or_zeros(p.d.empty() ? std::vector<double>(m, 1.0) : p.d, m, "d");
  const auto s = or_zeros(p.s, m, "s");
  const auto beta = or_zeros(p.beta, static_cast<std::size_t>(m) * m, "beta");
  const auto b = or_zeros(p.b, m, "b");
  const auto c = or_zeros(p.c, static_cast<std::size_t>(m) * m, "c");

  PyramidTable t;
  t.m = m;
  t.box = fit_box(p.box, m);
  t.calibration_samples = p.calibration_samples;
  double eps0 = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!(d[i] > 0.0)) throw ConfigError("model.d: " + entry_name("d", i, i) + " must be > 0");
    if (s[i] < 0.0) throw ConfigError("model.s: " + entry_name("s", i, i) + " must be >= 0");
    Polynomial fi = b[i] * Polynomial::variable(m, i);
    for (int j = 0; j < m; ++j) {
      const double bij = beta[i * m + j];
      const double cij = c[i * m + j];
      if (j >= i && bij != 0.0)
        throw ConfigError("model.beta: " + entry_name("beta", i, j) + " on or above the diagonal must be 0");
      if (j > i && cij != 0.0)
        throw ConfigError("model.c: " + entry_name("c", i, j) + " above the diagonal must be 0");
      if (j < i)
        t.a.push_back(bij * Polynomial::variable(m, i));
      else if (j == i)
        t.a.push_back(Polynomial::constant(m, d[i]) + s[i] * Polynomial::variable(m, i));
      else
        t.a.push_back(Polynomial(m));
      if (j <= i) {
        std::vector<int> q(m, 0);
        q[i] += 1;
        q[j] += 1;
        fi.add_term(-cij, q);
        eps0 = std::max(eps0, std::abs(cij));
      }
    }
    t.f.push_back(fi);
  }
  t.k = 0.0;
  t.K = 2.0;
  t.eps0 = eps0;
  return t;
}

PowerLawModel::PowerLawModel(const PowerLawParams& params)
    : Model(params.m, ModelTraits{"custom_poly",
                                  params.k == 0.0 ? StructureTag::gradient : StructureTag::generic,
                                  params.k, params.K, params.eps0}),
      params_(params) {
  if (params.k < 0.0) throw ConfigError("model.k: must be >= 0");
  if (params.K < 1.0) throw ConfigError("model.K: must be >= 1");
  if (!(params.scale > 0.0)) throw ConfigError("model.scale: must be > 0");
}

double PowerLawModel::lambda(std::span<const double> u) const {
  double r2 = 0.0;
  for (double v : u) r2 += v * v;
  return params_.scale * std::pow(1.0 + r2, 0.5 * params_.k);
}

void PowerLawModel::lambda_grad(std::span<const double> u, std::span<double> out) const {
  double r2 = 0.0;
  for (double v : u) r2 += v * v;
  const double s = params_.scale * params_.k * std::pow(1.0 + r2, 0.5 * params_.k - 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = s * u[i];
}

void PowerLawModel::diffusion(std::span<const double> u, std::span<double> a) const {
  const int m = this->m();
  const double l = lambda(u);
  std::fill(a.begin(), a.begin() + m * m, 0.0);
  for (int i = 0; i < m; ++i) a[i * m + i] = l;
}

void PowerLawModel::diffusion_grad(std::span<const double> u, std::span<double> da) const {
  const int m = this->m();
  std::vector<double> g(m);
  lambda_grad(u, g);
  std::fill(da.begin(), da.begin() + m * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) da[(i * m + i) * m + k] = g[k];
}

void PowerLawModel::reaction(std::span<const double> u, std::span<double> f) const {
  const double r = euclidean_norm(u);
  const double s = params_.K == 1.0 ? params_.eps0 : (r == 0.0 ? 0.0 : params_.eps0 * std::pow(r, params_.K - 1.0));
  for (std::size_t i = 0; i < u.size(); ++i) f[i] = s * u[i];
}

void PowerLawModel::reaction_grad(std::span<const double> u, std::span<double> df) const {
  const int m = this->m();
  const double r = euclidean_norm(u);
  const double K = params_.K;
  const double radial = K == 1.0 ? 1.0 : (r == 0.0 ? 0.0 : std::pow(r, K - 1.0));
  const double cross = (K == 1.0 || r == 0.0) ? 0.0 : (K - 1.0) * std::pow(r, K - 3.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      df[i * m + j] = params_.eps0 * ((i == j ? radial : 0.0) + cross * u[i] * u[j]);
}

void PowerLawModel::drift(std::span<const double> u, std::span<double> b) const {
  const int m = this->m();
  std::fill(b.begin(), b.begin() + m * m * 2, 0.0);
  const double s = params_.drift * std::sqrt(lambda(u));
  for (int i = 0; i < m; ++i) b[(i * m + i) * 2 + 0] = s;
}

void PowerLawModel::potential(std::span<const double> u, std::span<double> out) const {
  if (params_.k != 0.0) Model::potential(u, out);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = params_.scale * u[i];
}

std::unique_ptr<PowerLawModel> power_law_model(const PowerLawParams& params) {
  return std::make_unique<PowerLawModel>(params);
}

}  // namespace crossdiff
