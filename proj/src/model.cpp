#include "crossdiff/model.hpp"

#include <cmath>

#include "crossdiff/error.hpp"
#include "crossdiff/linalg.hpp"

namespace crossdiff {
namespace {

constexpr double kFdStep = 1e-6;

double radial_power(std::span<const double> u, double p) {
  const double r = euclidean_norm(u);
  return r == 0.0 ? 0.0 : std::pow(r, p);
}

// d/du |u|^p = p |u|^{p-2} u, taken as 0 at the origin.
void radial_power_grad(std::span<const double> u, double p, std::span<double> out) {
  const double r = euclidean_norm(u);
  const double s = r == 0.0 ? 0.0 : p * std::pow(r, p - 2.0);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = s * u[i];
}

}  // namespace

const char* to_string(StructureTag tag) noexcept {
  switch (tag) {
    case StructureTag::generic: return "generic";
    case StructureTag::gradient: return "gradient";
    case StructureTag::triangular: return "triangular";
  }
  return "generic";
}

Box Box::cube(int dims, double lo, double hi) {
  if (!(hi > lo)) throw ConfigError("box: need box_hi > box_lo");
  return Box{std::vector<double>(dims, lo), std::vector<double>(dims, hi)};
}

Box Box::lower_half() const {
  Box b = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) b.hi[i] = lo[i] + 0.5 * (hi[i] - lo[i]);
  return b;
}

Model::Model(int m, ModelTraits traits) : m_(m), traits_(std::move(traits)) {
  if (m < 1) throw ConfigError("model.m: must be >= 1");
}

void Model::diffusion_grad(std::span<const double> u, std::span<double> da) const {
  const int m = m_;
  std::vector<double> up(u.begin(), u.end()), um(u.begin(), u.end());
  std::vector<double> ap(m * m), am(m * m);
  for (int k = 0; k < m; ++k) {
    up[k] = u[k] + kFdStep;
    um[k] = u[k] - kFdStep;
    diffusion(up, ap);
    diffusion(um, am);
    for (int ij = 0; ij < m * m; ++ij) da[ij * m + k] = (ap[ij] - am[ij]) / (2.0 * kFdStep);
    up[k] = u[k];
    um[k] = u[k];
  }
}

void Model::reaction_grad(std::span<const double> u, std::span<double> df) const {
  const int m = m_;
  std::vector<double> up(u.begin(), u.end()), um(u.begin(), u.end());
  std::vector<double> fp(m), fm(m);
  for (int j = 0; j < m; ++j) {
    up[j] = u[j] + kFdStep;
    um[j] = u[j] - kFdStep;
    reaction(up, fp);
    reaction(um, fm);
    for (int i = 0; i < m; ++i) df[i * m + j] = (fp[i] - fm[i]) / (2.0 * kFdStep);
    up[j] = u[j];
    um[j] = u[j];
  }
}

void Model::drift(std::span<const double>, std::span<double> b) const {
  for (double& v : b) v = 0.0;
}

void Model::full_reaction(std::span<const double> u, std::span<const double> du, std::span<double> out) const {
  reaction(u, out);
  if (!has_drift()) return;
  std::vector<double> b(static_cast<std::size_t>(m_) * m_ * 2);
  drift(u, b);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int axis = 0; axis < 2; ++axis) out[i] += b[(i * m_ + j) * 2 + axis] * du[2 * j + axis];
}

void Model::potential(std::span<const double>, std::span<double>) const {
  throw ConfigError("model '" + traits_.name + "' has no potential");
}

double Model::energy_F(std::span<const double> u) const { return radial_power(u, 0.5 * (traits_.k + 2.0)); }

void Model::energy_F_grad(std::span<const double> u, std::span<double> out) const {
  radial_power_grad(u, 0.5 * (traits_.k + 2.0), out);
}

double Model::energy_P(std::span<const double> u) const { return radial_power(u, traits_.k + 1.0); }

void Model::energy_P_grad(std::span<const double> u, std::span<double> out) const {
  radial_power_grad(u, traits_.k + 1.0, out);
}

DiffusionFn Model::diffusion_fn() const {
  return [this](std::span<const double> u, std::span<double> a) { diffusion(u, a); };
}

}  // namespace crossdiff
