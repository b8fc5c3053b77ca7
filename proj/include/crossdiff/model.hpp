#ifndef CROSSDIFF_MODEL_HPP
#define CROSSDIFF_MODEL_HPP

// A cross-diffusion model u_t = div(A(u)Du) + f(u) + B(u)Du: the diffusion
// matrix, its ellipticity scalar lambda(u), the reaction, and whatever extra
// structure (potential, energy pair F/P) the model can supply.

#include <span>
#include <string>
#include <vector>

#include "crossdiff/grid.hpp"

namespace crossdiff {

enum class StructureTag { generic, gradient, triangular };

const char* to_string(StructureTag tag) noexcept;

/// Axis-aligned box in state space.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box cube(int dims, double lo, double hi);
  int dims() const noexcept { return static_cast<int>(lo.size()); }
  /// [lo, lo + (hi - lo)/2] per axis.
  Box lower_half() const;
  friend bool operator==(const Box&, const Box&) = default;
};

struct ModelTraits {
  std::string name;
  StructureTag structure = StructureTag::generic;
  double k = 0.0;     // lambda(u) ~ (1+|u|)^k
  double K = 0.0;     // |f(u)| ~ (1+|u|)^K
  double eps0 = 0.0;  // leading reaction coefficient
};

class Model {
 public:
  Model(int m, ModelTraits traits);
  virtual ~Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  int m() const noexcept { return m_; }
  const ModelTraits& traits() const noexcept { return traits_; }
  StructureTag structure() const noexcept { return traits_.structure; }

  /// A(u), row-major m x m.
  virtual void diffusion(std::span<const double> u, std::span<double> a) const = 0;
  virtual double lambda(std::span<const double> u) const = 0;
  virtual void lambda_grad(std::span<const double> u, std::span<double> out) const = 0;
  /// The Du-independent reaction f(u).
  virtual void reaction(std::span<const double> u, std::span<double> f) const = 0;

  /// da[(i*m + j)*m + k] = d a_ij / d u_k. The default is a central difference
  /// with step 1e-6; has_analytic_diffusion_grad() reports which one you get.
  virtual void diffusion_grad(std::span<const double> u, std::span<double> da) const;
  virtual bool has_analytic_diffusion_grad() const noexcept { return false; }

  /// df[i*m + j] = d f_i / d u_j (central difference by default).
  virtual void reaction_grad(std::span<const double> u, std::span<double> df) const;

  /// Drift coefficients b[(i*m + j)*2 + axis] of the gradient-dependent
  /// reaction part B(u)Du. Zero unless overridden.
  virtual bool has_drift() const noexcept { return false; }
  virtual void drift(std::span<const double> u, std::span<double> b) const;

  /// Full reaction f(u) + B(u)Du, with du[2*c + axis].
  void full_reaction(std::span<const double> u, std::span<const double> du, std::span<double> out) const;

  /// The potential P with A = dP/du, when the model has gradient structure.
  virtual bool has_potential() const noexcept { return false; }
  virtual void potential(std::span<const double> u, std::span<double> out) const;

  /// Energy pair of the reaction growth conditions. Defaults to
  /// F = |u|^{(k+2)/2}, P = |u|^{k+1} with k = traits().k.
  virtual bool has_energy_pair() const noexcept { return true; }
  virtual double energy_F(std::span<const double> u) const;
  virtual void energy_F_grad(std::span<const double> u, std::span<double> out) const;
  virtual double energy_P(std::span<const double> u) const;
  virtual void energy_P_grad(std::span<const double> u, std::span<double> out) const;

  /// Adapter for the grid operators.
  DiffusionFn diffusion_fn() const;

 protected:
  void set_traits(ModelTraits traits) { traits_ = std::move(traits); }

 private:
  int m_;
  ModelTraits traits_;
};

}  // namespace crossdiff

#endif  // CROSSDIFF_MODEL_HPP
