#ifndef CROSSDIFF_DIAGNOSTICS_HPP
#define CROSSDIFF_DIAGNOSTICS_HPP

// Functionals monitored along a trajectory: energies, Sobolev proxies, the
// excess, interpolation-inequality ratios and the Gronwall comparison bound.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossdiff/grid.hpp"
#include "crossdiff/model.hpp"
#include "crossdiff/solver.hpp"

namespace crossdiff {

struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double l2 = 0.0;             // ∫|u|^2
  double energy_lambda = 0.0;  // ∫λ(u)|Du|^2
  double flux_energy = 0.0;    // y(t) = ∫|A(u)Du|^2
  double w12 = 0.0;            // ∫|u|^2 + ∫|Du|^2
  double w1p4 = 0.0;           // (∫|u|^4 + |Du|^4)^{1/4}
  std::optional<double> excess_int;
  std::optional<double> I1, I2, I3;  // triangular models, k0 = m
  std::optional<double> excess_expanded;  // ∫ of the pointwise expansion, k0 = m
  double phi_du4 = 0.0;   // ∫|λ_u|^2/λ |Du|^4
  double lam2_du4 = 0.0;  // ∫λ^2|Du|^4
  double lam2_du2 = 0.0;  // ∫λ^2|Du|^2
  double lady_ratio = 0.0;
  double poincare_ratio = 0.0;
  std::optional<double> gronwall_bound;
  bool excess_fd = false;  // A_u came from finite differences
};

/// Pointwise excess from the expansion
///   sum_{i,l,k,j < k0} a_il ∂_k a_ij [Du_k (u_j)_t - (u_k)_t Du_j]·Du_l
/// with du[2c + axis]. k0 = 0 means all m components.
double excess_density(const Model& model, std::span<const double> u, std::span<const double> du,
                      std::span<const double> ut, int k0 = 0);

struct PyramidTerms {
  double I1 = 0.0;
  double I2 = 0.0;
  double I3 = 0.0;
  double sum() const noexcept { return I1 + I2 + I3; }
};

/// The three partial sums of the subsystem excess for equation k0
/// (1-based, 2 <= k0 <= m) at one point. Their sum equals
/// excess_density(..., k0) whenever row k0 of A depends on u_{k0} alone among
/// u_1..u_{k0}.
PyramidTerms excess_terms_density(const Model& model, std::span<const double> u, std::span<const double> du,
                                  std::span<const double> ut, int k0);

struct ExcessField {
  std::vector<double> density;
  double integral = 0.0;
  bool finite_difference = false;
};

/// Expansion evaluated at every node with the discrete gradient of u.
ExcessField excess(const Model& model, const Field& u, const Field& ut, int k0 = 0);

/// ⟨A(u)Du, D[A(u)] u_t - A(u)_t Du⟩ with D[A(u)] the discrete gradient of
/// the node field A(u(x)) and A_t = A_u u_t. Consistent with the expansion
/// up to O(h^2), so it vanishes in the limit for gradient-structure models.
ExcessField excess_direct(const Model& model, const Field& u, const Field& ut);

/// Integrated I1, I2, I3 for equation k0. Throws ConfigError unless the
/// model is triangular and 2 <= k0 <= m.
PyramidTerms excess_terms_pyramid(const Model& model, const Field& u, const Field& ut, int k0);

/// B_n = alpha_n + C S_n with S_0 = 0,
/// S_n = S_{n-1} exp(beta_n dt_n) + alpha_n beta_n dt_n. Throws InputError
/// unless times strictly increase and all lengths agree.
std::vector<double> gronwall_bound(std::span<const double> times, std::span<const double> alpha,
                                   std::span<const double> beta, double C);

/// (∫U^4)^{1/2} / ((∫U^2)^{1/2} (∫|DU|^2)^{1/2}); 0 for U ≡ 0.
double lady_check(const Grid2D& grid, std::span<const double> U);
/// ∫U^2 / (d(Ω)^2 ∫|DU|^2); 0 for U ≡ 0.
double poincare_check(const Grid2D& grid, std::span<const double> U);
/// ∫U^2V^2 / (∫|DU|^2 ∫|DV|^2); 0 when either gradient vanishes.
double product_constant(const Grid2D& grid, std::span<const double> U, std::span<const double> V);

struct MonitorOptions {
  int diag_every = 1;
  int excess_every = 1;  // in units of diagnostic records; 0 disables the excess
  double gronwall_c = 1.0;
  double c_eps = 1.0;
  double c_excess = 1.0;
};

/// Evaluates one record at a state (excess and Gronwall fields left empty).
DiagnosticsRecord evaluate(const Model& model, const Field& u, bool with_excess);

/// Builds the record stream of a run. Plug observer() into run().
class Monitor {
 public:
  Monitor(const Model& model, MonitorOptions opts);

  StepObserver observer();
  void observe(const StepEvent& ev);

  const std::vector<DiagnosticsRecord>& records() const noexcept { return records_; }
  double g_max() const noexcept { return g_max_; }
  double max_lady_ratio() const noexcept { return max_lady_; }
  double max_poincare_ratio() const noexcept { return max_poincare_; }

 private:
  const Model& model_;
  MonitorOptions opts_;
  std::vector<DiagnosticsRecord> records_;
  long last_step_ = -1;
  double alpha_ = 0.0;
  double s_ = 0.0;
  double g_max_ = 0.0;
  double max_lady_ = 0.0;
  double max_poincare_ = 0.0;
};

std::string diagnostics_csv_header();
std::string to_csv_row(const DiagnosticsRecord& r);
std::string to_csv(const std::vector<DiagnosticsRecord>& records);

}  // namespace crossdiff

#endif  // CROSSDIFF_DIAGNOSTICS_HPP
