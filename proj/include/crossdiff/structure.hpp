#ifndef CROSSDIFF_STRUCTURE_HPP
#define CROSSDIFF_STRUCTURE_HPP

// Sampled certification of the structural hypotheses on a model: ellipticity
// and growth of A, the reaction growth pair (F, P), the triangular coupling
// bound and the |A zeta| >= lambda |zeta| chain.
//
// Every condition reduces to a ratio r(u) that must stay bounded (or, for
// ellipticity-type conditions, stay >= 1). A bounded-type condition is
// violated when
//   - a declared constant is given and max r exceeds it, or
//   - no constant is declared and the maximum over the box exceeds
//     2^growth_exponent times the maximum over the lower half box, i.e. the
//     sampled constant keeps growing with the box.
// The witness is always the sample attaining the extremal ratio, so a
// violated report reproduces by re-evaluating the ratio at the witness.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crossdiff/model.hpp"

namespace crossdiff {

enum class Verdict { certified, violated };

const char* to_string(Verdict v) noexcept;

struct CertReport {
  std::string condition;
  Verdict verdict = Verdict::certified;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<double> witness;      // state u
  std::vector<double> witness_dir;  // direction zeta, when the condition has one
  double witness_ratio = 0.0;       // ratio at the witness
  double bound = 0.0;               // the bound the witness was compared against
  std::size_t samples = 0;
  Box box;

  /// Looks up a named constant; throws std::out_of_range if absent.
  double constant(const std::string& name) const;
};

struct CheckOptions {
  Box box = Box::cube(1, 0.0, 10.0);
  int n_samples = 4096;
  int n_dirs = 100;
  std::uint64_t seed = 0;
  double growth_exponent = 0.5;
  /// Declared constants by condition id; switches that condition from the
  /// growth test to a fixed bound.
  std::map<std::string, double> declared;
};

/// Absolute tolerance used when comparing a ratio against its bound.
inline constexpr double kCertTolerance = 1e-12;

/// Reports A1 (ellipticity, |A| <= C lambda), Au (|A_u| <= C|lambda_u|) and
/// Fghyp (|lambda_u| <= C lambda).
std::vector<CertReport> check_A(const Model& model, const CheckOptions& opts);

/// Reports dfuu, Pu, fuu, fuuu, fu (|f_u| <= C lambda) and FUDU
/// (|B(u)| <= C lambda^{1/2}). Throws ConfigError if the model has no energy pair.
std::vector<CertReport> check_F(const Model& model, const CheckOptions& opts);

/// |d a_{k0 j} / d u_{k0}| <= C lambda^{1/2} for j < k0. Throws ConfigError
/// for non-triangular models.
CertReport check_ak0(const Model& model, const CheckOptions& opts);

/// |A(u) zeta|^2 >= lambda^2 |zeta|^2 over samples and unit directions.
CertReport check_A2(const Model& model, const CheckOptions& opts);

/// All applicable checks (ak0 only for triangular models).
std::vector<CertReport> check_all(const Model& model, const CheckOptions& opts);

/// Ratio functions behind each condition, exposed so witnesses can be re-evaluated.
double ratio_A_norm(const Model& model, std::span<const double> u);
double ratio_ellipticity(const Model& model, std::span<const double> u);
double ratio_Au(const Model& model, std::span<const double> u);
double ratio_Fghyp(const Model& model, std::span<const double> u);
double ratio_dfuu(const Model& model, std::span<const double> u);
double ratio_Pu(const Model& model, std::span<const double> u);
double ratio_fuu_growth(const Model& model, std::span<const double> u);
double ratio_fuuu(const Model& model, std::span<const double> u);
double ratio_fu(const Model& model, std::span<const double> u);
double ratio_FUDU(const Model& model, std::span<const double> u);
double ratio_ak0(const Model& model, std::span<const double> u);
double ratio_A2(const Model& model, std::span<const double> u, std::span<const double> zeta);

std::string cert_csv_header();
std::string to_csv_row(const CertReport& r);
std::string to_csv(const std::vector<CertReport>& reports);

}  // namespace crossdiff

#endif  // CROSSDIFF_STRUCTURE_HPP
