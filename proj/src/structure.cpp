#include "crossdiff/structure.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "crossdiff/error.hpp"
#include "crossdiff/format.hpp"
#include "crossdiff/linalg.hpp"
#include "crossdiff/sampling.hpp"

namespace crossdiff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using RatioFn = std::function<double(std::span<const double>)>;

// 0/0 is 0; anything else over 0 is +inf.
double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num == 0.0 ? 0.0 : kInf;
}

double clean(double v) { return std::isnan(v) ? kInf : v; }

struct Extremes {
  double max = -kInf;
  std::size_t argmax = 0;
  double min = kInf;
  std::size_t argmin = 0;
};

// Lowest sample index wins ties.
Extremes scan(const SampleSet& s, const RatioFn& r) {
  Extremes e;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double v = clean(r(s[k]));
    if (v > e.max) {
      e.max = v;
      e.argmax = k;
    }
    if (v < e.min) {
      e.min = v;
      e.argmin = k;
    }
  }
  return e;
}

struct Samples {
  SampleSet full;
  SampleSet half;
};

Samples make_samples(const Model& model, const CheckOptions& opts) {
  if (opts.n_samples < 1) throw ConfigError("check.n_samples: must be >= 1");
  if (opts.box.dims() != model.m())
    throw ConfigError("check: box dimension " + std::to_string(opts.box.dims()) + " does not match m = " +
                      std::to_string(model.m()));
  Samples s{box_samples(opts.box, opts.n_samples, opts.seed),
            box_samples(opts.box.lower_half(), opts.n_samples, opts.seed)};
  s.full.append(s.half);
  return s;
}

std::vector<double> to_vec(std::span<const double> p) { return {p.begin(), p.end()}; }

// Bounded-type report: constant C = max ratio, verdict by declared bound or growth test.
CertReport bounded_report(const std::string& id, const RatioFn& ratio, const Samples& s, const CheckOptions& opts) {
  const Extremes full = scan(s.full, ratio);
  CertReport r;
  r.condition = id;
  r.samples = s.full.size();
  r.box = opts.box;
  r.constants.emplace_back("C", full.max);
  r.witness = to_vec(s.full[full.argmax]);
  r.witness_ratio = full.max;

  if (auto it = opts.declared.find(id); it != opts.declared.end()) {
    r.bound = it->second;
    r.constants.emplace_back("declared", it->second);
  } else {
    const Extremes half = scan(s.half, ratio);
    r.bound = std::pow(2.0, opts.growth_exponent) * half.max;
    r.constants.emplace_back("C_half", half.max);
  }
  // an infinite ratio is unbounded whatever the half box shows
  const bool unbounded = std::isinf(full.max);
  r.verdict = unbounded || full.max > r.bound + kCertTolerance ? Verdict::violated : Verdict::certified;
  return r;
}

std::vector<double> grad_of(const Model& model, std::span<const double> u,
                            void (Model::*fn)(std::span<const double>, std::span<double>) const, std::size_t n) {
  std::vector<double> g(n);
  (model.*fn)(u, g);
  return g;
}

}  // namespace

const char* to_string(Verdict v) noexcept { return v == Verdict::certified ? "certified" : "violated"; }

double CertReport::constant(const std::string& name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  throw std::out_of_range("CertReport: no constant named " + name);
}

double ratio_A_norm(const Model& model, std::span<const double> u) {
  const int m = model.m();
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  model.diffusion(u, a);
  return safe_ratio(frobenius_norm(a), model.lambda(u));
}

double ratio_ellipticity(const Model& model, std::span<const double> u) {
  const int m = model.m();
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  model.diffusion(u, a);
  const double l = model.lambda(u);
  if (!(l > 0.0)) return -kInf;
  return lambda_min_sym(a, m) / l;
}

double ratio_Au(const Model& model, std::span<const double> u) {
  const int m = model.m();
  const auto da = grad_of(model, u, &Model::diffusion_grad, static_cast<std::size_t>(m) * m * m);
  const auto lg = grad_of(model, u, &Model::lambda_grad, m);
  return safe_ratio(frobenius_norm(da), euclidean_norm(lg));
}

double ratio_Fghyp(const Model& model, std::span<const double> u) {
  const auto lg = grad_of(model, u, &Model::lambda_grad, model.m());
  return safe_ratio(euclidean_norm(lg), model.lambda(u));
}

double ratio_dfuu(const Model& model, std::span<const double> u) {
  const auto g = grad_of(model, u, &Model::energy_F_grad, model.m());
  return safe_ratio(euclidean_norm(g), std::sqrt(model.lambda(u)));
}

double ratio_Pu(const Model& model, std::span<const double> u) {
  const auto g = grad_of(model, u, &Model::energy_P_grad, model.m());
  return safe_ratio(euclidean_norm(g), model.lambda(u));
}

double ratio_fuu_growth(const Model& model, std::span<const double> u) {
  std::vector<double> f(model.m());
  model.reaction(u, f);
  const double F = model.energy_F(u);
  return euclidean_norm(f) * euclidean_norm(u) / (F * F + 1.0);
}

double ratio_fuuu(const Model& model, std::span<const double> u) {
  std::vector<double> f(model.m());
  model.reaction(u, f);
  const double lhs = std::sqrt(model.lambda(u)) * euclidean_norm(f) / (model.energy_P(u) + 1.0);
  return lhs / (model.energy_F(u) + 1.0);
}

double ratio_fu(const Model& model, std::span<const double> u) {
  const int m = model.m();
  const auto df = grad_of(model, u, &Model::reaction_grad, static_cast<std::size_t>(m) * m);
  return safe_ratio(frobenius_norm(df), model.lambda(u));
}

double ratio_FUDU(const Model& model, std::span<const double> u) {
  if (!model.has_drift()) return 0.0;
  const int m = model.m();
  const auto b = grad_of(model, u, &Model::drift, static_cast<std::size_t>(m) * m * 2);
  return safe_ratio(frobenius_norm(b), std::sqrt(model.lambda(u)));
}

double ratio_ak0(const Model& model, std::span<const double> u) {
  const int m = model.m();
  const auto da = grad_of(model, u, &Model::diffusion_grad, static_cast<std::size_t>(m) * m * m);
  const double root = std::sqrt(model.lambda(u));
  double r = 0.0;
  for (int k0 = 1; k0 < m; ++k0)
    for (int j = 0; j < k0; ++j) r = std::max(r, safe_ratio(std::abs(da[(k0 * m + j) * m + k0]), root));
  return r;
}

double ratio_A2(const Model& model, std::span<const double> u, std::span<const double> zeta) {
  const int m = model.m();
  std::vector<double> a(static_cast<std::size_t>(m) * m), az(m);
  model.diffusion(u, a);
  matvec(a, m, zeta, az);
  const double l = model.lambda(u);
  const double z2 = euclidean_norm(zeta) * euclidean_norm(zeta);
  const double n2 = euclidean_norm(az) * euclidean_norm(az);
  return safe_ratio(n2, l * l * z2);
}

std::vector<CertReport> check_A(const Model& model, const CheckOptions& opts) {
  const Samples s = make_samples(model, opts);
  std::vector<CertReport> out;

  // A1: lambda >= lambda0 > 0, <A zeta, zeta> >= lambda |zeta|^2, |A| <= C lambda.
  CertReport a1 =
      bounded_report("A1", [&](std::span<const double> u) { return ratio_A_norm(model, u); }, s, opts);
  const Extremes ell = scan(s.full, [&](std::span<const double> u) { return ratio_ellipticity(model, u); });
  const Extremes lam = scan(s.full, [&](std::span<const double> u) { return model.lambda(u); });
  a1.constants.emplace_back("lambda0", lam.min);
  a1.constants.emplace_back("ellipticity", ell.min);
  if (!(lam.min > 0.0)) {
    a1.verdict = Verdict::violated;
    a1.witness = to_vec(s.full[lam.argmin]);
    a1.witness_ratio = lam.min;
    a1.bound = 0.0;
  } else if (ell.min < 1.0 - kCertTolerance) {
    a1.verdict = Verdict::violated;
    a1.witness = to_vec(s.full[ell.argmin]);
    a1.witness_ratio = ell.min;
    a1.bound = 1.0;
  }
  out.push_back(std::move(a1));

  out.push_back(bounded_report("Au", [&](std::span<const double> u) { return ratio_Au(model, u); }, s, opts));
  out.push_back(
      bounded_report("Fghyp", [&](std::span<const double> u) { return ratio_Fghyp(model, u); }, s, opts));
  return out;
}

std::vector<CertReport> check_F(const Model& model, const CheckOptions& opts) {
  if (!model.has_energy_pair())
    throw ConfigError("check_F: model '" + model.traits().name + "' provides no energy pair F, P");
  const Samples s = make_samples(model, opts);
  std::vector<CertReport> out;
  out.push_back(bounded_report("dfuu", [&](auto u) { return ratio_dfuu(model, u); }, s, opts));
  out.push_back(bounded_report("Pu", [&](auto u) { return ratio_Pu(model, u); }, s, opts));

  // fuu: |f||u| <= eps0 F^2 + C. Boundedness of |f||u|/(F^2+1) decides the
  // verdict; the feasible (C, eps0) pair minimising eps0 is reported.
  CertReport fuu = bounded_report("fuu", [&](auto u) { return ratio_fuu_growth(model, u); }, s, opts);
  std::vector<double> lhs(s.full.size()), F2(s.full.size());
  std::vector<double> f(model.m());
  for (std::size_t k = 0; k < s.full.size(); ++k) {
    model.reaction(s.full[k], f);
    lhs[k] = euclidean_norm(f) * euclidean_norm(s.full[k]);
    const double F = model.energy_F(s.full[k]);
    F2[k] = F * F;
  }
  std::vector<double> candidates{0.0};
  for (int j = -4; j <= 20; ++j) candidates.push_back(std::ldexp(1.0, j));
  double best_eps = kInf;
  double best_C = 0.0;
  for (double C : candidates) {
    double eps = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      const double excess = lhs[k] - C;
      if (excess > 0.0) eps = std::max(eps, safe_ratio(excess, F2[k]));
    }
    if (eps < best_eps) {
      best_eps = eps;
      best_C = C;
    }
  }
  fuu.constants.emplace_back("eps0", best_eps);
  fuu.constants.emplace_back("C_eps0", best_C);
  fuu.constants.emplace_back("eps0_model", model.traits().eps0);
  out.push_back(std::move(fuu));

  out.push_back(bounded_report("fuuu", [&](auto u) { return ratio_fuuu(model, u); }, s, opts));
  out.push_back(bounded_report("fu", [&](auto u) { return ratio_fu(model, u); }, s, opts));
  out.push_back(bounded_report("FUDU", [&](auto u) { return ratio_FUDU(model, u); }, s, opts));
  return out;
}

CertReport check_ak0(const Model& model, const CheckOptions& opts) {
  if (model.structure() != StructureTag::triangular)
    throw ConfigError("check_ak0: model '" + model.traits().name + "' is not triangular");
  const Samples s = make_samples(model, opts);
  CertReport r = bounded_report("ak0", [&](auto u) { return ratio_ak0(model, u); }, s, opts);
  const int m = model.m();
  std::vector<double> da(static_cast<std::size_t>(m) * m * m);
  for (int k0 = 1; k0 < m; ++k0) {
    for (int j = 0; j < k0; ++j) {
      double c = 0.0;
      for (std::size_t k = 0; k < s.full.size(); ++k) {
        model.diffusion_grad(s.full[k], da);
        c = std::max(c, safe_ratio(std::abs(da[(k0 * m + j) * m + k0]), std::sqrt(model.lambda(s.full[k]))));
      }
      r.constants.emplace_back("C_" + std::to_string(k0 + 1) + std::to_string(j + 1), c);
    }
  }
  return r;
}

CertReport check_A2(const Model& model, const CheckOptions& opts) {
  if (opts.n_dirs < 1) throw ConfigError("check.n_dirs: must be >= 1");
  const Samples s = make_samples(model, opts);
  const SampleSet dirs = unit_directions(model.m(), opts.n_dirs, opts.seed);
  CertReport r;
  r.condition = "A2";
  r.box = opts.box;
  r.samples = s.full.size() * dirs.size();
  r.bound = 1.0;
  double best = kInf;
  std::size_t bu = 0, bz = 0;
  for (std::size_t k = 0; k < s.full.size(); ++k) {
    for (std::size_t z = 0; z < dirs.size(); ++z) {
      const double v = clean(ratio_A2(model, s.full[k], dirs[z]));
      if (v < best) {
        best = v;
        bu = k;
        bz = z;
      }
    }
  }
  r.constants.emplace_back("min_ratio", best);
  r.witness = to_vec(s.full[bu]);
  r.witness_dir = to_vec(dirs[bz]);
  r.witness_ratio = best;
  r.verdict = best < 1.0 - kCertTolerance ? Verdict::violated : Verdict::certified;
  return r;
}

std::vector<CertReport> check_all(const Model& model, const CheckOptions& opts) {
  std::vector<CertReport> out = check_A(model, opts);
  if (model.has_energy_pair()) {
    auto f = check_F(model, opts);
    out.insert(out.end(), f.begin(), f.end());
  }
  if (model.structure() == StructureTag::triangular) out.push_back(check_ak0(model, opts));
  out.push_back(check_A2(model, opts));
  return out;
}

std::string cert_csv_header() { return "condition,verdict,constants,witness,samples,box"; }

std::string to_csv_row(const CertReport& r) {
  std::ostringstream os;
  os << r.condition << ',' << to_string(r.verdict) << ',';
  for (std::size_t k = 0; k < r.constants.size(); ++k)
    os << (k ? ";" : "") << r.constants[k].first << '=' << format_double(r.constants[k].second);
  os << ',';
  for (std::size_t k = 0; k < r.witness.size(); ++k) os << (k ? ";" : "") << format_double(r.witness[k]);
  if (!r.witness_dir.empty()) {
    os << '|';
    for (std::size_t k = 0; k < r.witness_dir.size(); ++k) os << (k ? ";" : "") << format_double(r.witness_dir[k]);
  }
  os << ',' << r.samples << ',';
  for (int i = 0; i < r.box.dims(); ++i)
    os << (i ? "x" : "") << '[' << format_double(r.box.lo[i]) << ';' << format_double(r.box.hi[i]) << ']';
  return os.str();
}

std::string to_csv(const std::vector<CertReport>& reports) {
  std::string out = cert_csv_header() + "\n";
  for (const auto& r : reports) out += to_csv_row(r) + "\n";
  return out;
}

}  // namespace crossdiff
