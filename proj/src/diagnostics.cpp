#include "crossdiff/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossdiff/error.hpp"
#include "crossdiff/format.hpp"
#include "crossdiff/linalg.hpp"

namespace crossdiff {
namespace {

double sq(double v) { return v * v; }

// W_{i,axis} = sum_{l<n} a_il Du_l for the leading n components.
void flux_vector(std::span<const double> a, int m, int n, std::span<const double> du, std::span<double> w) {
  for (int i = 0; i < n; ++i)
    for (int ax = 0; ax < 2; ++ax) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += a[i * m + l] * du[2 * l + ax];
      w[2 * i + ax] = s;
    }
}

// Bracket [Du_k (u_j)_t - (u_k)_t Du_j] along one axis.
double bracket(std::span<const double> du, std::span<const double> ut, int k, int j, int ax) {
  return du[2 * k + ax] * ut[j] - ut[k] * du[2 * j + ax];
}

struct NodeEval {
  std::vector<double> a, da;
};

NodeEval eval_node(const Model& model, std::span<const double> u) {
  const int m = model.m();
  NodeEval e{std::vector<double>(static_cast<std::size_t>(m) * m),
             std::vector<double>(static_cast<std::size_t>(m) * m * m)};
  model.diffusion(u, e.a);
  model.diffusion_grad(u, e.da);
  return e;
}

double expansion(const NodeEval& e, int m, int n, std::span<const double> du, std::span<const double> ut) {
  std::vector<double> w(2 * n);
  flux_vector(e.a, m, n, du, w);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int ax = 0; ax < 2; ++ax) {
      double v = 0.0;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) v += e.da[(i * m + j) * m + k] * bracket(du, ut, k, j, ax);
      total += w[2 * i + ax] * v;
    }
  return total;
}

double component_ratio_max(const Field& u, double (*fn)(const Grid2D&, std::span<const double>)) {
  double r = 0.0;
  for (int c = 0; c < u.components(); ++c) r = std::max(r, fn(u.grid(), u.component(c)));
  return r;
}

}  // namespace

double excess_density(const Model& model, std::span<const double> u, std::span<const double> du,
                      std::span<const double> ut, int k0) {
  const int m = model.m();
  const int n = k0 == 0 ? m : k0;
  if (n < 1 || n > m) throw InputError("excess: k0 out of range");
  return expansion(eval_node(model, u), m, n, du, ut);
}

PyramidTerms excess_terms_density(const Model& model, std::span<const double> u, std::span<const double> du,
                                  std::span<const double> ut, int k0) {
  const int m = model.m();
  if (k0 < 2 || k0 > m) throw ConfigError("excess_terms_pyramid: k0 must lie in [2, m]");
  const NodeEval e = eval_node(model, u);
  const int K = k0 - 1;
  PyramidTerms t;
  for (int ax = 0; ax < 2; ++ax) {
    for (int j = 0; j < K; ++j) {
      const double c = e.da[(K * m + j) * m + K] * bracket(du, ut, K, j, ax);
      t.I1 += e.a[K * m + K] * c * du[2 * K + ax];
      for (int l = 0; l < K; ++l) t.I2 += e.a[K * m + l] * c * du[2 * l + ax];
    }
  }
  t.I3 = expansion(e, m, K, du, ut);
  return t;
}

ExcessField excess(const Model& model, const Field& u, const Field& ut, int k0) {
  const Grid2D& g = u.grid();
  const int m = model.m();
  const int n = k0 == 0 ? m : k0;
  if (n < 1 || n > m) throw InputError("excess: k0 out of range");
  const GradField du = gradient(u);
  ExcessField out{std::vector<double>(g.node_count(), 0.0), 0.0, !model.has_analytic_diffusion_grad()};
  std::vector<double> s(m), d(2 * m), v(m);
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i) {
      u.node_state(i, j, s);
      du.node_gradient(i, j, d);
      ut.node_state(i, j, v);
      out.density[g.index(i, j)] = expansion(eval_node(model, s), m, n, d, v);
    }
  out.integral = integrate(g, out.density);
  return out;
}

ExcessField excess_direct(const Model& model, const Field& u, const Field& ut) {
  const Grid2D& g = u.grid();
  const int m = model.m();
  const std::size_t mm = static_cast<std::size_t>(m) * m;
  const std::size_t nodes = g.node_count();

  // Node fields of every entry a_ij(u(x)) and their discrete gradients.
  std::vector<std::vector<double>> a_nodes(mm, std::vector<double>(nodes));
  std::vector<double> s(m), a(mm);
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i) {
      u.node_state(i, j, s);
      model.diffusion(s, a);
      for (std::size_t e = 0; e < mm; ++e) a_nodes[e][g.index(i, j)] = a[e];
    }
  std::vector<std::vector<double>> da_x(mm, std::vector<double>(nodes)), da_y(mm, std::vector<double>(nodes));
  for (std::size_t e = 0; e < mm; ++e) gradient_scalar(g, a_nodes[e], da_x[e], da_y[e]);

  const GradField du = gradient(u);
  ExcessField out{std::vector<double>(nodes, 0.0), 0.0, !model.has_analytic_diffusion_grad()};
  std::vector<double> d(2 * m), v(m), w(2 * m), dau(mm * m), at(mm);
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i) {
      const std::size_t node = g.index(i, j);
      u.node_state(i, j, s);
      du.node_gradient(i, j, d);
      ut.node_state(i, j, v);
      for (std::size_t e = 0; e < mm; ++e) a[e] = a_nodes[e][node];
      model.diffusion_grad(s, dau);
      for (std::size_t e = 0; e < mm; ++e) {
        double t = 0.0;
        for (int k = 0; k < m; ++k) t += dau[e * m + k] * v[k];
        at[e] = t;
      }
      flux_vector(a, m, m, d, w);
      double total = 0.0;
      for (int r = 0; r < m; ++r)
        for (int ax = 0; ax < 2; ++ax) {
          double q = 0.0;
          for (int c = 0; c < m; ++c) {
            const std::size_t e = static_cast<std::size_t>(r) * m + c;
            q += (ax == 0 ? da_x[e][node] : da_y[e][node]) * v[c] - at[e] * d[2 * c + ax];
          }
          total += w[2 * r + ax] * q;
        }
      out.density[node] = total;
    }
  out.integral = integrate(g, out.density);
  return out;
}

PyramidTerms excess_terms_pyramid(const Model& model, const Field& u, const Field& ut, int k0) {
  if (model.structure() != StructureTag::triangular)
    throw ConfigError("excess_terms_pyramid: model '" + model.traits().name + "' is not triangular");
  if (k0 < 2 || k0 > model.m()) throw ConfigError("excess_terms_pyramid: k0 must lie in [2, m]");
  const Grid2D& g = u.grid();
  const int m = model.m();
  const GradField du = gradient(u);
  std::vector<double> i1(g.node_count()), i2(g.node_count()), i3(g.node_count());
  std::vector<double> s(m), d(2 * m), v(m);
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i) {
      u.node_state(i, j, s);
      du.node_gradient(i, j, d);
      ut.node_state(i, j, v);
      const PyramidTerms p = excess_terms_density(model, s, d, v, k0);
      i1[g.index(i, j)] = p.I1;
      i2[g.index(i, j)] = p.I2;
      i3[g.index(i, j)] = p.I3;
    }
  return {integrate(g, i1), integrate(g, i2), integrate(g, i3)};
}

std::vector<double> gronwall_bound(std::span<const double> times, std::span<const double> alpha,
                                   std::span<const double> beta, double C) {
  if (alpha.size() != times.size() || beta.size() != times.size())
    throw InputError("gronwall_bound: times, alpha and beta must have equal length");
  std::vector<double> out;
  out.reserve(times.size());
  double s = 0.0;
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (n > 0) {
      const double dt = times[n] - times[n - 1];
      if (!(dt > 0.0)) throw InputError("gronwall_bound: time stamps must strictly increase (index " +
                                        std::to_string(n) + ")");
      s = s * std::exp(beta[n] * dt) + alpha[n] * beta[n] * dt;
    }
    out.push_back(alpha[n] + C * s);
  }
  return out;
}

double lady_check(const Grid2D& g, std::span<const double> U) {
  std::vector<double> dx(U.size()), dy(U.size()), u2(U.size()), u4(U.size()), g2(U.size());
  gradient_scalar(g, U, dx, dy);
  for (std::size_t k = 0; k < U.size(); ++k) {
    u2[k] = U[k] * U[k];
    u4[k] = u2[k] * u2[k];
    g2[k] = dx[k] * dx[k] + dy[k] * dy[k];
  }
  const double i2 = integrate(g, u2), i4 = integrate(g, u4), ig = integrate(g, g2);
  if (i2 == 0.0 || ig == 0.0) return 0.0;
  return std::sqrt(i4) / (std::sqrt(i2) * std::sqrt(ig));
}

double poincare_check(const Grid2D& g, std::span<const double> U) {
  std::vector<double> dx(U.size()), dy(U.size()), u2(U.size()), g2(U.size());
  gradient_scalar(g, U, dx, dy);
  for (std::size_t k = 0; k < U.size(); ++k) {
    u2[k] = U[k] * U[k];
    g2[k] = dx[k] * dx[k] + dy[k] * dy[k];
  }
  const double i2 = integrate(g, u2), ig = integrate(g, g2);
  if (i2 == 0.0 || ig == 0.0) return 0.0;
  return i2 / (sq(g.diameter()) * ig);
}

double product_constant(const Grid2D& g, std::span<const double> U, std::span<const double> V) {
  const std::size_t n = U.size();
  std::vector<double> ux(n), uy(n), vx(n), vy(n), uv(n), gu(n), gv(n);
  gradient_scalar(g, U, ux, uy);
  gradient_scalar(g, V, vx, vy);
  for (std::size_t k = 0; k < n; ++k) {
    uv[k] = sq(U[k]) * sq(V[k]);
    gu[k] = sq(ux[k]) + sq(uy[k]);
    gv[k] = sq(vx[k]) + sq(vy[k]);
  }
  const double a = integrate(g, gu), b = integrate(g, gv);
  if (a == 0.0 || b == 0.0) return 0.0;
  return integrate(g, uv) / (a * b);
}

DiagnosticsRecord evaluate(const Model& model, const Field& u, bool with_excess) {
  const Grid2D& g = u.grid();
  const int m = model.m();
  const std::size_t nodes = g.node_count();
  const GradField du = gradient(u);

  DiagnosticsRecord r;
  const auto vals = u.values();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  r.min_u = *lo;
  r.max_u = *hi;

  std::vector<double> u2(nodes), g2(nodes), el(nodes), fe(nodes), p4(nodes), phi(nodes), l4(nodes), l2(nodes);
  std::vector<double> s(m), d(2 * m), a(static_cast<std::size_t>(m) * m), lg(m), w(2 * m);
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      u.node_state(i, j, s);
      du.node_gradient(i, j, d);
      model.diffusion(s, a);
      model.lambda_grad(s, lg);
      const double lam = model.lambda(s);
      double us = 0.0, gs = 0.0;
      for (double x : s) us += x * x;
      for (double x : d) gs += x * x;
      flux_vector(a, m, m, d, w);
      double ws = 0.0;
      for (double x : w) ws += x * x;
      double lgs = 0.0;
      for (double x : lg) lgs += x * x;

      u2[k] = us;
      g2[k] = gs;
      el[k] = lam * gs;
      fe[k] = ws;
      p4[k] = us * us + gs * gs;
      phi[k] = lgs / lam * gs * gs;
      l4[k] = lam * lam * gs * gs;
      l2[k] = lam * lam * gs;
    }
  r.l2 = integrate(g, u2);
  r.energy_lambda = integrate(g, el);
  r.flux_energy = integrate(g, fe);
  r.w12 = r.l2 + integrate(g, g2);
  r.w1p4 = std::pow(integrate(g, p4), 0.25);
  r.phi_du4 = integrate(g, phi);
  r.lam2_du4 = integrate(g, l4);
  r.lam2_du2 = integrate(g, l2);
  r.lady_ratio = component_ratio_max(u, &lady_check);
  r.poincare_ratio = component_ratio_max(u, &poincare_check);

  if (with_excess) {
    try {
      const Field ut = rhs(model, u);
      const ExcessField direct = excess_direct(model, u, ut);
      r.excess_int = direct.integral;
      r.excess_fd = direct.finite_difference;
      r.excess_expanded = excess(model, u, ut).integral;
      if (model.structure() == StructureTag::triangular && m >= 2) {
        const PyramidTerms p = excess_terms_pyramid(model, u, ut, m);
        r.I1 = p.I1;
        r.I2 = p.I2;
        r.I3 = p.I3;
      }
    } catch (const CorruptionError&) {
      // u_t overflowed on a diverging state; the excess stays empty
    }
  }
  return r;
}

Monitor::Monitor(const Model& model, MonitorOptions opts) : model_(model), opts_(opts) {
  if (opts_.diag_every < 1) throw ConfigError("output.diag_every: must be >= 1");
  if (opts_.excess_every < 0) throw ConfigError("output.excess_every: must be >= 0");
}

StepObserver Monitor::observer() {
  return [this](const StepEvent& ev) { observe(ev); };
}

void Monitor::observe(const StepEvent& ev) {
  if (ev.step == last_step_) return;
  if (ev.step % opts_.diag_every != 0 && !ev.last) return;
  const bool with_excess =
      opts_.excess_every > 0 && records_.size() % static_cast<std::size_t>(opts_.excess_every) == 0;
  DiagnosticsRecord r = evaluate(model_, ev.state, with_excess);
  r.step = ev.step;
  r.t = ev.t;
  r.dt = ev.dt;

  if (records_.empty()) {
    alpha_ = r.flux_energy + opts_.c_excess;
    s_ = 0.0;
  } else {
    const double dt = r.t - records_.back().t;
    const double beta = r.energy_lambda + ev.state.grid().area() + opts_.c_eps;
    s_ = s_ * std::exp(beta * dt) + alpha_ * beta * dt;
  }
  r.gronwall_bound = alpha_ + opts_.gronwall_c * s_;

  g_max_ = std::max(g_max_, r.energy_lambda);
  max_lady_ = std::max(max_lady_, r.lady_ratio);
  max_poincare_ = std::max(max_poincare_, r.poincare_ratio);
  last_step_ = ev.step;
  records_.push_back(std::move(r));
}

std::string diagnostics_csv_header() {
  return "step,t,dt,min_u,max_u,l2,energy_lambda,flux_energy,w12,w1p4,excess_int,I1,I2,I3,phi_du4,lam2_du4,"
         "lady_ratio,poincare_ratio,gronwall_bound";
}

std::string to_csv_row(const DiagnosticsRecord& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string row = std::to_string(r.step);
  for (const std::string& cell :
       {format_double(r.t), format_double(r.dt), format_double(r.min_u), format_double(r.max_u),
        format_double(r.l2), format_double(r.energy_lambda), format_double(r.flux_energy), format_double(r.w12),
        format_double(r.w1p4), opt(r.excess_int), opt(r.I1), opt(r.I2), opt(r.I3), format_double(r.phi_du4),
        format_double(r.lam2_du4), format_double(r.lady_ratio), format_double(r.poincare_ratio),
        opt(r.gronwall_bound)}) {
    row += ',';
    row += cell;
  }
  return row;
}

std::string to_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = diagnostics_csv_header() + "\n";
  for (const auto& r : records) out += to_csv_row(r) + "\n";
  return out;
}

}  // namespace crossdiff
