#include "crossdiff/polynomial.hpp"

#include <algorithm>

#include "crossdiff/error.hpp"

namespace crossdiff {
namespace {

double ipow(double x, int e) noexcept {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

}  // namespace

Polynomial Polynomial::constant(int variables, double c) {
  Polynomial p(variables);
  p.add_term(c, std::vector<int>(variables, 0));
  return p;
}

Polynomial Polynomial::variable(int variables, int k) {
  std::vector<int> e(variables, 0);
  e.at(k) = 1;
  return monomial(variables, 1.0, std::move(e));
}

Polynomial Polynomial::monomial(int variables, double coef, std::vector<int> exponents) {
  Polynomial p(variables);
  p.add_term(coef, std::move(exponents));
  return p;
}

bool Polynomial::depends_on(int k) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [k](const Term& t) { return t.exponents[k] > 0; });
}

int Polynomial::degree() const noexcept {
  int d = 0;
  for (const Term& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

Polynomial& Polynomial::add_term(double coef, std::vector<int> exponents) {
  if (static_cast<int>(exponents.size()) != nvars_) throw ConfigError("polynomial: exponent count mismatch");
  if (std::any_of(exponents.begin(), exponents.end(), [](int e) { return e < 0; }))
    throw ConfigError("polynomial: negative exponent");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponents,
                             [](const Term& t, const std::vector<int>& e) { return t.exponents < e; });
  if (it != terms_.end() && it->exponents == exponents) {
    it->coef += coef;
    if (it->coef == 0.0) terms_.erase(it);
  } else if (coef != 0.0) {
    terms_.insert(it, Term{coef, std::move(exponents)});
  }
  return *this;
}

double Polynomial::operator()(std::span<const double> u) const noexcept {
  double s = 0.0;
  for (const Term& t : terms_) {
    double v = t.coef;
    for (int k = 0; k < nvars_; ++k)
      if (t.exponents[k] != 0) v *= ipow(u[k], t.exponents[k]);
    s += v;
  }
  return s;
}

Polynomial Polynomial::derivative(int k) const {
  Polynomial d(nvars_);
  for (const Term& t : terms_) {
    if (t.exponents[k] == 0) continue;
    std::vector<int> e = t.exponents;
    const int power = e[k]--;
    d.add_term(t.coef * power, std::move(e));
  }
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw ConfigError("polynomial: variable count mismatch");
  for (const Term& t : other.terms_) add_term(t.coef, t.exponents);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw ConfigError("polynomial: variable count mismatch");
  Polynomial p(a.nvars_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      std::vector<int> e(a.nvars_);
      for (int k = 0; k < a.nvars_; ++k) e[k] = ta.exponents[k] + tb.exponents[k];
      p.add_term(ta.coef * tb.coef, std::move(e));
    }
  }
  return p;
}

Polynomial operator*(double s, const Polynomial& p) {
  Polynomial r(p.nvars_);
  for (const auto& t : p.terms_) r.add_term(s * t.coef, t.exponents);
  return r;
}

}  // namespace crossdiff
