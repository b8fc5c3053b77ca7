#ifndef CROSSDIFF_POLYNOMIAL_HPP
#define CROSSDIFF_POLYNOMIAL_HPP

#include <span>
#include <vector>

namespace crossdiff {

/// Sparse multivariate polynomial with real coefficients and non-negative
/// integer exponents. Like terms are merged; zero terms are dropped.
class Polynomial {
 public:
  struct Term {
    double coef;
    std::vector<int> exponents;
  };

  explicit Polynomial(int variables = 0) : nvars_(variables) {}

  static Polynomial constant(int variables, double c);
  /// The coordinate function u_k.
  static Polynomial variable(int variables, int k);
  static Polynomial monomial(int variables, double coef, std::vector<int> exponents);

  int variables() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool depends_on(int k) const noexcept;
  int degree() const noexcept;

  Polynomial& add_term(double coef, std::vector<int> exponents);

  double operator()(std::span<const double> u) const noexcept;
  Polynomial derivative(int k) const;

  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

 private:
  int nvars_;
  std::vector<Term> terms_;
};

}  // namespace crossdiff

#endif  // CROSSDIFF_POLYNOMIAL_HPP
