#pragma once

#include <optional>
#include <string>
#include <vector>

#include "juryconv/numerics.hpp"

namespace juryconv {

// Scalar function with closed-form derivatives: a polynomial with exact
// coefficients, a power x^alpha (x > 0), exp, or a finite power series with a
// declared radius (|x| < radius).
class FunctionSpec {
 public:
  enum class Kind { polynomial, power, exp, series };

  static FunctionSpec polynomial(std::vector<Rational> coeffs);
  static FunctionSpec power(double alpha);
  static FunctionSpec exponential();
  static FunctionSpec series(std::vector<double> coeffs, double radius);

  // Caps the number of derivatives the function is declared to have;
  // unset means smooth.
  FunctionSpec with_differentiability(int order) const;
  std::optional<int> differentiability() const { return diff_order_; }

  Kind kind() const { return kind_; }
  // Polynomials evaluate exactly on rationals.
  bool exact() const { return kind_ == Kind::polynomial; }

  bool in_domain(double x) const;
  double value(double x) const { return derivative(0, x); }
  double derivative(unsigned order, double x) const;

  Rational value_exact(const Rational& x) const { return derivative_exact(0, x); }
  Rational derivative_exact(unsigned order, const Rational& x) const;

  double alpha() const { return alpha_; }
  double radius() const { return radius_; }
  const std::vector<Rational>& poly_coeffs() const { return poly_; }
  const std::vector<double>& series_coeffs() const { return series_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::exp;
  std::vector<Rational> poly_;
  std::vector<double> series_;
  double alpha_ = 1.0;
  double radius_ = 0.0;
  std::optional<int> diff_order_;
};

// (Delta_h^l f)(x) = sum_j C(l,j) (-1)^{l-j} f(x + j h).
double forward_difference(const FunctionSpec& f, double x, double h, unsigned order);
Rational forward_difference(const FunctionSpec& f, const Rational& x,
                            const Rational& h, unsigned order);

// (D_h^l f)(x) = (Delta_h^l f)(x) / h^l.
double divided_difference(const FunctionSpec& f, double x, double h, unsigned order);
Rational divided_difference(const FunctionSpec& f, const Rational& x,
                            const Rational& h, unsigned order);

}  // namespace juryconv
