#pragma once

// Convolution-compatible functional calculus. Every transform of an M x N
// matrix A has the shape
//
//   out_00 = c_0,   out_ij = sum_{l=1}^{i+j} c_l E_l(A; i, j),
//
// where E_l are the elementary partition sums and c_l is f^{(l)}(a00)
// (smooth), (D_h^l f)(a00) (stepped), or p^{(l)}(a00) (polynomials).

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "juryconv/conv_matrix.hpp"
#include "juryconv/function_spec.hpp"
#include "juryconv/partitions.hpp"

namespace juryconv {

// Dense polynomial c_0 + c_1 z + ... with trailing zeros trimmed.
template <FieldScalar T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  // (z - root)^k
  static Poly linear_power(const T& root, unsigned k) {
    Poly r(std::vector<T>{ScalarTraits<T>::one()});
    const Poly lin(std::vector<T>{-root, ScalarTraits<T>::one()});
    for (unsigned s = 0; s < k; ++s) r = r * lin;
    return r;
  }

  const std::vector<T>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  T operator()(const T& x) const { return derivative_at(0, x); }

  T derivative_at(unsigned order, const T& x) const {
    T r = ScalarTraits<T>::zero();
    for (std::size_t k = c_.size(); k-- > order;) {
      T ff = ScalarTraits<T>::one();
      for (unsigned j = 0; j < order; ++j)
        ff = ff * ScalarTraits<T>::from_int(static_cast<long>(k - j));
      r = r * x + c_[k] * ff;
    }
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), ScalarTraits<T>::zero());
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, ScalarTraits<T>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

// Assembles the transform matrix from c_0 .. c_{M+N-2}.
template <FieldScalar T>
ConvMatrix<T> transform_from_coefficients(const ConvMatrix<T>& a,
                                          std::span<const T> coeffs) {
  const std::size_t need = a.rows() + a.cols() - 1;
  if (coeffs.size() < need)
    throw Error("transform needs " + std::to_string(need) + " derivative values");
  const ElementarySums<T> sums(a);
  ConvMatrix<T> out(a.rows(), a.cols());
  out(0, 0) = coeffs[0];
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i == 0 && j == 0) continue;
      T s = ScalarTraits<T>::zero();
      for (std::size_t l = 1; l <= i + j; ++l)
        s += coeffs[l] * sums(static_cast<int>(l), i, j);
      out(i, j) = s;
    }
  return out;
}

enum class PolyMode { sum_of_powers, partition_formula };

// p<>(A) = sum_k p_k A^{<>k}.
template <FieldScalar T>
ConvMatrix<T> poly_transform(const Poly<T>& p, const ConvMatrix<T>& a,
                             PolyMode mode = PolyMode::sum_of_powers) {
  if (mode == PolyMode::sum_of_powers) {
    ConvMatrix<T> sum(a.rows(), a.cols());
    ConvMatrix<T> power = conv_identity<T>(a.rows(), a.cols());
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      if (k > 0) power = conv(power, a);
      if (!ScalarTraits<T>::is_zero(p.coeffs()[k]))
        sum = add(sum, scale(p.coeffs()[k], power));
    }
    return sum;
  }
  const std::size_t need = a.rows() + a.cols() - 1;
  std::vector<T> c(need);
  for (std::size_t l = 0; l < need; ++l)
    c[l] = p.derivative_at(static_cast<unsigned>(l), a(0, 0));
  return transform_from_coefficients<T>(a, c);
}

// f<>(A) with exact derivatives at a00 (real a00 required).
ConvMatrix<Complex> smooth_transform(const FunctionSpec& f, const ConvMatrix<Complex>& a);
// Exact variant; f must be a polynomial.
ConvMatrix<Rational> smooth_transform(const FunctionSpec& f, const ConvMatrix<Rational>& a);

// f<>(A)_h: derivatives replaced by divided differences (D_h^l f)(a00).
// Every node a00 + k h, k in [0:M+N-2], must lie in f's domain.
ConvMatrix<Complex> stepped_transform(const FunctionSpec& f, const ConvMatrix<Complex>& a,
                                      double h);
ConvMatrix<Rational> stepped_transform(const FunctionSpec& f, const ConvMatrix<Rational>& a,
                                       const Rational& h);

struct SeriesOptions {
  std::optional<std::size_t> terms;  // fixed truncation: sum_{k <= terms}
  double tail_tolerance = 1e-12;     // relative to the running partial-sum norm
  std::size_t max_terms = 10'000;
  // Consecutive negligible terms required before stopping in tolerance mode.
  std::size_t quiet_terms = 3;
};

template <FieldScalar T>
struct SeriesResult {
  ConvMatrix<T> matrix;
  std::size_t terms_used = 0;  // highest power included
  double tail_bound = 0.0;     // norm of the last included term
};

// Partial sums of sum_k c_k A^{<>k}.
template <FieldScalar T>
SeriesResult<T> series_transform(const std::function<T(std::size_t)>& coeff,
                                 const ConvMatrix<T>& a,
                                 const SeriesOptions& opt = {}) {
  ConvMatrix<T> sum(a.rows(), a.cols());
  ConvMatrix<T> power = conv_identity<T>(a.rows(), a.cols());
  std::size_t quiet = 0;
  double last_norm = 0.0;
  const std::size_t limit = opt.terms ? *opt.terms : opt.max_terms;
  for (std::size_t k = 0; k <= limit; ++k) {
    if (k > 0) power = conv(power, a);
    if (!std::isfinite(power.max_abs()))
      throw DivergenceError("series powers overflowed at term " + std::to_string(k));
    const T c = coeff(k);
    if (!ScalarTraits<T>::is_finite(c))
      throw DivergenceError("series coefficient " + std::to_string(k) + " is not finite");
    if (!std::isfinite(ScalarTraits<T>::magnitude(c) * power.max_abs()) ||
        !std::isfinite(sum.max_abs() + ScalarTraits<T>::magnitude(c) * power.max_abs()))
      throw DivergenceError("series partial sums overflowed at term " + std::to_string(k));
    const ConvMatrix<T> term = scale(c, power);
    sum = add(sum, term);
    last_norm = term.max_abs();
    if (!std::isfinite(sum.max_abs()) || !std::isfinite(last_norm))
      throw DivergenceError("series partial sums overflowed at term " + std::to_string(k));
    if (opt.terms) continue;
    quiet = last_norm <= opt.tail_tolerance * std::max(1.0, sum.max_abs()) ? quiet + 1 : 0;
    if (quiet >= opt.quiet_terms) return {sum, k, last_norm};
  }
  if (!opt.terms)
    throw DivergenceError("series partial sums not Cauchy within " +
                          std::to_string(opt.max_terms) + " terms");
  return {sum, limit, last_norm};
}

// B(alpha, A)_{ij} = i! j! [x^i y^j] (a00 + sum_{(m,n) != 0} a_mn x^m y^n)^alpha,
// for real A with a00 > 0, via the truncated binomial series.
ConvMatrix<Complex> bivariate_power_matrix(double alpha, const ConvMatrix<Complex>& a);

// diag(0!, 1!, ..., (n-1)!) X diag(0!, 1!, ...) for an n x m matrix X.
ConvMatrix<Complex> factorial_scaled(const ConvMatrix<Complex>& x);

}  // namespace juryconv
