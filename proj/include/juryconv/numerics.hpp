#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace juryconv {

using BigInt = mpz_class;
using Complex = std::complex<double>;

// Exact rational number, always reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : v_(static_cast<long>(v)) {}  // NOLINT: implicit by design of a number type
  explicit Rational(const BigInt& num) : v_(num) {}
  Rational(const BigInt& num, const BigInt& den);

  // Accepts "p", "p/q" and plain decimals such as "-0.125" or "3e-2".
  static Rational parse(std::string_view text);

  BigInt numerator() const { return BigInt(v_.get_num()); }
  BigInt denominator() const { return BigInt(v_.get_den()); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const;  // rounded to nearest
  std::string str() const;  // "p/q", or "p" when q == 1

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

// ---------------------------------------------------------------------------
// Scalar backends. Every ring-generic algorithm is written against these
// traits; Rational and Complex are the public backends, int64 serves the
// integer rank matrices of the Bruhat module.

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_int(long v) { return Rational(v); }
  static double magnitude(const Rational& x) { return abs(x).to_double(); }
  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) {
    return x.is_zero();
  }
  static bool is_finite(const Rational&) { return true; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "complex";
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static bool is_zero(const Complex& x, double tol = 0.0) {
    return std::abs(x) <= tol;
  }
  static bool is_finite(const Complex& x);
};

template <>
struct ScalarTraits<std::int64_t> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "integer";
  static std::int64_t zero() { return 0; }
  static std::int64_t one() { return 1; }
  static std::int64_t from_int(long v) { return v; }
  static double magnitude(std::int64_t x) {
    return static_cast<double>(x < 0 ? -x : x);
  }
  static bool is_zero(std::int64_t x, double /*tol*/ = 0.0) { return x == 0; }
  static bool is_finite(std::int64_t) { return true; }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

// Scalars that support division (needed for inverses).
template <class T>
concept FieldScalar = Scalar<T> && (std::same_as<T, Rational> ||
                                    std::same_as<T, Complex>);

// Epsilon-aware comparison for floating scalars:
// |a - b| <= abs_tol + rel_tol * max(|a|, |b|).
bool approx_equal(const Complex& a, const Complex& b, double rel_tol = 1e-12,
                  double abs_tol = 1e-12);

// ---------------------------------------------------------------------------
// Combinatorial coefficients.

BigInt binomial(unsigned n, unsigned k);

// alpha (alpha - 1) ... (alpha - k + 1) / k!
double generalized_binomial(double alpha, unsigned k);

// alpha (alpha - 1) ... (alpha - k + 1)
double falling_factorial(double alpha, unsigned k);

// Factorials are memoized up to `cap` and computed on demand past it.
class FactorialTable {
 public:
  explicit FactorialTable(unsigned cap = 64);
  BigInt operator()(unsigned n) const;
  unsigned cap() const { return static_cast<unsigned>(table_.size()) - 1; }

 private:
  std::vector<BigInt> table_;
};

// Process-wide table with the default cap.
BigInt factorial(unsigned n);

// 1 / prod(c!) over the given multiplicities (each >= 1).
Rational multiset_weight(std::span<const int> multiplicities);

template <class Map>
  requires requires(const Map& m) { m.begin()->second; }
Rational multiset_weight(const Map& counts) {
  std::vector<int> mult;
  mult.reserve(counts.size());
  for (const auto& kv : counts) mult.push_back(static_cast<int>(kv.second));
  return multiset_weight(std::span<const int>(mult));
}

}  // namespace juryconv
