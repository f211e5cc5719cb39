#include "juryconv/numerics.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "juryconv/errors.hpp"

namespace juryconv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw ParseError("", "bad exponent in number '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
        (ip.empty() && fp.empty()))
      throw ParseError("", "bad number '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s))
      throw ParseError("", "bad number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  BigInt num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_len;
  if (shift >= 0) return Rational(BigInt(num * pow10(static_cast<unsigned>(shift))), BigInt(1));
  return Rational(num, pow10(static_cast<unsigned>(-shift)));
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("", "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view p = text.substr(0, slash), q = text.substr(slash + 1);
    std::string_view pd = p;
    if (!pd.empty() && (pd.front() == '-' || pd.front() == '+')) pd.remove_prefix(1);
    if (!all_digits(pd) || !all_digits(q))
      throw ParseError("", "bad rational '" + std::string(text) + "'");
    BigInt num(std::string(pd), 10);
    if (!p.empty() && p.front() == '-') num = -num;
    BigInt den(std::string(q), 10);
    if (den == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(text);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

// mpq_get_d truncates; step to whichever neighbour is exactly closest.
double Rational::to_double() const {
  const double d = v_.get_d();
  if (!std::isfinite(d)) return d;
  double best = d;
  mpq_class best_err = abs(mpq_class(d) - v_);
  for (double cand : {std::nextafter(d, -HUGE_VAL), std::nextafter(d, HUGE_VAL)}) {
    if (!std::isfinite(cand)) continue;
    const mpq_class err = abs(mpq_class(cand) - v_);
    if (err < best_err) {
      best = cand;
      best_err = err;
    }
  }
  return best;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

bool ScalarTraits<Complex>::is_finite(const Complex& x) {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}

bool approx_equal(const Complex& a, const Complex& b, double rel_tol,
                  double abs_tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= abs_tol + rel_tol * scale;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

double falling_factorial(double alpha, unsigned k) {
  double r = 1.0;
  for (unsigned j = 0; j < k; ++j) r *= alpha - static_cast<double>(j);
  return r;
}

double generalized_binomial(double alpha, unsigned k) {
  double r = 1.0;
  for (unsigned j = 0; j < k; ++j)
    r *= (alpha - static_cast<double>(j)) / static_cast<double>(j + 1);
  return r;
}

FactorialTable::FactorialTable(unsigned cap) : table_(cap + 1) {
  table_[0] = 1;
  for (unsigned n = 1; n <= cap; ++n) table_[n] = table_[n - 1] * n;
}

BigInt FactorialTable::operator()(unsigned n) const {
  if (n < table_.size()) return table_[n];
  BigInt r = table_.back();
  for (unsigned m = static_cast<unsigned>(table_.size()); m <= n; ++m) r *= m;
  return r;
}

BigInt factorial(unsigned n) {
  static const FactorialTable table;
  return table(n);
}

Rational multiset_weight(std::span<const int> multiplicities) {
  BigInt den = 1;
  for (int c : multiplicities) {
    if (c < 1) throw Error("multiset multiplicities must be >= 1");
    den *= factorial(static_cast<unsigned>(c));
  }
  return Rational(BigInt(1), den);
}

}  // namespace juryconv
