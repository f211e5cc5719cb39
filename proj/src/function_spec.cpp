#include "juryconv/function_spec.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "juryconv/errors.hpp"

namespace juryconv {

namespace {

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

FunctionSpec FunctionSpec::polynomial(std::vector<Rational> coeffs) {
  FunctionSpec f;
  f.kind_ = Kind::polynomial;
  trim(coeffs);
  f.poly_ = std::move(coeffs);
  return f;
}

FunctionSpec FunctionSpec::power(double alpha) {
  if (!std::isfinite(alpha)) throw Error("power exponent must be finite");
  FunctionSpec f;
  f.kind_ = Kind::power;
  f.alpha_ = alpha;
  return f;
}

FunctionSpec FunctionSpec::exponential() { return FunctionSpec{}; }

FunctionSpec FunctionSpec::series(std::vector<double> coeffs, double radius) {
  if (!(radius > 0)) throw Error("series radius must be positive");
  FunctionSpec f;
  f.kind_ = Kind::series;
  f.series_ = std::move(coeffs);
  f.radius_ = radius;
  return f;
}

FunctionSpec FunctionSpec::with_differentiability(int order) const {
  if (order < 0) throw Error("differentiability order must be >= 0");
  FunctionSpec f = *this;
  f.diff_order_ = order;
  return f;
}

bool FunctionSpec::in_domain(double x) const {
  if (!std::isfinite(x)) return false;
  switch (kind_) {
    case Kind::power: return x > 0;
    case Kind::series: return std::abs(x) < radius_;
    default: return true;
  }
}

double FunctionSpec::derivative(unsigned order, double x) const {
  if (!in_domain(x))
    throw DomainError(describe() + " is not defined at x = " + fmt(x), x);
  if (diff_order_ && static_cast<int>(order) > *diff_order_)
    throw Error(describe() + " is only declared " + std::to_string(*diff_order_) +
                " times differentiable");
  switch (kind_) {
    case Kind::exp: return std::exp(x);
    case Kind::power: {
      const double ff = falling_factorial(alpha_, order);
      if (ff == 0.0) return 0.0;
      return ff * std::pow(x, alpha_ - static_cast<double>(order));
    }
    case Kind::polynomial: {
      double r = 0.0;
      for (std::size_t k = poly_.size(); k-- > order;)
        r = r * x + poly_[k].to_double() * falling_factorial(static_cast<double>(k), order);
      return r;
    }
    case Kind::series: {
      double r = 0.0;
      for (std::size_t k = series_.size(); k-- > order;)
        r = r * x + series_[k] * falling_factorial(static_cast<double>(k), order);
      return r;
    }
  }
  return 0.0;
}

Rational FunctionSpec::derivative_exact(unsigned order, const Rational& x) const {
  if (kind_ != Kind::polynomial)
    throw Error(describe() + " has no exact rational evaluation");
  if (diff_order_ && static_cast<int>(order) > *diff_order_)
    throw Error(describe() + " is only declared " + std::to_string(*diff_order_) +
                " times differentiable");
  Rational r(0);
  for (std::size_t k = poly_.size(); k-- > order;) {
    BigInt ff = 1;
    for (unsigned j = 0; j < order; ++j) ff *= static_cast<unsigned long>(k - j);
    r = r * x + poly_[k] * Rational(ff);
  }
  return r;
}

std::string FunctionSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::exp: os << "exp"; break;
    case Kind::power: os << "x^" << alpha_; break;
    case Kind::polynomial: {
      os << "poly[";
      for (std::size_t k = 0; k < poly_.size(); ++k) os << (k ? "," : "") << poly_[k];
      os << "]";
      break;
    }
    case Kind::series: {
      os << "series[";
      for (std::size_t k = 0; k < series_.size(); ++k) os << (k ? "," : "") << series_[k];
      os << "; radius " << radius_ << "]";
      break;
    }
  }
  return os.str();
}

namespace {

void check_nodes(const FunctionSpec& f, double x, double h, unsigned order) {
  if (!(h > 0)) throw Error("step size h must be positive");
  for (unsigned j = 0; j <= order; ++j) {
    const double node = x + j * h;
    if (!f.in_domain(node))
      throw DomainError("difference node x + " + std::to_string(j) + "h = " +
                            fmt(node) + " leaves the domain of " + f.describe(),
                        node);
  }
}

}  // namespace

namespace {

// Distance from x within which the Taylor expansion of f about x converges.
double taylor_radius(const FunctionSpec& f, double x) {
  switch (f.kind()) {
    case FunctionSpec::Kind::exp:
    case FunctionSpec::Kind::polynomial: return std::numeric_limits<double>::infinity();
    case FunctionSpec::Kind::power:
      if (f.alpha() >= 0 && std::floor(f.alpha()) == f.alpha())
        return std::numeric_limits<double>::infinity();
      return x;
    case FunctionSpec::Kind::series: return f.radius() - std::abs(x);
  }
  return 0.0;
}

constexpr std::size_t kKernelTerms = 160;

// Coefficients of ((e^t - 1) / t)^order up to t^(kKernelTerms-1); all positive.
const std::vector<double>& difference_kernel(unsigned order) {
  static std::mutex mutex;
  static std::map<unsigned, std::vector<double>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::vector<double> g(kKernelTerms);
  double fact = 1.0;
  for (std::size_t k = 0; k < kKernelTerms; ++k) {
    fact *= static_cast<double>(k + 1);
    g[k] = 1.0 / fact;
  }
  std::vector<double> acc(kKernelTerms, 0.0);
  acc[0] = 1.0;
  for (unsigned p = 0; p < order; ++p) {
    std::vector<double> next(kKernelTerms, 0.0);
    for (std::size_t i = 0; i < kKernelTerms; ++i)
      for (std::size_t j = 0; i + j < kKernelTerms; ++j) next[i + j] += acc[i] * g[j];
    acc = std::move(next);
  }
  return cache.emplace(order, std::move(acc)).first->second;
}

// D_h^l f(x) = sum_k [t^k]((e^t-1)/t)^l h^k f^{(l+k)}(x), the expansion of
// ((e^{hD} - 1)/h)^l. Avoids the cancellation of the alternating sum when
// l*h is small; nullopt when the expansion is not applicable.
std::optional<double> divided_difference_series(const FunctionSpec& f, double x, double h,
                                                unsigned order) {
  if (f.differentiability()) return std::nullopt;
  const double reach = static_cast<double>(order) * h;
  if (!(reach <= std::min(0.25 * taylor_radius(f, x), 2.0))) return std::nullopt;
  const auto& kernel = difference_kernel(order);
  double sum = 0.0, hk = 1.0;
  int quiet = 0;
  for (std::size_t k = 0; k < kKernelTerms; ++k, hk *= h) {
    const double term = kernel[k] * hk * f.derivative(order + static_cast<unsigned>(k), x);
    if (!std::isfinite(term)) return std::nullopt;
    sum += term;
    quiet = std::abs(term) <= 1e-18 * std::abs(sum) ? quiet + 1 : 0;
    if (quiet >= 3 || (f.kind() == FunctionSpec::Kind::polynomial &&
                       order + k + 1 >= f.poly_coeffs().size()))
      return sum;
  }
  return std::nullopt;
}

double forward_difference_direct(const FunctionSpec& f, double x, double h, unsigned order) {
  double s = 0.0;
  for (unsigned j = 0; j <= order; ++j) {
    const double c = binomial(order, j).get_d();
    const double term = c * f.value(x + j * h);
    s += ((order - j) % 2 == 0) ? term : -term;
  }
  return s;
}

}  // namespace

double forward_difference(const FunctionSpec& f, double x, double h, unsigned order) {
  check_nodes(f, x, h, order);
  if (order > 0)
    if (const auto d = divided_difference_series(f, x, h, order))
      return *d * std::pow(h, static_cast<double>(order));
  return forward_difference_direct(f, x, h, order);
}

Rational forward_difference(const FunctionSpec& f, const Rational& x,
                            const Rational& h, unsigned order) {
  if (h.sign() <= 0) throw Error("step size h must be positive");
  Rational s(0);
  for (unsigned j = 0; j <= order; ++j) {
    const Rational term =
        Rational(binomial(order, j)) * f.value_exact(x + Rational(j) * h);
    s += ((order - j) % 2 == 0) ? term : -term;
  }
  return s;
}

double divided_difference(const FunctionSpec& f, double x, double h, unsigned order) {
  check_nodes(f, x, h, order);
  if (order == 0) return f.value(x);
  if (const auto d = divided_difference_series(f, x, h, order)) return *d;
  return forward_difference_direct(f, x, h, order) / std::pow(h, static_cast<double>(order));
}

Rational divided_difference(const FunctionSpec& f, const Rational& x,
                            const Rational& h, unsigned order) {
  Rational hp(1);
  for (unsigned j = 0; j < order; ++j) hp *= h;
  return forward_difference(f, x, h, order) / hp;
}

}  // namespace juryconv
