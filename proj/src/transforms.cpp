#include "juryconv/transforms.hpp"

#include <sstream>

namespace juryconv {

namespace {

double real_origin(const ConvMatrix<Complex>& a) {
  const Complex a00 = a(0, 0);
  if (std::abs(a00.imag()) > 1e-12 * std::max(1.0, std::abs(a00)))
    throw DomainError("transforms evaluate f at real a00 only", a00.real());
  return a00.real();
}

void check_order(const FunctionSpec& f, std::size_t rows, std::size_t cols) {
  const int need = static_cast<int>(rows + cols) - 2;
  if (f.differentiability() && *f.differentiability() < need)
    throw Error(f.describe() + " is declared " + std::to_string(*f.differentiability()) +
                " times differentiable; a " + std::to_string(rows) + "x" +
                std::to_string(cols) + " transform needs " + std::to_string(need));
}

void check_finite(const ConvMatrix<Complex>& m) {
  for (const Complex& z : m.data())
    if (!ScalarTraits<Complex>::is_finite(z))
      throw Error("transform produced a non-finite entry");
}

}  // namespace

ConvMatrix<Complex> smooth_transform(const FunctionSpec& f, const ConvMatrix<Complex>& a) {
  check_order(f, a.rows(), a.cols());
  const double x = real_origin(a);
  if (!f.in_domain(x))
    throw DomainError("a00 = " + std::to_string(x) + " is outside the domain of " +
                          f.describe(),
                      x);
  const std::size_t need = a.rows() + a.cols() - 1;
  std::vector<Complex> c(need);
  for (std::size_t l = 0; l < need; ++l) c[l] = f.derivative(static_cast<unsigned>(l), x);
  auto out = transform_from_coefficients<Complex>(a, c);
  check_finite(out);
  return out;
}

ConvMatrix<Rational> smooth_transform(const FunctionSpec& f, const ConvMatrix<Rational>& a) {
  check_order(f, a.rows(), a.cols());
  const std::size_t need = a.rows() + a.cols() - 1;
  std::vector<Rational> c(need);
  for (std::size_t l = 0; l < need; ++l)
    c[l] = f.derivative_exact(static_cast<unsigned>(l), a(0, 0));
  return transform_from_coefficients<Rational>(a, c);
}

ConvMatrix<Complex> stepped_transform(const FunctionSpec& f, const ConvMatrix<Complex>& a,
                                      double h) {
  if (!(h > 0)) throw Error("step size h must be positive");
  const double x = real_origin(a);
  const std::size_t need = a.rows() + a.cols() - 1;
  for (std::size_t k = 0; k < need; ++k) {
    const double node = x + static_cast<double>(k) * h;
    if (!f.in_domain(node)) {
      std::ostringstream os;
      os.precision(17);
      os << "node a00 + " << k << "h = " << node << " leaves the domain of "
         << f.describe();
      throw DomainError(os.str(), node);
    }
  }
  std::vector<Complex> c(need);
  c[0] = f.value(x);
  for (std::size_t l = 1; l < need; ++l)
    c[l] = divided_difference(f, x, h, static_cast<unsigned>(l));
  auto out = transform_from_coefficients<Complex>(a, c);
  check_finite(out);
  return out;
}

ConvMatrix<Rational> stepped_transform(const FunctionSpec& f, const ConvMatrix<Rational>& a,
                                       const Rational& h) {
  if (h.sign() <= 0) throw Error("step size h must be positive");
  const std::size_t need = a.rows() + a.cols() - 1;
  std::vector<Rational> c(need);
  c[0] = f.value_exact(a(0, 0));
  for (std::size_t l = 1; l < need; ++l)
    c[l] = divided_difference(f, a(0, 0), h, static_cast<unsigned>(l));
  return transform_from_coefficients<Rational>(a, c);
}

namespace {

// Coefficient arrays truncated to degrees (< rows, < cols).
using Bivariate = std::vector<double>;

Bivariate truncated_product(const Bivariate& p, const Bivariate& q, std::size_t rows,
                            std::size_t cols) {
  Bivariate r(rows * cols, 0.0);
  for (std::size_t i1 = 0; i1 < rows; ++i1)
    for (std::size_t j1 = 0; j1 < cols; ++j1) {
      const double v = p[i1 * cols + j1];
      if (v == 0.0) continue;
      for (std::size_t i2 = 0; i1 + i2 < rows; ++i2)
        for (std::size_t j2 = 0; j1 + j2 < cols; ++j2)
          r[(i1 + i2) * cols + j1 + j2] += v * q[i2 * cols + j2];
    }
  return r;
}

}  // namespace

ConvMatrix<Complex> bivariate_power_matrix(double alpha, const ConvMatrix<Complex>& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  for (const Complex& z : a.data())
    if (z.imag() != 0.0) throw DomainError("B(alpha, A) needs real entries", z.real());
  const double a00 = a(0, 0).real();
  if (!(a00 > 0)) throw DomainError("B(alpha, A) needs a00 > 0", a00);

  Bivariate u(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (i || j) u[i * cols + j] = a(i, j).real() / a00;

  // F^alpha = a00^alpha * sum_k C(alpha, k) u^k; u^k vanishes below total
  // degree k, so k <= rows + cols - 2 suffices.
  Bivariate total(rows * cols, 0.0);
  Bivariate power(rows * cols, 0.0);
  power[0] = 1.0;
  const std::size_t kmax = rows + cols - 2;
  for (std::size_t k = 0; k <= kmax; ++k) {
    if (k > 0) power = truncated_product(power, u, rows, cols);
    const double c = generalized_binomial(alpha, static_cast<unsigned>(k));
    for (std::size_t t = 0; t < total.size(); ++t) total[t] += c * power[t];
  }
  const double lead = std::pow(a00, alpha);
  ConvMatrix<Complex> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(i, j) = lead * total[i * cols + j] * factorial(static_cast<unsigned>(i)).get_d() *
                  factorial(static_cast<unsigned>(j)).get_d();
  return out;
}

ConvMatrix<Complex> factorial_scaled(const ConvMatrix<Complex>& x) {
  ConvMatrix<Complex> out = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out(i, j) *= factorial(static_cast<unsigned>(i)).get_d() *
                   factorial(static_cast<unsigned>(j)).get_d();
  return out;
}

}  // namespace juryconv
