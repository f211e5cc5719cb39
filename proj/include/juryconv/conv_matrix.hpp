#pragma once

// The convolution ("Jury") ring on M x N matrices:
//
//   (A <> B)_{ij} = sum_{l <= i, k <= j} a_{lk} b_{i-l, j-k}
//
// with identity I<> = e_{00}. Indexing is zero-based over [0:M-1] x [0:N-1].

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "juryconv/errors.hpp"
#include "juryconv/numerics.hpp"

namespace juryconv {

template <Scalar T>
class ConvMatrix {
 public:
  using value_type = T;

  ConvMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero()) {
    if (rows == 0 || cols == 0) throw ShapeMismatch("matrix must be at least 1x1");
  }

  ConvMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw ShapeMismatch("matrix must be at least 1x1");
    if (data_.size() != rows * cols)
      throw ShapeMismatch("data size does not match " + shape_str(rows, cols));
    for (const T& x : data_)
      if (!ScalarTraits<T>::is_finite(x))
        throw Error("non-finite entry in matrix");
  }

  // Row-major nested initializer, e.g. {{1, 2}, {3, 4}}.
  ConvMatrix(std::initializer_list<std::initializer_list<T>> rows)
      : ConvMatrix(from_rows(std::vector<std::vector<T>>(rows.begin(), rows.end()))) {}

  static ConvMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty() || rows.front().empty())
      throw ShapeMismatch("matrix must be at least 1x1");
    std::vector<T> data;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw ShapeMismatch("ragged rows");
      data.insert(data.end(), r.begin(), r.end());
    }
    return ConvMatrix(rows.size(), rows.front().size(), std::move(data));
  }

  static ConvMatrix zeros(std::size_t rows, std::size_t cols) {
    return ConvMatrix(rows, cols);
  }

  static ConvMatrix constant(std::size_t rows, std::size_t cols, const T& v) {
    return ConvMatrix(rows, cols, std::vector<T>(rows * cols, v));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool same_shape(const ConvMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  // Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const T& x : data_) m = std::max(m, ScalarTraits<T>::magnitude(x));
    return m;
  }

  bool is_zero(double tol = 0.0) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const T& x) {
      return ScalarTraits<T>::is_zero(x, tol);
    });
  }

  friend bool operator==(const ConvMatrix& a, const ConvMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
  }
  std::string shape_str() const { return shape_str(rows_, cols_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {
template <Scalar T>
void require_same_shape(const ConvMatrix<T>& a, const ConvMatrix<T>& b,
                        const char* op) {
  if (!a.same_shape(b))
    throw ShapeMismatch(std::string(op) + ": shape mismatch " + a.shape_str() +
                        " vs " + b.shape_str());
}
}  // namespace detail

template <Scalar T>
ConvMatrix<T> conv_identity(std::size_t rows, std::size_t cols) {
  ConvMatrix<T> r(rows, cols);
  r(0, 0) = ScalarTraits<T>::one();
  return r;
}

template <Scalar T>
ConvMatrix<T> all_ones(std::size_t rows, std::size_t cols) {
  return ConvMatrix<T>::constant(rows, cols, ScalarTraits<T>::one());
}

// Truncated 2-D convolution on a common shape.
template <Scalar T>
ConvMatrix<T> conv(const ConvMatrix<T>& a, const ConvMatrix<T>& b) {
  detail::require_same_shape(a, b, "conv");
  const std::size_t m = a.rows(), n = a.cols();
  ConvMatrix<T> c(m, n);
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      const T& alk = a(l, k);
      if (ScalarTraits<T>::is_zero(alk)) continue;
      for (std::size_t i = l; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) c(i, j) += alk * b(i - l, j - k);
    }
  }
  return c;
}

template <Scalar T>
ConvMatrix<T> add(const ConvMatrix<T>& a, const ConvMatrix<T>& b) {
  detail::require_same_shape(a, b, "add");
  std::vector<T> d = a.data();
  for (std::size_t t = 0; t < d.size(); ++t) d[t] += b.data()[t];
  return ConvMatrix<T>(a.rows(), a.cols(), std::move(d));
}

template <Scalar T>
ConvMatrix<T> subtract(const ConvMatrix<T>& a, const ConvMatrix<T>& b) {
  detail::require_same_shape(a, b, "subtract");
  std::vector<T> d = a.data();
  for (std::size_t t = 0; t < d.size(); ++t) d[t] -= b.data()[t];
  return ConvMatrix<T>(a.rows(), a.cols(), std::move(d));
}

template <Scalar T>
ConvMatrix<T> scale(const T& alpha, const ConvMatrix<T>& a) {
  std::vector<T> d = a.data();
  for (T& x : d) x = alpha * x;
  return ConvMatrix<T>(a.rows(), a.cols(), std::move(d));
}

template <Scalar T>
ConvMatrix<T> transpose(const ConvMatrix<T>& a) {
  ConvMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

// A - a00 I<>
template <Scalar T>
ConvMatrix<T> shift_origin(const ConvMatrix<T>& a) {
  ConvMatrix<T> r = a;
  r(0, 0) = ScalarTraits<T>::zero();
  return r;
}

// A^{<>k} by left-folded repeated products; k = 0 gives I<>.
template <Scalar T>
ConvMatrix<T> conv_power_naive(const ConvMatrix<T>& a, unsigned k) {
  ConvMatrix<T> r = conv_identity<T>(a.rows(), a.cols());
  for (unsigned s = 0; s < k; ++s) r = conv(r, a);
  return r;
}

// A^{<>k} by binary exponentiation.
template <Scalar T>
ConvMatrix<T> conv_power_squaring(const ConvMatrix<T>& a, unsigned k) {
  ConvMatrix<T> result = conv_identity<T>(a.rows(), a.cols());
  ConvMatrix<T> base = a;
  while (k > 0) {
    if (k & 1u) result = conv(result, base);
    k >>= 1u;
    if (k > 0) base = conv(base, base);
  }
  return result;
}

namespace detail {

template <FieldScalar T>
void require_invertible(const ConvMatrix<T>& a) {
  if constexpr (ScalarTraits<T>::exact) {
    if (a(0, 0) == ScalarTraits<T>::zero())
      throw SingularMatrix("singular: a00 = 0 has no convolution inverse", "0");
  } else {
    const double threshold = 1e-12 * std::max(1.0, a.max_abs());
    if (ScalarTraits<T>::magnitude(a(0, 0)) <= threshold) {
      std::ostringstream os;
      os << a(0, 0);
      throw SingularMatrix("singular: |a00| = " + os.str() +
                               " is below the singularity threshold",
                           os.str());
    }
  }
}

}  // namespace detail

// Inverse by back-substitution along anti-diagonals i + j = 1, 2, ...
template <FieldScalar T>
ConvMatrix<T> conv_inverse_recursive(const ConvMatrix<T>& a) {
  detail::require_invertible(a);
  const std::size_t m = a.rows(), n = a.cols();
  const T inv00 = ScalarTraits<T>::one() / a(0, 0);
  ConvMatrix<T> b(m, n);
  b(0, 0) = inv00;
  for (std::size_t d = 1; d + 1 < m + n; ++d) {
    const std::size_t i_lo = d >= n ? d - n + 1 : 0;
    const std::size_t i_hi = std::min(d, m - 1);
    for (std::size_t i = i_lo; i <= i_hi; ++i) {
      const std::size_t j = d - i;
      T s = ScalarTraits<T>::zero();
      for (std::size_t l = 0; l <= i; ++l)
        for (std::size_t k = 0; k <= j; ++k) {
          if (l == 0 && k == 0) continue;
          s += a(l, k) * b(i - l, j - k);
        }
      b(i, j) = -(inv00 * s);
    }
  }
  return b;
}

// Inverse through the annihilating polynomial (z - a00)^{M+N-1}:
//   A^{-1} = -sum_{j=1}^{K} C(K, j) (-1/a00)^j A^{<>(j-1)},  K = M+N-1.
template <FieldScalar T>
ConvMatrix<T> conv_inverse_ch(const ConvMatrix<T>& a) {
  detail::require_invertible(a);
  const unsigned k = static_cast<unsigned>(a.rows() + a.cols() - 1);
  const T neg_inv = -(ScalarTraits<T>::one() / a(0, 0));
  ConvMatrix<T> sum(a.rows(), a.cols());
  ConvMatrix<T> power = conv_identity<T>(a.rows(), a.cols());
  T coeff_power = neg_inv;
  for (unsigned j = 1; j <= k; ++j) {
    const T c = ScalarTraits<T>::from_rational(Rational(binomial(k, j))) * coeff_power;
    sum = add(sum, scale(c, power));
    power = conv(power, a);
    coeff_power = coeff_power * neg_inv;
  }
  return scale(-ScalarTraits<T>::one(), sum);
}

// Rational -> complex entrywise.
inline ConvMatrix<Complex> to_complex(const ConvMatrix<Rational>& a) {
  std::vector<Complex> d;
  d.reserve(a.data().size());
  for (const auto& x : a.data()) d.push_back(ScalarTraits<Complex>::from_rational(x));
  return ConvMatrix<Complex>(a.rows(), a.cols(), std::move(d));
}

}  // namespace juryconv
