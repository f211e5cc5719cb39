#pragma once

// Full (non-truncating) convolution on growing windows, finitely supported
// distributions on Z>=0 x Z>=0, and the semi-infinite checks.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "juryconv/positivity.hpp"

namespace juryconv {

// (M1+M2-1) x (N1+N2-1) full convolution.
template <Scalar T>
ConvMatrix<T> padded_conv(const ConvMatrix<T>& a, const ConvMatrix<T>& b) {
  ConvMatrix<T> c(a.rows() + b.rows() - 1, a.cols() + b.cols() - 1);
  for (std::size_t l = 0; l < a.rows(); ++l)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(l, k);
      if (ScalarTraits<T>::is_zero(x)) continue;
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(l + i, k + j) += x * b(i, j);
    }
  return c;
}

// Top-left rows x cols window, zero-padded if the source is smaller.
template <Scalar T>
ConvMatrix<T> window(const ConvMatrix<T>& a, std::size_t rows, std::size_t cols) {
  ConvMatrix<T> w(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, a.rows()); ++i)
    for (std::size_t j = 0; j < std::min(cols, a.cols()); ++j) w(i, j) = a(i, j);
  return w;
}

// p_ij = Prob(X = (i,j)) on a finite window.
template <FieldScalar T>
class GridDistribution {
 public:
  explicit GridDistribution(ConvMatrix<T> p) : p_(std::move(p)) {
    T total = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < p_.rows(); ++i)
      for (std::size_t j = 0; j < p_.cols(); ++j) {
        const T& x = p_(i, j);
        bool negative;
        if constexpr (ScalarTraits<T>::exact) negative = x.sign() < 0;
        else negative = x.imag() != 0.0 || x.real() < 0.0;
        if (negative)
          throw Error("distribution entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") is not a nonnegative real");
        total += x;
      }
    bool unit;
    if constexpr (ScalarTraits<T>::exact) unit = total == Rational(1);
    else unit = std::abs(total - Complex(1.0)) <= 1e-12;
    if (!unit) throw Error("distribution mass must be 1");
  }

  static GridDistribution point_mass(std::size_t i, std::size_t j) {
    ConvMatrix<T> p(i + 1, j + 1);
    p(i, j) = ScalarTraits<T>::one();
    return GridDistribution(std::move(p));
  }

  const ConvMatrix<T>& matrix() const { return p_; }

  friend bool operator==(const GridDistribution&, const GridDistribution&) = default;

 private:
  ConvMatrix<T> p_;
};

// Law of X_1 + ... + X_k for independent X_t.
template <FieldScalar T>
GridDistribution<T> sum_distribution(std::span<const GridDistribution<T>> dists) {
  if (dists.empty()) throw Error("sum_distribution: empty list");
  ConvMatrix<T> acc = dists.front().matrix();
  for (std::size_t t = 1; t < dists.size(); ++t) acc = padded_conv(acc, dists[t].matrix());
  return GridDistribution<T>(std::move(acc));
}

struct ChainReport {
  std::vector<PsdVerdict> verdicts;  // k = 1 .. k_max
  std::optional<std::size_t> first_failure;  // smallest failing k

  bool all_psd() const { return !first_failure.has_value(); }
};

// PSD status of each leading k x k block (zero-padded past the window).
ChainReport psd_chain_check(const ConvMatrix<Complex>& p, std::size_t k_max,
                            double tol = kDefaultPsdTolerance);
ChainReport psd_chain_check(const ConvMatrix<Rational>& p, std::size_t k_max,
                            double tol = kDefaultPsdTolerance);

struct SemiInfiniteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SemiInfiniteReport {
  unsigned cap = 6;
  std::vector<SemiInfiniteCheck> checks;

  bool all_passed() const;
};

// For nonnegative A, every (i,j) != 0 with a_ij > 0 and every kappa <= cap:
// ((A - a00 I)^{<>kappa})_{kappa i, kappa j} >= a_ij^kappa on padded windows.
bool nonannihilation_holds(const ConvMatrix<Rational>& a, unsigned cap, std::string* detail = nullptr);

// Padded powers of diag(0,1) are e_{nn}, and p<>(diag(0,1)) carries the
// coefficients of p along the diagonal.
bool diagonal_shift_holds(unsigned cap, std::string* detail = nullptr);

// Runs both propositions on fixed and seeded nonnegative inputs.
SemiInfiniteReport semiinfinite_checks(unsigned cap = 6, std::uint64_t seed = 1);

}  // namespace juryconv
