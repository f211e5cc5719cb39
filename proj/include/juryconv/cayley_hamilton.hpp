#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>

#include "juryconv/transforms.hpp"

namespace juryconv {

// Vanishing test used by the float backend: |x| <= 1e-10 * max|a_ij|.
template <FieldScalar T>
double vanishing_tolerance(const ConvMatrix<T>& a) {
  if constexpr (ScalarTraits<T>::exact) return 0.0;
  else return 1e-10 * a.max_abs();
}

// True iff (z - a00)^{M+N-1} annihilates A under convolution.
template <FieldScalar T>
bool ch_check(const ConvMatrix<T>& a) {
  const unsigned k = static_cast<unsigned>(a.rows() + a.cols() - 1);
  const auto r = poly_transform(Poly<T>::linear_power(a(0, 0), k), a);
  return r.is_zero(vanishing_tolerance(a));
}

template <FieldScalar T>
struct AnnihilatorReport {
  T root;                   // a00
  unsigned ch_degree = 0;   // M + N - 1
  unsigned minimal_degree = 0;
  // Entry of (A - a00 I<>)^{<>(kappa-1)} that is nonzero (kappa >= 2).
  std::optional<GridIndex> witness;
  unsigned nilpotency_index = 0;  // direct cross-check, equals minimal_degree

  std::string polynomial_str() const {
    std::ostringstream os;
    os << "(z - " << root << ")^" << minimal_degree;
    return os.str();
  }
};

// Minimal annihilating polynomial (z - a00)^kappa. kappa is the smallest
// order whose elementary sums E_kappa(i,j) vanish for every i + j >= kappa,
// then confirmed against the first vanishing power of A - a00 I<>.
template <FieldScalar T>
AnnihilatorReport<T> minimal_polynomial(const ConvMatrix<T>& a) {
  const unsigned ch = static_cast<unsigned>(a.rows() + a.cols() - 1);
  const double tol = vanishing_tolerance(a);

  unsigned kappa = ch;
  for (unsigned k = 1; k < ch; ++k) {
    bool vanishes = true;
    for (std::size_t i = 0; i < a.rows() && vanishes; ++i)
      for (std::size_t j = 0; j < a.cols() && vanishes; ++j) {
        if (i + j < k || (i == 0 && j == 0)) continue;
        const T e = elementary_sum(a, static_cast<int>(k),
                                   {static_cast<int>(i), static_cast<int>(j)});
        if (!ScalarTraits<T>::is_zero(e, tol)) vanishes = false;
      }
    if (vanishes) {
      kappa = k;
      break;
    }
  }

  const ConvMatrix<T> shifted = shift_origin(a);
  ConvMatrix<T> power = conv_identity<T>(a.rows(), a.cols());
  ConvMatrix<T> previous = power;
  unsigned nil = 0;
  for (unsigned k = 1; k <= ch; ++k) {
    previous = power;
    power = conv(power, shifted);
    if (power.is_zero(tol)) {
      nil = k;
      break;
    }
  }
  // Exact backends must agree; float backends report both values.
  if (ScalarTraits<T>::exact && nil != kappa)
    throw Error("minimal_polynomial: partition criterion gave " + std::to_string(kappa) +
                " but nilpotency index is " + std::to_string(nil));

  AnnihilatorReport<T> rep{a(0, 0), ch, kappa, std::nullopt, nil};
  if (kappa >= 2) {
    for (std::size_t i = 0; i < a.rows() && !rep.witness; ++i)
      for (std::size_t j = 0; j < a.cols() && !rep.witness; ++j)
        if (!ScalarTraits<T>::is_zero(previous(i, j), tol))
          rep.witness = GridIndex{static_cast<int>(i), static_cast<int>(j)};
  }
  return rep;
}

}  // namespace juryconv
