#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "juryconv/conv_matrix.hpp"

namespace testing {

using juryconv::Complex;
using juryconv::ConvMatrix;
using juryconv::Rational;

inline Rational q(const char* s) { return Rational::parse(s); }

inline ConvMatrix<Rational> rmat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    std::vector<Rational> out;
    for (long v : row) out.emplace_back(v);
    r.push_back(std::move(out));
  }
  return ConvMatrix<Rational>::from_rows(r);
}

inline ConvMatrix<Complex> cmat(const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<Complex>> r;
  for (const auto& row : rows) {
    std::vector<Complex> out;
    for (double v : row) out.emplace_back(v, 0.0);
    r.push_back(std::move(out));
  }
  return ConvMatrix<Complex>::from_rows(r);
}

inline double max_diff(const ConvMatrix<Complex>& a, const ConvMatrix<Complex>& b) {
  double m = 0.0;
  for (std::size_t t = 0; t < a.data().size(); ++t)
    m = std::max(m, std::abs(a.data()[t] - b.data()[t]));
  return m;
}

}  // namespace testing
