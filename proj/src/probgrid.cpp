#include "juryconv/probgrid.hpp"

#include "juryconv/random.hpp"

namespace juryconv {

namespace {

template <FieldScalar T>
ChainReport chain(const ConvMatrix<T>& p, std::size_t k_max, double tol) {
  ChainReport rep;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const PsdVerdict v = is_psd(window(p, k, k), tol);
    rep.verdicts.push_back(v);
    if (!v.is_psd && !rep.first_failure) rep.first_failure = k;
  }
  return rep;
}

Rational rational_power(const Rational& x, unsigned k) {
  Rational r(1);
  for (unsigned t = 0; t < k; ++t) r = r * x;
  return r;
}

}  // namespace

ChainReport psd_chain_check(const ConvMatrix<Complex>& p, std::size_t k_max, double tol) {
  return chain(p, k_max, tol);
}

ChainReport psd_chain_check(const ConvMatrix<Rational>& p, std::size_t k_max, double tol) {
  return chain(p, k_max, tol);
}

bool SemiInfiniteReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

bool nonannihilation_holds(const ConvMatrix<Rational>& a, unsigned cap, std::string* detail) {
  for (const auto& x : a.data())
    if (x.sign() < 0) throw Error("nonannihilation_holds: A must be entrywise nonnegative");
  ConvMatrix<Rational> shifted = a;
  shifted(0, 0) = Rational(0);
  bool any = false;
  ConvMatrix<Rational> power{{Rational(1)}};
  for (unsigned kappa = 1; kappa <= cap; ++kappa) {
    power = padded_conv(power, shifted);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if ((i == 0 && j == 0) || a(i, j).is_zero()) continue;
        any = true;
        const Rational bound = rational_power(a(i, j), kappa);
        const Rational got = power(kappa * i, kappa * j);
        if (got < bound) {
          if (detail)
            *detail = "kappa=" + std::to_string(kappa) + " at (" + std::to_string(kappa * i) +
                      "," + std::to_string(kappa * j) + "): " + got.str() + " < " + bound.str();
          return false;
        }
      }
  }
  if (!any) {
    if (detail) *detail = "no positive entry off the origin";
    return false;
  }
  return true;
}

bool diagonal_shift_holds(unsigned cap, std::string* detail) {
  const ConvMatrix<Rational> a{{Rational(0), Rational(0)}, {Rational(0), Rational(1)}};
  // Padded powers, with A^0 = [[1]].
  std::vector<ConvMatrix<Rational>> powers{ConvMatrix<Rational>{{Rational(1)}}};
  for (unsigned n = 1; n <= cap; ++n) {
    powers.push_back(padded_conv(powers.back(), a));
    const auto& pw = powers.back();
    for (std::size_t i = 0; i < pw.rows(); ++i)
      for (std::size_t j = 0; j < pw.cols(); ++j) {
        const Rational want = (i == n && j == n) ? Rational(1) : Rational(0);
        if (pw(i, j) != want) {
          if (detail)
            *detail = "power " + std::to_string(n) + " differs at (" + std::to_string(i) +
                      "," + std::to_string(j) + ")";
          return false;
        }
      }
  }
  // p(z) = 1 + 2z + ... + (cap+1) z^cap
  const std::size_t side = cap + 1;
  ConvMatrix<Rational> sum(side, side);
  for (unsigned n = 0; n <= cap; ++n)
    sum = add(sum, scale(Rational(static_cast<long>(n + 1)), window(powers[n], side, side)));
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      const Rational want = i == j ? Rational(static_cast<long>(i + 1)) : Rational(0);
      if (sum(i, j) != want) {
        if (detail)
          *detail = "p<>(A) differs at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  return true;
}

SemiInfiniteReport semiinfinite_checks(unsigned cap, std::uint64_t seed) {
  SemiInfiniteReport rep;
  rep.cap = cap;
  auto record = [&](std::string name, auto&& fn) {
    std::string detail;
    const bool ok = fn(&detail);
    rep.checks.push_back({std::move(name), ok, ok ? "" : detail});
  };
  record("diag(0,1) padded powers", [&](std::string* d) { return diagonal_shift_holds(cap, d); });

  std::vector<std::pair<std::string, ConvMatrix<Rational>>> inputs;
  inputs.emplace_back("[[0,1],[0,0]]",
                      ConvMatrix<Rational>{{Rational(0), Rational(1)}, {Rational(0), Rational(0)}});
  inputs.emplace_back("[[2,0],[0,3]]",
                      ConvMatrix<Rational>{{Rational(2), Rational(0)}, {Rational(0), Rational(3)}});
  Rng rng(seed);
  for (int t = 0; t < 5; ++t) {
    const auto rows = static_cast<std::size_t>(rng.integer(1, 3));
    const auto cols = static_cast<std::size_t>(rng.integer(rows == 1 ? 2 : 1, 3));
    auto m = random_rational_matrix(rows, cols, rng, 5, 3);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = abs(m(i, j));
    m(rows - 1, cols - 1) = m(rows - 1, cols - 1) + Rational(1);  // ensure a positive entry
    inputs.emplace_back("seeded nonnegative #" + std::to_string(t), std::move(m));
  }
  for (auto& [name, m] : inputs)
    record("non-annihilation " + name,
           [&](std::string* d) { return nonannihilation_holds(m, cap, d); });
  return rep;
}

}  // namespace juryconv
