#pragma once

// PSD testing, samplers for PSD matrices with entries in (0, rho), and the
// experiments built on them: closure of PSD under convolution, preserver
// checks for smooth and stepped transforms, and explicit counterexamples.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "juryconv/function_spec.hpp"
#include "juryconv/transforms.hpp"

namespace juryconv {

inline constexpr double kDefaultPsdTolerance = 1e-8;

// Open interval (0, upper); upper may be +inf.
struct Interval {
  double upper = std::numeric_limits<double>::infinity();

  explicit Interval(double rho = std::numeric_limits<double>::infinity()) : upper(rho) {
    if (!(rho > 0)) throw Error("Interval: upper end must be positive");
  }
  bool contains(double x) const { return x > 0 && x < upper; }
  bool bounded() const { return std::isfinite(upper); }
  std::string str() const;
};

struct PsdVerdict {
  bool is_psd = true;
  double min_eigenvalue = 0.0;
  double tolerance = kDefaultPsdTolerance;
  double scale = 0.0;  // max |h_ij| of the tested matrix
};

// Symmetrizes (H + H*)/2 and decides min eig >= -tol * max(1, scale).
// Throws NotHermitian when H deviates from H* by more than tol * max(1, scale).
PsdVerdict is_psd(const ConvMatrix<Complex>& h, double tol = kDefaultPsdTolerance);
PsdVerdict is_psd(const ConvMatrix<Rational>& h, double tol = kDefaultPsdTolerance);

// G G^T with G entrywise positive (random rank), scaled by a positive factor
// so every entry lies in the interval. Real symmetric, PSD.
ConvMatrix<Complex> sample_psd(std::size_t n, const Interval& interval, std::uint64_t seed);

// Complex Hermitian PSD matrix G G* with unrestricted entries; only the
// closure experiment uses it.
ConvMatrix<Complex> sample_hermitian_psd(std::size_t n, std::uint64_t seed);

struct Violation {
  std::size_t trial = 0;
  ConvMatrix<Complex> matrix;  // input that produced the failure
  double min_eigenvalue = 0.0;
  std::optional<double> h;
};

struct ClosureReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = kDefaultPsdTolerance;
  bool hermitian = false;
  double worst_min_eigenvalue = 0.0;  // smallest normalized min eig seen
  std::vector<Violation> violations;
};

// Verdict on A <> B; nullopt when PSD.
std::optional<PsdVerdict> check_closure_pair(const ConvMatrix<Complex>& a,
                                             const ConvMatrix<Complex>& b,
                                             double tol = kDefaultPsdTolerance);

// Samples PSD pairs (real, or complex Hermitian when `hermitian`) and tests A <> B.
ClosureReport jury_closure_test(std::size_t n, std::size_t trials, std::uint64_t seed,
                                double tol = kDefaultPsdTolerance, bool hermitian = false);

struct PreserverMode {
  enum class Kind { smooth, stepped };
  Kind kind = Kind::smooth;
  std::vector<double> h_grid;  // stepped only, any order

  static PreserverMode smooth() { return {}; }
  static PreserverMode stepped(std::vector<double> grid) {
    return {Kind::stepped, std::move(grid)};
  }
};

struct PreserverReport {
  std::string function;
  std::size_t n = 0;
  Interval interval;
  PreserverMode mode;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = kDefaultPsdTolerance;
  std::size_t evaluations = 0;
  std::size_t skipped = 0;  // (trial, h) pairs whose nodes leave the interval
  std::vector<Violation> violations;
  // Stepped mode: per trial, the smallest admissible grid h and whether it passed.
  std::vector<std::optional<double>> smallest_h;
  std::vector<bool> smallest_h_passed;
};

// Samples A in P_N(I) and checks f<>(A) (or f<>(A)_h for each admissible h:
// a00 + 2(N-1)h < rho) for PSD.
PreserverReport preserver_test(const FunctionSpec& f, std::size_t n, const Interval& interval,
                               const PreserverMode& mode, std::size_t trials,
                               std::uint64_t seed, double tol = kDefaultPsdTolerance);

// A = diag(x, x, 0, ..., 0) + eps * 1.
ConvMatrix<Complex> horn_matrix(std::size_t n, double x, double eps);

struct HornWitness {
  ConvMatrix<Complex> matrix;
  ConvMatrix<Complex> transform;
  std::vector<double> diagonal;       // f<>(A)_{kk}
  std::vector<double> leading_terms;  // (x+eps)^k f^{(k)}(x+eps) / k!
  PsdVerdict verdict;
};

HornWitness horn_witness(std::size_t n, const FunctionSpec& f, double x, double eps,
                         double tol = kDefaultPsdTolerance);

struct HCounterexample {
  ConvMatrix<Rational> matrix;
  Rational h;
  ConvMatrix<Rational> transform;
  Rational determinant;
  PsdVerdict verdict;
};

// Stepped transform of f = x^2 on a 2x2 matrix with step h (exact arithmetic).
HCounterexample stepped_square_check(const ConvMatrix<Rational>& a, const Rational& h);
// The same on the all-ones 2x2 matrix.
HCounterexample schoenberg_h_counterexample(const Rational& h = Rational(2));

struct FractionalPowerEntry {
  double alpha = 0.0;
  std::size_t trials = 0;
  std::size_t random_violations = 0;
  double worst_random_min_eig = 0.0;
  std::optional<Violation> first_violation;
  // Deterministic attempt; absent when f is not defined on the witness.
  std::optional<PsdVerdict> horn;
  // B(alpha, A) data for alpha > N - 2 (empirical only).
  std::size_t b_tested = 0;
  std::size_t b_non_psd = 0;
  double worst_b_min_eig = 0.0;

  bool violation_found() const {
    return random_violations > 0 || (horn && !horn->is_psd);
  }
};

struct FractionalPowerReport {
  std::size_t n = 0;
  Interval interval;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = kDefaultPsdTolerance;
  bool include_b = false;
  std::vector<FractionalPowerEntry> entries;
};

FractionalPowerReport fractional_power_study(std::size_t n, const std::vector<double>& alphas,
                                             const Interval& interval, std::size_t trials,
                                             bool include_b, std::uint64_t seed,
                                             double tol = kDefaultPsdTolerance);

}  // namespace juryconv
