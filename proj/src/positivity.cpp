#include "juryconv/positivity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>

#include "juryconv/parallel.hpp"
#include "juryconv/random.hpp"

namespace juryconv {

std::string Interval::str() const {
  return "(0, " + (bounded() ? std::to_string(upper) : std::string("inf")) + ")";
}

PsdVerdict is_psd(const ConvMatrix<Complex>& h, double tol) {
  if (h.rows() != h.cols())
    throw ShapeMismatch("is_psd: matrix must be square, got " + h.shape_str());
  const std::size_t n = h.rows();
  const double scale = h.max_abs();
  const double bound = tol * std::max(1.0, scale);

  bool real = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > bound)
        throw NotHermitian("is_psd: entries (" + std::to_string(i) + "," + std::to_string(j) +
                           ") and (" + std::to_string(j) + "," + std::to_string(i) +
                           ") are not conjugate");
      if (h(i, j).imag() != 0.0) real = false;
    }

  double min_eig;
  if (real) {
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = 0.5 * (h(i, j).real() + h(j, i).real());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    min_eig = es.eigenvalues().minCoeff();
  } else {
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    min_eig = es.eigenvalues().minCoeff();
  }
  return {min_eig >= -bound, min_eig, tol, scale};
}

PsdVerdict is_psd(const ConvMatrix<Rational>& h, double tol) {
  return is_psd(to_complex(h), tol);
}

ConvMatrix<Complex> sample_psd(std::size_t n, const Interval& interval, std::uint64_t seed) {
  if (n == 0) throw ShapeMismatch("sample_psd: n must be >= 1");
  Rng rng(seed);
  const std::size_t rank = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
  std::vector<double> g(n * rank);
  // Squaring spreads the entries so samples are not all near-constant.
  for (double& x : g) {
    const double u = rng.uniform01();
    x = u * u;
  }
  std::vector<double> x(n * n, 0.0);
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < rank; ++r) s += g[i * rank + r] * g[j * rank + r];
      x[i * n + j] = s;
      largest = std::max(largest, s);
    }
  const double target = interval.bounded() ? rng.uniform(0.05, 0.95) * interval.upper
                                           : rng.uniform(0.1, 4.0);
  const double factor = target / largest;
  std::vector<Complex> d(n * n);
  for (std::size_t t = 0; t < n * n; ++t) d[t] = {x[t] * factor, 0.0};
  return ConvMatrix<Complex>(n, n, std::move(d));
}

ConvMatrix<Complex> sample_hermitian_psd(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ShapeMismatch("sample_hermitian_psd: n must be >= 1");
  Rng rng(seed);
  const std::size_t rank = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
  std::vector<Complex> g(n * rank);
  for (Complex& z : g) z = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  std::vector<Complex> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < rank; ++r) s += g[i * rank + r] * std::conj(g[j * rank + r]);
      d[i * n + j] = i == j ? Complex(s.real(), 0.0) : s;
    }
  // Make the result exactly Hermitian.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) d[i * n + j] = std::conj(d[j * n + i]);
  return ConvMatrix<Complex>(n, n, std::move(d));
}

std::optional<PsdVerdict> check_closure_pair(const ConvMatrix<Complex>& a,
                                             const ConvMatrix<Complex>& b, double tol) {
  const PsdVerdict v = is_psd(conv(a, b), tol);
  if (v.is_psd) return std::nullopt;
  return v;
}

namespace {

double normalized(const PsdVerdict& v) { return v.min_eigenvalue / std::max(1.0, v.scale); }

}  // namespace

ClosureReport jury_closure_test(std::size_t n, std::size_t trials, std::uint64_t seed,
                                double tol, bool hermitian) {
  ClosureReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.tolerance = tol;
  rep.hermitian = hermitian;

  std::vector<double> worst(trials, 0.0);
  std::vector<std::optional<Violation>> found(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t s = derive_seed(seed, t);
    const auto a = hermitian ? sample_hermitian_psd(n, derive_seed(s, 0))
                             : sample_psd(n, Interval(), derive_seed(s, 0));
    const auto b = hermitian ? sample_hermitian_psd(n, derive_seed(s, 1))
                             : sample_psd(n, Interval(), derive_seed(s, 1));
    const PsdVerdict v = is_psd(conv(a, b), tol);
    worst[t] = normalized(v);
    if (!v.is_psd) found[t] = Violation{t, conv(a, b), v.min_eigenvalue, std::nullopt};
  });
  for (std::size_t t = 0; t < trials; ++t) {
    rep.worst_min_eigenvalue = std::min(rep.worst_min_eigenvalue, worst[t]);
    if (found[t]) rep.violations.push_back(*found[t]);
  }
  return rep;
}

PreserverReport preserver_test(const FunctionSpec& f, std::size_t n, const Interval& interval,
                               const PreserverMode& mode, std::size_t trials,
                               std::uint64_t seed, double tol) {
  PreserverReport rep;
  rep.function = f.describe();
  rep.n = n;
  rep.interval = interval;
  rep.mode = mode;
  rep.trials = trials;
  rep.seed = seed;
  rep.tolerance = tol;
  const bool stepped = mode.kind == PreserverMode::Kind::stepped;
  if (stepped && mode.h_grid.empty()) throw Error("preserver_test: empty h-grid");
  std::vector<double> grid = mode.h_grid;
  std::sort(grid.begin(), grid.end());

  struct TrialResult {
    std::size_t evaluations = 0, skipped = 0;
    std::vector<Violation> violations;
    std::optional<double> smallest_h;
    bool smallest_passed = false;
  };
  std::vector<TrialResult> results(trials);

  parallel_for(trials, [&](std::size_t t) {
    TrialResult& r = results[t];
    const auto a = sample_psd(n, interval, derive_seed(seed, t));
    if (!stepped) {
      const PsdVerdict v = is_psd(smooth_transform(f, a), tol);
      ++r.evaluations;
      if (!v.is_psd) r.violations.push_back({t, a, v.min_eigenvalue, std::nullopt});
      return;
    }
    const double a00 = a(0, 0).real();
    for (double h : grid) {
      if (!(h > 0) || !interval.contains(a00 + 2.0 * static_cast<double>(n - 1) * h)) {
        ++r.skipped;
        continue;
      }
      const PsdVerdict v = is_psd(stepped_transform(f, a, h), tol);
      ++r.evaluations;
      if (!r.smallest_h) {
        r.smallest_h = h;
        r.smallest_passed = v.is_psd;
      }
      if (!v.is_psd) r.violations.push_back({t, a, v.min_eigenvalue, h});
    }
  });

  for (auto& r : results) {
    rep.evaluations += r.evaluations;
    rep.skipped += r.skipped;
    for (auto& v : r.violations) rep.violations.push_back(std::move(v));
    if (stepped) {
      rep.smallest_h.push_back(r.smallest_h);
      rep.smallest_h_passed.push_back(r.smallest_passed);
    }
  }
  return rep;
}

ConvMatrix<Complex> horn_matrix(std::size_t n, double x, double eps) {
  auto a = ConvMatrix<Complex>::constant(n, n, Complex(eps, 0.0));
  for (std::size_t k = 0; k < std::min<std::size_t>(2, n); ++k) a(k, k) += x;
  return a;
}

HornWitness horn_witness(std::size_t n, const FunctionSpec& f, double x, double eps,
                         double tol) {
  if (!(eps > 0)) throw Error("horn_witness: eps must be positive");
  auto a = horn_matrix(n, x, eps);
  auto fa = smooth_transform(f, a);
  std::vector<double> diag(n), lead(n);
  const double base = x + eps;
  for (std::size_t k = 0; k < n; ++k) {
    diag[k] = fa(k, k).real();
    lead[k] = std::pow(base, static_cast<double>(k)) *
              f.derivative(static_cast<unsigned>(k), base) / factorial(k).get_d();
  }
  const PsdVerdict v = is_psd(fa, tol);
  return {std::move(a), std::move(fa), std::move(diag), std::move(lead), v};
}

HCounterexample stepped_square_check(const ConvMatrix<Rational>& a, const Rational& h) {
  if (a.rows() != 2 || a.cols() != 2) throw ShapeMismatch("stepped_square_check: need 2x2");
  const auto f = FunctionSpec::polynomial({Rational(0), Rational(0), Rational(1)});
  auto t = stepped_transform(f, a, h);
  const Rational det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
  const PsdVerdict v = is_psd(t);
  return {a, h, std::move(t), det, v};
}

HCounterexample schoenberg_h_counterexample(const Rational& h) {
  return stepped_square_check({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}, h);
}

FractionalPowerReport fractional_power_study(std::size_t n, const std::vector<double>& alphas,
                                             const Interval& interval, std::size_t trials,
                                             bool include_b, std::uint64_t seed,
                                             double tol) {
  if (n < 2) throw Error("fractional_power_study: N must be >= 2");
  FractionalPowerReport rep;
  rep.n = n;
  rep.interval = interval;
  rep.trials = trials;
  rep.seed = seed;
  rep.tolerance = tol;
  rep.include_b = include_b;
  const double x = interval.bounded() ? interval.upper / 2 : 1.0;
  const double eps = 0.01 * x;

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];
    const auto f = FunctionSpec::power(alpha);
    const bool test_b = include_b && alpha > static_cast<double>(n) - 2.0;
    FractionalPowerEntry e;
    e.alpha = alpha;
    e.trials = trials;

    struct TrialResult {
      double min_eig = 0.0;  // normalized by max(1, scale)
      double raw_min = 0.0;
      bool violated = false;
      ConvMatrix<Complex> a{1, 1};
      double b_min = 0.0;
      bool b_bad = false;
    };
    std::vector<TrialResult> results(trials);
    const std::uint64_t alpha_seed = derive_seed(seed, ai);
    parallel_for(trials, [&](std::size_t t) {
      auto& r = results[t];
      r.a = sample_psd(n, interval, derive_seed(alpha_seed, t));
      const PsdVerdict v = is_psd(smooth_transform(f, r.a), tol);
      r.min_eig = normalized(v);
      r.raw_min = v.min_eigenvalue;
      r.violated = !v.is_psd;
      if (test_b) {
        const PsdVerdict vb = is_psd(bivariate_power_matrix(alpha, r.a), tol);
        r.b_min = normalized(vb);
        r.b_bad = !vb.is_psd;
      }
    });
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& r = results[t];
      e.worst_random_min_eig = std::min(e.worst_random_min_eig, r.min_eig);
      if (r.violated) {
        if (!e.first_violation) e.first_violation = Violation{t, r.a, r.raw_min, std::nullopt};
        ++e.random_violations;
      }
      if (test_b) {
        ++e.b_tested;
        e.worst_b_min_eig = std::min(e.worst_b_min_eig, r.b_min);
        if (r.b_bad) ++e.b_non_psd;
      }
    }
    if (interval.contains(x + eps)) e.horn = horn_witness(n, f, x, eps, tol).verdict;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace juryconv
