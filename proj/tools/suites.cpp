#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "juryconv/random.hpp"

namespace juryconv::cli {

json RunConfig::to_json() const {
  json j{{"command", command},
         {"inputs", inputs},
         {"backend", std::string(backend_name(backend))},
         {"tol", tol},
         {"seed", seed},
         {"trials", trials ? json(*trials) : json(nullptr)},
         {"h_grid", h_grid_spec},
         {"alpha_grid", alpha_grid},
         {"n", n ? json(*n) : json(nullptr)}};
  return j;
}

std::vector<double> parse_h_grid(std::string_view spec) {
  std::vector<double> parts;
  std::stringstream ss{std::string(spec)};
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      std::size_t pos = 0;
      parts.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("h-grid", "bad number '" + tok + "'");
    }
  }
  if (parts.size() != 3) throw ParseError("h-grid", "expected start:stop:factor");
  const double start = parts[0], stop = parts[1], factor = parts[2];
  if (!(start > 0) || !(stop > 0) || !(factor > 0) || factor == 1.0)
    throw ParseError("h-grid", "need positive start/stop and factor != 1");
  if ((factor < 1) != (stop <= start))
    throw ParseError("h-grid", "factor moves away from stop");
  std::vector<double> grid;
  const double slack = 1e-12;
  for (double h = start; factor < 1 ? h >= stop * (1 - slack) : h <= stop * (1 + slack);
       h *= factor) {
    grid.push_back(h);
    if (grid.size() > 10'000) throw ParseError("h-grid", "too many grid points");
  }
  return grid;
}

std::vector<double> parse_alpha_grid(std::string_view spec) {
  std::vector<double> out;
  std::stringstream ss{std::string(spec)};
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("alpha-grid", "bad number '" + tok + "'");
    }
  }
  if (out.empty()) throw ParseError("alpha-grid", "empty");
  return out;
}

std::string_view expect_name(Expect e) {
  switch (e) {
    case Expect::holds: return "holds";
    case Expect::counterexample: return "counterexample";
    case Expect::data: return "data";
  }
  return "?";
}

const std::vector<ManifestEntry>& manifest() {
  static const std::vector<ManifestEntry> entries{
      {"closure", "closure.psd", Expect::holds, "A <> B is PSD for PSD A, B"},
      {"closure", "closure.detector", Expect::counterexample, "PSD A with B = -I<> is flagged"},
      {"schoenberg", "schoenberg.large_h", Expect::counterexample,
       "x^2 stepped transform at h = 2 is not PSD"},
      {"schoenberg", "schoenberg.small_h", Expect::holds,
       "x^2 stepped transform of [[2,1],[1,1]] at h = 1/100 is PSD"},
      {"schoenberg", "schoenberg.all_ones_small_h", Expect::data,
       "all-ones matrix at h = 1/100 (singular input, fails for every h > 0)"},
      {"schoenberg", "schoenberg.affine", Expect::holds, "affine f keeps PSD for any h"},
      {"schoenberg", "schoenberg.exp_small_h", Expect::holds,
       "exp stepped transforms pass at the smallest admissible grid h"},
      {"schoenberg", "schoenberg.exp_grid", Expect::data, "exp stepped transforms over the whole grid"},
      {"horn", "horn.power_negative_derivative", Expect::counterexample,
       "x^alpha with some f^(k) < 0, k <= N-1, gives a non-PSD witness transform"},
      {"horn", "horn.power_other", Expect::data, "x^alpha with all f^(k) >= 0 for k <= N-1"},
      {"horn", "horn.exp", Expect::holds, "exp witness transform is PSD"},
      {"horn", "horn.difference_nonneg", Expect::holds,
       "forward differences of exp are nonnegative"},
      {"fh", "fh.negative_alpha", Expect::counterexample, "alpha < 0 is not a preserver"},
      {"fh", "fh.below_n_minus_2", Expect::counterexample,
       "non-integer 0 < alpha < N-2 is not a preserver"},
      {"fh", "fh.preserver", Expect::holds,
       "alpha a nonnegative integer, or N = 2 with alpha >= 0"},
      {"fh", "fh.open", Expect::data, "non-integer alpha >= N-2 with N >= 3 (open)"},
      {"bruhat", "bruhat.oracle_agreement", Expect::holds,
       "rank-matrix criterion matches the cover-closure oracle"},
      {"bruhat", "bruhat.equivalences", Expect::holds, "four relations agree"},
      {"bruhat", "bruhat.complement_identity", Expect::holds,
       "complement identities with the n-2-i index"},
      {"bruhat", "bruhat.complement_identity_unshifted", Expect::data,
       "complement identities with the n-1-i index"},
      {"prob", "prob.sum_law", Expect::holds, "sum_distribution equals brute-force enumeration"},
      {"prob", "prob.chain", Expect::holds, "PSD chains are preserved by sums"},
      {"prob", "prob.detector", Expect::counterexample, "signed input is flagged by the chain check"},
      {"prob", "prob.semiinfinite", Expect::holds, "padded-power propositions"},
      {"ch", "ch.annihilation", Expect::holds, "(A - a00 I<>)^{M+N-1} = 0"},
      {"ch", "ch.tightness", Expect::holds, "1 - I<> has nonzero powers up to M+N-2"},
      {"ch", "ch.minimal_polynomial", Expect::holds,
       "partition criterion equals the nilpotency index"},
      {"ch", "ch.inverse", Expect::holds, "recursive and annihilator inverses agree"},
  };
  return entries;
}

const ManifestEntry& manifest_entry(std::string_view id) {
  for (const auto& e : manifest())
    if (e.id == id) return e;
  throw Error("manifest has no entry '" + std::string(id) + "'");
}

bool Outcome::met() const {
  switch (expect) {
    case Expect::holds: return !violation;
    case Expect::counterexample: return violation;
    case Expect::data: return true;
  }
  return false;
}

bool SuiteResult::all_met() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.met(); });
}

json SuiteResult::to_json(const RunConfig& cfg) const {
  json outs = json::array();
  for (const auto& o : outcomes)
    outs.push_back({{"id", o.id},
                    {"label", o.label},
                    {"expect", std::string(expect_name(o.expect))},
                    {"violation_found", o.violation},
                    {"met", o.met()},
                    {"detail", o.detail}});
  return {{"config", cfg.to_json()},
          {"all_expectations_met", all_met()},
          {"expectations", outs},
          {"report", report}};
}

namespace {

Outcome outcome(std::string_view id, std::string label, bool violation, std::string detail = {}) {
  return {std::string(id), std::move(label), manifest_entry(id).expect, violation,
          std::move(detail)};
}

std::size_t trials_or(const RunConfig& cfg, std::size_t fallback) {
  return cfg.trials.value_or(fallback);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ------------------------------------------------------------------ closure

SuiteResult closure_suite(const RunConfig& cfg) {
  SuiteResult r;
  const int max_n = cfg.n.value_or(6);
  const std::size_t trials = trials_or(cfg, 200);
  json runs = json::array();
  for (int n = 1; n <= max_n; ++n)
    for (bool hermitian : {false, true}) {
      const auto rep = jury_closure_test(static_cast<std::size_t>(n), trials,
                                         derive_seed(cfg.seed, static_cast<std::uint64_t>(n)),
                                         cfg.tol, hermitian);
      runs.push_back(juryconv::to_json(rep));
      r.outcomes.push_back(outcome("closure.psd",
                                   "n=" + std::to_string(n) + (hermitian ? " hermitian" : " real"),
                                   !rep.violations.empty(),
                                   std::to_string(rep.violations.size()) + " violations"));
    }
  r.report["runs"] = runs;

  const auto a = sample_psd(3, Interval(), cfg.seed);
  const auto b = scale(Complex(-1.0), conv_identity<Complex>(3, 3));
  const auto flagged = check_closure_pair(a, b, cfg.tol);
  r.outcomes.push_back(outcome("closure.detector", "n=3", flagged.has_value()));
  return r;
}

// --------------------------------------------------------------- schoenberg

SuiteResult schoenberg_suite(const RunConfig& cfg) {
  SuiteResult r;
  const auto big = schoenberg_h_counterexample(Rational(2));
  r.report["large_h"] = juryconv::to_json(big);
  r.outcomes.push_back(outcome("schoenberg.large_h", "h=2", !big.verdict.is_psd,
                               "det = " + big.determinant.str()));
  // The all-ones matrix is singular with det f<>(A) = 0, so every h > 0 breaks it
  // (det = -3h - h^2); the small-h contrast uses a positive definite matrix.
  const Rational small_h(BigInt(1), BigInt(100));
  const auto ones_small = schoenberg_h_counterexample(small_h);
  r.report["all_ones_small_h"] = juryconv::to_json(ones_small);
  r.outcomes.push_back(outcome("schoenberg.all_ones_small_h", "h=1/100",
                               !ones_small.verdict.is_psd,
                               "det = " + ones_small.determinant.str()));
  const ConvMatrix<Rational> pd{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  const auto pd_small = stepped_square_check(pd, small_h);
  const auto pd_large = stepped_square_check(pd, Rational(2));
  r.report["pd_small_h"] = juryconv::to_json(pd_small);
  r.report["pd_large_h"] = juryconv::to_json(pd_large);
  r.outcomes.push_back(outcome("schoenberg.small_h", "[[2,1],[1,1]] h=1/100",
                               !pd_small.verdict.is_psd, "det = " + pd_small.determinant.str()));
  r.outcomes.push_back(outcome("schoenberg.large_h", "[[2,1],[1,1]] h=2", !pd_large.verdict.is_psd,
                               "det = " + pd_large.determinant.str()));

  const auto affine = FunctionSpec::polynomial({Rational(1), Rational(2)});
  const ConvMatrix<Rational> ones{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  for (long h : {1L, 2L, 5L}) {
    const auto t = stepped_transform(affine, ones, Rational(h));
    r.outcomes.push_back(outcome("schoenberg.affine", "h=" + std::to_string(h),
                                 !is_psd(t, cfg.tol).is_psd));
  }

  const int max_n = cfg.n.value_or(4);
  const std::size_t trials = trials_or(cfg, 50);
  json runs = json::array();
  for (int n = 2; n <= max_n; ++n) {
    const auto rep = preserver_test(FunctionSpec::exponential(), static_cast<std::size_t>(n),
                                    Interval(), PreserverMode::stepped(cfg.h_grid), trials,
                                    derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), cfg.tol);
    std::size_t failing_smallest = 0;
    for (std::size_t t = 0; t < rep.smallest_h.size(); ++t)
      if (rep.smallest_h[t] && !rep.smallest_h_passed[t]) ++failing_smallest;
    runs.push_back(juryconv::to_json(rep));
    r.outcomes.push_back(outcome("schoenberg.exp_small_h", "N=" + std::to_string(n),
                                 failing_smallest > 0,
                                 std::to_string(failing_smallest) + " trials fail at smallest h"));
    r.outcomes.push_back(outcome("schoenberg.exp_grid", "N=" + std::to_string(n),
                                 !rep.violations.empty(),
                                 std::to_string(rep.violations.size()) + " of " +
                                     std::to_string(rep.evaluations) + " evaluations not PSD"));
  }
  r.report["exp_stepped"] = runs;
  return r;
}

// --------------------------------------------------------------------- horn

bool is_integer(double a) { return std::floor(a) == a; }

// x^alpha has a negative derivative of order <= N-1 on (0, inf).
bool has_negative_derivative(double alpha, int n) {
  double c = 1.0;
  for (int k = 1; k <= n - 1; ++k) {
    c *= alpha - (k - 1);
    if (c < 0) return true;
  }
  return false;
}

SuiteResult horn_suite(const RunConfig& cfg) {
  SuiteResult r;
  const int n = cfg.n.value_or(3);
  const std::vector<double> alphas = cfg.alpha_grid.empty() ? std::vector<double>{0.5}
                                                             : cfg.alpha_grid;
  json witnesses = json::array();
  for (double alpha : alphas) {
    const auto w = horn_witness(static_cast<std::size_t>(n), FunctionSpec::power(alpha), 1.0,
                                0.01, cfg.tol);
    json j = juryconv::to_json(w);
    j["alpha"] = alpha;
    witnesses.push_back(j);
    const bool negative = has_negative_derivative(alpha, n);
    r.outcomes.push_back(outcome(negative ? "horn.power_negative_derivative" : "horn.power_other",
                                 "N=" + std::to_string(n) + " alpha=" + fmt(alpha),
                                 !w.verdict.is_psd, "min eig " + fmt(w.verdict.min_eigenvalue)));
  }
  r.report["power_witnesses"] = witnesses;

  const auto we = horn_witness(static_cast<std::size_t>(n), FunctionSpec::exponential(), 1.0, 0.01,
                               cfg.tol);
  r.report["exp_witness"] = juryconv::to_json(we);
  r.outcomes.push_back(outcome("horn.exp", "N=" + std::to_string(n), !we.verdict.is_psd));

  // Forward differences of exp at sampled points of the witness family.
  Rng rng(cfg.seed);
  std::size_t negatives = 0, checked = 0;
  const auto f = FunctionSpec::exponential();
  for (std::size_t t = 0; t < trials_or(cfg, 200); ++t) {
    const double x = rng.uniform(0.01, 3.0) + rng.uniform(0.0, 0.1);
    const double h = rng.uniform(1e-3, 1.0);
    for (int l = 0; l <= std::max(n - 1, 0); ++l, ++checked)
      if (forward_difference(f, x, h, static_cast<unsigned>(l)) < 0) ++negatives;
  }
  r.outcomes.push_back(outcome("horn.difference_nonneg", "N=" + std::to_string(n), negatives > 0,
                               std::to_string(negatives) + " negative of " +
                                   std::to_string(checked)));
  return r;
}

// ----------------------------------------------------------------------- fh

std::string_view classify_alpha(double alpha, int n) {
  if (alpha < 0) return "fh.negative_alpha";
  if (is_integer(alpha) || n == 2) return "fh.preserver";
  if (alpha < n - 2) return "fh.below_n_minus_2";
  return "fh.open";
}

SuiteResult fh_suite(const RunConfig& cfg) {
  SuiteResult r;
  const int n = cfg.n.value_or(2);
  std::vector<double> alphas = cfg.alpha_grid;
  if (alphas.empty())
    alphas = n == 2 ? std::vector<double>{-0.5, 0.3, 1.7, 2.5}
                    : std::vector<double>{0.5, static_cast<double>(n) - 1.5};
  const std::size_t trials = trials_or(cfg, n == 2 ? 1000 : 200);
  const auto rep = fractional_power_study(static_cast<std::size_t>(n), alphas, Interval(), trials,
                                          true, cfg.seed, cfg.tol);
  r.report = juryconv::to_json(rep);
  r.report["csv"] = fractional_csv(rep);
  for (const auto& e : rep.entries) {
    std::string detail = std::to_string(e.random_violations) + " random violations";
    if (e.horn) detail += "; witness min eig " + fmt(e.horn->min_eigenvalue);
    r.outcomes.push_back(outcome(classify_alpha(e.alpha, n),
                                 "N=" + std::to_string(n) + " alpha=" + fmt(e.alpha),
                                 e.violation_found(), detail));
  }
  return r;
}

// ------------------------------------------------------------------- bruhat

SuiteResult bruhat_suite(const RunConfig& cfg) {
  SuiteResult r;
  const int n = cfg.n.value_or(4);
  if (n < 1 || n > kOracleMaxN)
    throw ParseError("n", "bruhat suite supports 1 <= n <= " + std::to_string(kOracleMaxN));
  std::vector<std::pair<Permutation, Permutation>> pairs;
  if (n <= 4) {
    const auto all = all_permutations(n);
    for (const auto& s : all)
      for (const auto& t : all) pairs.emplace_back(s, t);
  } else {
    Rng rng(cfg.seed);
    for (std::size_t k = 0; k < trials_or(cfg, 1000); ++k) {
      auto s = random_permutation(n, rng);
      auto t = random_permutation(n, rng);
      pairs.emplace_back(std::move(s), std::move(t));
    }
  }
  std::size_t agree = 0, equiv = 0, ident = 0, unshifted = 0;
  json disagreements = json::array();
  for (const auto& [s, t] : pairs) {
    const bool c = bruhat_leq_conv(s, t);
    const bool o = bruhat_leq_oracle(s, t);
    if (c == o) ++agree;
    else if (disagreements.size() < 10) disagreements.push_back({s.str(), t.str()});
    const auto eq = verify_equivalences(s, t);
    bool rows_agree = true;
    for (const auto& row : eq.rows)
      rows_agree = rows_agree && row.permutation_side == o && row.matrix_side == o;
    if (rows_agree) ++equiv;
    if (eq.rows_identity && eq.cols_identity) ++ident;
    if (eq.rows_identity_unshifted && eq.cols_identity_unshifted) ++unshifted;
  }
  const std::string total = std::to_string(pairs.size());
  r.report = {{"n", n},
              {"pairs", pairs.size()},
              {"oracle_agreements", agree},
              {"equivalence_agreements", equiv},
              {"complement_identity_pairs", ident},
              {"complement_identity_unshifted_pairs", unshifted},
              {"disagreements", disagreements}};
  const std::string label = "n=" + std::to_string(n);
  r.outcomes.push_back(outcome("bruhat.oracle_agreement", label, agree != pairs.size(),
                               std::to_string(agree) + "/" + total));
  r.outcomes.push_back(outcome("bruhat.equivalences", label, equiv != pairs.size(),
                               std::to_string(equiv) + "/" + total));
  r.outcomes.push_back(outcome("bruhat.complement_identity", label, ident != pairs.size(),
                               std::to_string(ident) + "/" + total));
  r.outcomes.push_back(outcome("bruhat.complement_identity_unshifted", label,
                               unshifted != pairs.size(),
                               std::to_string(unshifted) + "/" + total + " hold"));
  return r;
}

// --------------------------------------------------------------------- prob

GridDistribution<Rational> random_distribution(Rng& rng, std::size_t max_side) {
  for (;;) {
    const auto rows = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_side)));
    const auto cols = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_side)));
    ConvMatrix<Rational> m(rows, cols);
    Rational total(0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = Rational(rng.integer(0, 4));
        total += m(i, j);
      }
    if (total.is_zero()) continue;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = m(i, j) / total;
    return GridDistribution<Rational>(std::move(m));
  }
}

// Square nonnegative PSD probability matrix G G^T / total.
GridDistribution<Rational> random_psd_distribution(Rng& rng, std::size_t max_side) {
  for (;;) {
    const auto n = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_side)));
    const auto rank = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
    std::vector<long> g(n * rank);
    for (long& x : g) x = static_cast<long>(rng.integer(0, 3));
    ConvMatrix<Rational> m(n, n);
    Rational total(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long s = 0;
        for (std::size_t k = 0; k < rank; ++k) s += g[i * rank + k] * g[j * rank + k];
        m(i, j) = Rational(s);
        total += m(i, j);
      }
    if (total.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = m(i, j) / total;
    return GridDistribution<Rational>(std::move(m));
  }
}

// Law of the sum by enumerating every tuple of support points.
ConvMatrix<Rational> brute_force_sum(const std::vector<GridDistribution<Rational>>& ds) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> law{{{0, 0}, Rational(1)}};
  std::size_t rows = 1, cols = 1;
  for (const auto& d : ds) {
    const auto& p = d.matrix();
    std::map<std::pair<std::size_t, std::size_t>, Rational> next;
    for (const auto& [at, prob] : law)
      for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
          if (p(i, j).is_zero()) continue;
          next[{at.first + i, at.second + j}] += prob * p(i, j);
        }
    law = std::move(next);
    rows += p.rows() - 1;
    cols += p.cols() - 1;
  }
  ConvMatrix<Rational> out(rows, cols);
  for (const auto& [at, prob] : law) out(at.first, at.second) = prob;
  return out;
}

SuiteResult prob_suite(const RunConfig& cfg) {
  SuiteResult r;
  Rng rng(cfg.seed);
  const std::size_t trials = trials_or(cfg, 100);
  std::size_t law_ok = 0, chain_cases = 0, chain_ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto count = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<GridDistribution<Rational>> ds;
    for (std::size_t k = 0; k < count; ++k) ds.push_back(random_distribution(rng, 4));
    if (sum_distribution<Rational>(ds).matrix() == brute_force_sum(ds)) ++law_ok;

    std::vector<GridDistribution<Rational>> ps;
    for (std::size_t k = 0; k < count; ++k) ps.push_back(random_psd_distribution(rng, 4));
    bool inputs_pass = true;
    for (const auto& p : ps)
      inputs_pass = inputs_pass && psd_chain_check(p.matrix(), p.matrix().rows(), cfg.tol).all_psd();
    if (!inputs_pass) continue;
    ++chain_cases;
    const auto sum = sum_distribution<Rational>(ps);
    if (psd_chain_check(sum.matrix(), sum.matrix().rows(), cfg.tol).all_psd()) ++chain_ok;
  }
  r.outcomes.push_back(outcome("prob.sum_law", "trials=" + std::to_string(trials),
                               law_ok != trials,
                               std::to_string(law_ok) + "/" + std::to_string(trials)));
  r.outcomes.push_back(outcome("prob.chain", "cases=" + std::to_string(chain_cases),
                               chain_ok != chain_cases || chain_cases == 0,
                               std::to_string(chain_ok) + "/" + std::to_string(chain_cases)));

  const ConvMatrix<Rational> signed_input{{Rational(0), Rational(BigInt(1), BigInt(2))},
                                          {Rational(BigInt(1), BigInt(2)), Rational(0)}};
  const auto detector = psd_chain_check(signed_input, 2, cfg.tol);
  r.report["detector"] = juryconv::to_json(detector);
  r.outcomes.push_back(outcome("prob.detector", "[[0,1/2],[1/2,0]]", !detector.all_psd(),
                               detector.first_failure
                                   ? "first failing k = " + std::to_string(*detector.first_failure)
                                   : "not flagged"));

  const auto semi = semiinfinite_checks(cfg.n ? static_cast<unsigned>(*cfg.n) : 6u, cfg.seed);
  r.report["semiinfinite"] = juryconv::to_json(semi);
  r.outcomes.push_back(outcome("prob.semiinfinite", "cap=" + std::to_string(semi.cap),
                               !semi.all_passed()));
  r.report["sum_law_agreements"] = law_ok;
  r.report["chain_cases"] = chain_cases;
  r.report["chain_preserved"] = chain_ok;
  return r;
}

// ----------------------------------------------------------------------- ch

SuiteResult ch_suite(const RunConfig& cfg) {
  SuiteResult r;
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {2, 2}, {3, 3}, {2, 5},
                                                                {4, 4}, {5, 5}};
  const std::size_t trials = trials_or(cfg, 100);
  Rng rng(cfg.seed);
  json per_shape = json::array();
  for (const auto& [m, n] : shapes) {
    const std::string label = ConvMatrix<Rational>::shape_str(m, n);
    std::size_t ann = 0, minimal = 0, inverse = 0;
    std::map<unsigned, std::size_t> degrees;
    for (std::size_t t = 0; t < trials; ++t) {
      // Sparse draws so low minimal degrees also occur.
      auto a = random_invertible_rational_matrix(m, n, rng);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if ((i || j) && rng.integer(0, 2) == 0) a(i, j) = Rational(0);
      if (conv_power_naive(shift_origin(a), static_cast<unsigned>(m + n - 1)).is_zero() &&
          ch_check(a))
        ++ann;
      try {
        const auto rep = minimal_polynomial(a);
        ++degrees[rep.minimal_degree];
        ++minimal;
      } catch (const Error&) {
      }
      const auto inv = conv_inverse_recursive(a);
      if (inv == conv_inverse_ch(a) && conv(a, inv) == conv_identity<Rational>(m, n)) ++inverse;
    }
    json deg = json::object();
    for (const auto& [d, c] : degrees) deg[std::to_string(d)] = c;
    per_shape.push_back({{"shape", label},
                         {"trials", trials},
                         {"annihilated", ann},
                         {"minimal_polynomial_consistent", minimal},
                         {"inverse_agreements", inverse},
                         {"minimal_degree_histogram", deg}});
    const std::string tot = "/" + std::to_string(trials);
    r.outcomes.push_back(outcome("ch.annihilation", label, ann != trials, std::to_string(ann) + tot));
    r.outcomes.push_back(outcome("ch.minimal_polynomial", label, minimal != trials,
                                 std::to_string(minimal) + tot));
    r.outcomes.push_back(outcome("ch.inverse", label, inverse != trials,
                                 std::to_string(inverse) + tot));

    // 1 - I<> has nonzero l-th power for all l <= M+N-2.
    auto w = all_ones<Rational>(m, n);
    w(0, 0) = Rational(0);
    bool tight = true;
    auto power = conv_identity<Rational>(m, n);
    for (std::size_t l = 1; l + 1 < m + n; ++l) {
      power = conv(power, w);
      tight = tight && !power.is_zero();
    }
    r.outcomes.push_back(outcome("ch.tightness", label, !tight));
  }
  r.report["shapes"] = per_shape;
  return r;
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"closure", "schoenberg", "horn", "fh",
                                                   "bruhat",  "prob",       "ch"};
  return names;
}

SuiteResult run_suite(std::string_view name, const RunConfig& cfg) {
  if (name == "closure") return closure_suite(cfg);
  if (name == "schoenberg") return schoenberg_suite(cfg);
  if (name == "horn") return horn_suite(cfg);
  if (name == "fh") return fh_suite(cfg);
  if (name == "bruhat") return bruhat_suite(cfg);
  if (name == "prob") return prob_suite(cfg);
  if (name == "ch") return ch_suite(cfg);
  throw ParseError("suite", "unknown suite '" + std::string(name) + "'");
}

}  // namespace juryconv::cli
