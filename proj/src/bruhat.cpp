#include "juryconv/bruhat.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <sstream>

#include "juryconv/random.hpp"

namespace juryconv {

Permutation::Permutation(std::vector<int> one_line) : w_(std::move(one_line)) {
  if (w_.empty()) throw Error("permutation must have n >= 1");
  std::vector<bool> seen(w_.size(), false);
  for (int v : w_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v - 1)])
      throw Error("not a permutation of 1.." + std::to_string(size()) + ": " + str());
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return Permutation(std::move(w));
}

Permutation Permutation::longest(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<int> w;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw ParseError("perm", "bad entry '" + tok + "'");
    w.push_back(v);
  }
  try {
    return Permutation(std::move(w));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("perm", e.what());
  }
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i)
    inv[static_cast<std::size_t>(w_[i] - 1)] = static_cast<int>(i + 1);
  return Permutation(std::move(inv));
}

int Permutation::length() const {
  int inv = 0;
  for (std::size_t i = 0; i < w_.size(); ++i)
    for (std::size_t j = i + 1; j < w_.size(); ++j)
      if (w_[i] > w_[j]) ++inv;
  return inv;
}

std::string Permutation::str() const {
  std::string out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w_[i]);
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ShapeMismatch("compose: permutations of different size");
  std::vector<int> w(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= a.size(); ++i) w[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(w));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  // Fisher-Yates on our own generator for reproducibility across builds.
  for (int i = n - 1; i > 0; --i)
    std::swap(w[static_cast<std::size_t>(i)],
              w[static_cast<std::size_t>(rng.integer(0, i))]);
  return Permutation(std::move(w));
}

IntMatrix perm_to_matrix(const Permutation& w) {
  const auto n = static_cast<std::size_t>(w.size());
  IntMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    p(i, static_cast<std::size_t>(w(static_cast<int>(i) + 1) - 1)) = 1;
  return p;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("matmul: " + a.shape_str() + " times " + b.shape_str());
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

IntMatrix rank_of(const IntMatrix& p) {
  return conv(p, all_ones<std::int64_t>(p.rows(), p.cols()));
}

RankMatrix::RankMatrix(IntMatrix r) : r_(std::move(r)) {
  const std::size_t n = r_.rows();
  if (r_.cols() != n) throw ShapeMismatch("rank matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = r_(i, j);
      if (v < 0 || v > static_cast<std::int64_t>(std::min(i, j) + 1) ||
          (i > 0 && r_(i - 1, j) > v) || (j > 0 && r_(i, j - 1) > v))
        throw Error("rank matrix invariant violated at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
    }
  for (std::size_t j = 0; j < n; ++j)
    if (r_(n - 1, j) != static_cast<std::int64_t>(j + 1))
      throw Error("rank matrix last row must be 1..n");
}

RankMatrix RankMatrix::of(const Permutation& w) { return RankMatrix(rank_of(perm_to_matrix(w))); }

RankMatrix rank_matrix(const Permutation& w) { return RankMatrix::of(w); }

bool entry_leq(const IntMatrix& a, const IntMatrix& b) {
  if (!a.same_shape(b)) throw ShapeMismatch("entry_leq: shapes differ");
  for (std::size_t t = 0; t < a.data().size(); ++t)
    if (a.data()[t] > b.data()[t]) return false;
  return true;
}

bool bruhat_leq_conv(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size())
    throw ShapeMismatch("bruhat_leq_conv: permutations of different size");
  return entry_leq(rank_matrix(tau).matrix(), rank_matrix(sigma).matrix());
}

namespace {

// Position of w in the lexicographic listing of S_n (Lehmer code).
std::size_t lex_index(const std::vector<int>& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[j] < w[i]) ++smaller;
    idx = idx * (w.size() - i) + smaller;
  }
  return idx;
}

// Up-set bitsets of every permutation in the cover digraph.
struct Closure {
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;  // row per permutation

  bool reaches(std::size_t from, std::size_t to) const {
    return (bits[from * words + to / 64] >> (to % 64)) & 1U;
  }
};

Closure build_closure(int n) {
  const auto perms = all_permutations(n);
  const std::size_t count = perms.size();
  Closure c;
  c.words = (count + 63) / 64;
  c.bits.assign(count * c.words, 0);

  std::vector<int> len(count);
  for (std::size_t k = 0; k < count; ++k) len[k] = perms[k].length();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return len[a] > len[b]; });

  for (std::size_t k : order) {
    std::uint64_t* row = &c.bits[k * c.words];
    row[k / 64] |= std::uint64_t{1} << (k % 64);
    std::vector<int> w = perms[k].one_line();
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        std::swap(w[i], w[j]);
        const Permutation swapped(w);
        if (swapped.length() == len[k] + 1) {
          // Covers have larger length, so their rows are already complete.
          const std::size_t up = lex_index(w);
          const std::uint64_t* src = &c.bits[up * c.words];
          for (std::size_t t = 0; t < c.words; ++t) row[t] |= src[t];
        }
        std::swap(w[i], w[j]);
      }
  }
  return c;
}

const Closure& closure_for(int n) {
  static std::array<std::once_flag, kOracleMaxN + 1> flags;
  static std::array<Closure, kOracleMaxN + 1> cache;
  std::call_once(flags[static_cast<std::size_t>(n)],
                 [n] { cache[static_cast<std::size_t>(n)] = build_closure(n); });
  return cache[static_cast<std::size_t>(n)];
}

}  // namespace

bool bruhat_leq_oracle(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size())
    throw ShapeMismatch("bruhat_leq_oracle: permutations of different size");
  if (sigma.size() > kOracleMaxN)
    throw SizeLimitExceeded("bruhat_leq_oracle: n = " + std::to_string(sigma.size()) +
                            " exceeds " + std::to_string(kOracleMaxN));
  return closure_for(sigma.size()).reaches(lex_index(sigma.one_line()),
                                           lex_index(tau.one_line()));
}

namespace {

IntMatrix nabla(std::size_t n) { return perm_to_matrix(Permutation::longest(static_cast<int>(n))); }

// shift = 1 gives the n-2-i form, shift = 0 the n-1-i form.
bool rows_identity(const IntMatrix& p, int shift) {
  const auto n = static_cast<long>(p.rows());
  const IntMatrix r = rank_of(p);
  const IntMatrix rr = rank_of(matmul(nabla(p.rows()), p));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const long k = n - 1 - shift - i;
      const std::int64_t other = k >= 0 ? rr(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) : 0;
      if (r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) + other != j + 1) return false;
    }
  return true;
}

bool cols_identity(const IntMatrix& p, int shift) {
  const auto n = static_cast<long>(p.rows());
  const IntMatrix r = rank_of(p);
  const IntMatrix rc = rank_of(matmul(p, nabla(p.rows())));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const long k = n - 1 - shift - j;
      const std::int64_t other = k >= 0 ? rc(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) : 0;
      if (r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) + other != i + 1) return false;
    }
  return true;
}

}  // namespace

bool complement_identity_rows(const IntMatrix& p) { return rows_identity(p, 1); }
bool complement_identity_cols(const IntMatrix& p) { return cols_identity(p, 1); }
bool complement_identity_rows_unshifted(const IntMatrix& p) { return rows_identity(p, 0); }
bool complement_identity_cols_unshifted(const IntMatrix& p) { return cols_identity(p, 0); }

bool last_row_identity(const IntMatrix& p) {
  const IntMatrix r = rank_of(p);
  const std::size_t n = r.rows();
  for (std::size_t j = 0; j < n; ++j)
    if (r(n - 1, j) != static_cast<std::int64_t>(j + 1) ||
        r(j, n - 1) != static_cast<std::int64_t>(j + 1))
      return false;
  return true;
}

bool EquivalenceReport::all_agree() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (r.permutation_side != rows.front().permutation_side ||
        r.matrix_side != rows.front().permutation_side)
      return false;
  return rows_identity && cols_identity;
}

EquivalenceReport verify_equivalences(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size())
    throw ShapeMismatch("verify_equivalences: permutations of different size");
  const int n = sigma.size();
  const Permutation w0 = Permutation::longest(n);
  const IntMatrix q = perm_to_matrix(sigma);
  const IntMatrix p = perm_to_matrix(tau);
  const IntMatrix nab = nabla(static_cast<std::size_t>(n));

  EquivalenceReport rep;
  rep.rows.push_back({"sigma <= tau", bruhat_leq_oracle(sigma, tau),
                      entry_leq(rank_of(p), rank_of(q))});
  rep.rows.push_back({"tau w0 <= sigma w0",
                      bruhat_leq_oracle(compose(tau, w0), compose(sigma, w0)),
                      entry_leq(rank_of(matmul(nab, q)), rank_of(matmul(nab, p)))});
  rep.rows.push_back({"w0 tau <= w0 sigma",
                      bruhat_leq_oracle(compose(w0, tau), compose(w0, sigma)),
                      entry_leq(rank_of(matmul(q, nab)), rank_of(matmul(p, nab)))});
  rep.rows.push_back({"sigma^-1 <= tau^-1", bruhat_leq_oracle(sigma.inverse(), tau.inverse()),
                      entry_leq(rank_of(transpose(p)), rank_of(transpose(q)))});
  rep.rows_identity = complement_identity_rows(p) && complement_identity_rows(q);
  rep.cols_identity = complement_identity_cols(p) && complement_identity_cols(q);
  rep.rows_identity_unshifted =
      complement_identity_rows_unshifted(p) && complement_identity_rows_unshifted(q);
  rep.cols_identity_unshifted =
      complement_identity_cols_unshifted(p) && complement_identity_cols_unshifted(q);
  return rep;
}

}  // namespace juryconv
