#pragma once

// Bruhat order on S_n through convolution rank matrices P <> 1, plus an
// independent oracle built from length-increasing transposition covers.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "juryconv/conv_matrix.hpp"

namespace juryconv {

class Rng;

using IntMatrix = ConvMatrix<std::int64_t>;

// One-line notation w(1) ... w(n), values 1-based.
class Permutation {
 public:
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  static Permutation longest(int n);  // n n-1 ... 1
  // Whitespace- or comma-separated one-line notation, e.g. "3 1 2".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(w_.size()); }
  int operator()(int i) const { return w_[static_cast<std::size_t>(i - 1)]; }  // 1-based
  const std::vector<int>& one_line() const { return w_; }

  Permutation inverse() const;
  int length() const;  // number of inversions
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> w_;
};

// (a b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

// All of S_n in lexicographic order of one-line notation.
std::vector<Permutation> all_permutations(int n);
Permutation random_permutation(int n, Rng& rng);

// 0/1 matrix with a one at (i, w(i+1) - 1).
IntMatrix perm_to_matrix(const Permutation& w);

// Ordinary matrix product (used for the reversal products with the longest element).
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

// P <> 1: entry (i,j) counts ones of P in the leading (i+1) x (j+1) block.
class RankMatrix {
 public:
  explicit RankMatrix(IntMatrix r);  // validates the structural invariants
  static RankMatrix of(const Permutation& w);

  const IntMatrix& matrix() const { return r_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return r_(i, j); }
  std::size_t size() const { return r_.rows(); }

 private:
  IntMatrix r_;
};

RankMatrix rank_matrix(const Permutation& w);
IntMatrix rank_of(const IntMatrix& p);  // p <> 1 for any square integer matrix

bool entry_leq(const IntMatrix& a, const IntMatrix& b);

// sigma <= tau iff rank(tau) <=_Entry rank(sigma).
bool bruhat_leq_conv(const Permutation& sigma, const Permutation& tau);
// Reachability in the cover digraph; n <= 7.
bool bruhat_leq_oracle(const Permutation& sigma, const Permutation& tau);
inline constexpr int kOracleMaxN = 7;

// Complement identities for a permutation matrix P (n x n):
//   rows:    (P<>1)_{i,j} + ((nabla P)<>1)_{n-2-i,j} = j + 1
//   columns: (P<>1)_{i,j} + ((P nabla)<>1)_{i,n-2-j} = i + 1
// with the second term read as 0 when its index is -1.
bool complement_identity_rows(const IntMatrix& p);
bool complement_identity_cols(const IntMatrix& p);
// The same sums with the unshifted index n-1-i (resp. n-1-j).
bool complement_identity_rows_unshifted(const IntMatrix& p);
bool complement_identity_cols_unshifted(const IntMatrix& p);
// Last row of P <> 1 is (1, 2, ..., n); likewise the last column.
bool last_row_identity(const IntMatrix& p);

struct EquivalenceRow {
  std::string relation;
  bool permutation_side = false;  // oracle on the permutations
  bool matrix_side = false;       // entrywise rank comparison
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;  // four relations
  bool rows_identity = false;
  bool cols_identity = false;
  bool rows_identity_unshifted = false;
  bool cols_identity_unshifted = false;

  bool all_agree() const;
};

// Four equivalent relations for sigma = w(Q), tau = w(P), with w0 the
// longest element and nabla its matrix. In one-line terms nabla P is
// tau w0 and P nabla is w0 tau.
//   sigma <= tau             <=>  P<>1 <=_E Q<>1
//   tau w0 <= sigma w0       <=>  (nabla Q)<>1 <=_E (nabla P)<>1
//   w0 tau <= w0 sigma       <=>  (Q nabla)<>1 <=_E (P nabla)<>1
//   sigma^-1 <= tau^-1       <=>  P^T<>1 <=_E Q^T<>1
// plus the complement identities on both matrices.
EquivalenceReport verify_equivalences(const Permutation& sigma, const Permutation& tau);

}  // namespace juryconv
