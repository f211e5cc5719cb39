#pragma once

// Multisets of grid indices with a prescribed element count and vector sum.
// These index the entries of convolution powers and of matrix transforms.

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "juryconv/conv_matrix.hpp"
#include "juryconv/numerics.hpp"

namespace juryconv {

struct GridIndex {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

// K_{M,N} = [0:M-1] x [0:N-1]; K*_{M,N} drops the origin.
class IndexGrid {
 public:
  IndexGrid(int rows, int cols);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool contains(GridIndex ix) const {
    return ix.row >= 0 && ix.col >= 0 && ix.row < rows_ && ix.col < cols_;
  }
  // Row-major (lexicographic) listing.
  std::vector<GridIndex> indices(bool exclude_origin) const;

  friend bool operator==(const IndexGrid&, const IndexGrid&) = default;

 private:
  int rows_;
  int cols_;
};

class MultisetPartition {
 public:
  struct Part {
    GridIndex index;
    int multiplicity;
    friend bool operator==(const Part&, const Part&) = default;
  };

  // Parts must be sorted lexicographically with multiplicities >= 1.
  explicit MultisetPartition(std::vector<Part> parts);

  const std::vector<Part>& parts() const { return parts_; }
  int size() const { return size_; }          // total element count
  GridIndex sum() const { return sum_; }      // vector sum
  int multiplicity(GridIndex ix) const;

  // 1 / prod c_S(p,q)!
  const Rational& weight() const { return weight_; }

  // "(p,q)^c (p,q)^c ..."
  std::string str() const;

  friend bool operator==(const MultisetPartition& a, const MultisetPartition& b) {
    return a.parts_ == b.parts_;
  }

 private:
  std::vector<Part> parts_;
  int size_ = 0;
  GridIndex sum_{};
  Rational weight_;
};

using PartitionList = std::vector<MultisetPartition>;

inline constexpr std::size_t kDefaultPartitionCap = 1'000'000;

// All multisets of exactly `count` elements of K_{M,N} (or K* when
// exclude_origin) summing to `target`, in lexicographic order of their
// sorted element sequences. Results are memoized per argument tuple.
// Throws SizeLimitExceeded past `cap` multisets.
std::shared_ptr<const PartitionList> enumerate_partitions(
    const IndexGrid& grid, int count, GridIndex target, bool exclude_origin,
    std::size_t cap = kDefaultPartitionCap);

void clear_partition_cache();

namespace detail {
template <Scalar T>
T partition_product(const ConvMatrix<T>& a, const MultisetPartition& s) {
  T prod = ScalarTraits<T>::one();
  for (const auto& part : s.parts())
    for (int c = 0; c < part.multiplicity; ++c)
      prod = prod * a(static_cast<std::size_t>(part.index.row),
                      static_cast<std::size_t>(part.index.col));
  return prod;
}
}  // namespace detail

// E_l(A; i, j) = sum over P*_l(i,j) of (1 / prod c!) prod a_pq.
template <FieldScalar T>
T elementary_sum(const ConvMatrix<T>& a, int count, GridIndex target) {
  const IndexGrid grid(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  if (count < 1) throw Error("elementary_sum: count must be >= 1");
  if (!grid.contains(target) || (target.row == 0 && target.col == 0))
    throw Error("elementary_sum: target must lie in K*");
  T total = ScalarTraits<T>::zero();
  if (count > target.row + target.col) return total;
  const auto parts = enumerate_partitions(grid, count, target, true);
  for (const auto& s : *parts)
    total += ScalarTraits<T>::from_rational(s.weight()) * detail::partition_product(a, s);
  return total;
}

// Table E[l][i][j] for 1 <= l <= i + j, all (i,j) in K*.
template <FieldScalar T>
class ElementarySums {
 public:
  explicit ElementarySums(const ConvMatrix<T>& a)
      : rows_(a.rows()), cols_(a.cols()),
        max_order_(static_cast<int>(a.rows() + a.cols()) - 2),
        table_(static_cast<std::size_t>(max_order_ + 1) * rows_ * cols_,
               ScalarTraits<T>::zero()) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (i == 0 && j == 0) continue;
        const int top = static_cast<int>(i + j);
        for (int l = 1; l <= top; ++l)
          at(l, i, j) = elementary_sum(a, l, {static_cast<int>(i), static_cast<int>(j)});
      }
  }

  int max_order() const { return max_order_; }
  const T& operator()(int l, std::size_t i, std::size_t j) const {
    return table_[index(l, i, j)];
  }

 private:
  T& at(int l, std::size_t i, std::size_t j) { return table_[index(l, i, j)]; }
  std::size_t index(int l, std::size_t i, std::size_t j) const {
    return (static_cast<std::size_t>(l) * rows_ + i) * cols_ + j;
  }

  std::size_t rows_, cols_;
  int max_order_;
  std::vector<T> table_;
};

// A^{<>k} from the multinomial expansion over P_k(i,j) (origin allowed):
//   entry (i,j) = sum_S k! / prod c_S! * prod a_pq.
template <FieldScalar T>
ConvMatrix<T> conv_power_partition(const ConvMatrix<T>& a, unsigned k) {
  if (k < 1) throw Error("conv_power_partition: k must be >= 1");
  const IndexGrid grid(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  const Rational kfact(factorial(k));
  ConvMatrix<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto parts = enumerate_partitions(
          grid, static_cast<int>(k), {static_cast<int>(i), static_cast<int>(j)}, false);
      T total = ScalarTraits<T>::zero();
      for (const auto& s : *parts)
        total += ScalarTraits<T>::from_rational(kfact * s.weight()) *
                 detail::partition_product(a, s);
      r(i, j) = total;
    }
  return r;
}

}  // namespace juryconv
