#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "juryconv/partitions.hpp"
#include "juryconv/random.hpp"
#include "helpers.hpp"

using namespace juryconv;
using testing::rmat;

namespace {

using Multiset = std::vector<GridIndex>;  // sorted element sequence

// Brute force: every nondecreasing sequence of `count` grid cells, filtered by sum.
std::set<Multiset> brute_force(int rows, int cols, int count, GridIndex target, bool exclude_origin) {
  std::vector<GridIndex> cells;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(exclude_origin && i == 0 && j == 0)) cells.push_back({i, j});
  std::set<Multiset> out;
  Multiset cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == count) {
      int si = 0, sj = 0;
      for (auto c : cur) si += c.row, sj += c.col;
      if (si == target.row && sj == target.col) out.insert(cur);
      return;
    }
    for (std::size_t t = start; t < cells.size(); ++t) {
      cur.push_back(cells[t]);
      rec(t);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Multiset expand(const MultisetPartition& p) {
  Multiset m;
  for (const auto& part : p.parts())
    for (int c = 0; c < part.multiplicity; ++c) m.push_back(part.index);
  return m;
}

}  // namespace

TEST_CASE("enumeration examples") {
  const IndexGrid g(2, 2);
  const auto star = enumerate_partitions(g, 2, {1, 1}, true);
  REQUIRE(star->size() == 1);
  CHECK(star->front().str() == "(0,1)^1 (1,0)^1");

  const auto full = enumerate_partitions(g, 2, {1, 1}, false);
  REQUIRE(full->size() == 2);
  CHECK((*full)[0].str() == "(0,0)^1 (1,1)^1");
  CHECK((*full)[1].str() == "(0,1)^1 (1,0)^1");

  CHECK(enumerate_partitions(g, 3, {0, 1}, true)->empty());
}

TEST_CASE("partition invariants") {
  const IndexGrid g(3, 4);
  for (int count = 1; count <= 5; ++count)
    for (const auto& p : *enumerate_partitions(g, count, {2, 3}, false)) {
      CHECK(p.size() == count);
      CHECK(p.sum() == GridIndex{2, 3});
      Rational w(1);
      for (const auto& part : p.parts()) {
        CHECK(part.multiplicity >= 1);
        CHECK(g.contains(part.index));
        w *= Rational(factorial(static_cast<unsigned>(part.multiplicity)));
      }
      CHECK(p.weight() * w == Rational(1));
    }
}

TEST_CASE("enumeration matches brute force on grids up to 4x4") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      for (int count = 1; count <= 6; ++count)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            for (bool excl : {true, false}) {
              const auto got = enumerate_partitions(IndexGrid(m, n), count, {i, j}, excl);
              std::vector<Multiset> listed;
              for (const auto& p : *got) listed.push_back(expand(p));
              // deterministic lexicographic order, no duplicates
              REQUIRE(std::is_sorted(listed.begin(), listed.end()));
              REQUIRE(std::adjacent_find(listed.begin(), listed.end()) == listed.end());
              const std::set<Multiset> as_set(listed.begin(), listed.end());
              REQUIRE(as_set == brute_force(m, n, count, {i, j}, excl));
            }
}

TEST_CASE("enumeration is memoized and capped") {
  clear_partition_cache();
  const IndexGrid g(3, 3);
  const auto a = enumerate_partitions(g, 3, {2, 2}, false);
  const auto b = enumerate_partitions(g, 3, {2, 2}, false);
  CHECK(a.get() == b.get());
  CHECK_THROWS_AS(enumerate_partitions(IndexGrid(6, 6), 10, {5, 5}, false, 10), SizeLimitExceeded);
}

TEST_CASE("elementary sums") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_rational_matrix(2, 2, rng);
    CHECK(elementary_sum(a, 1, {1, 1}) == a(1, 1));
    CHECK(elementary_sum(a, 2, {1, 1}) == a(0, 1) * a(1, 0));
    CHECK(elementary_sum(a, 3, {1, 1}) == Rational(0));
  }
  // second-order term on a row vector: a01^2 / 2!
  const auto r = rmat({{5, 3, 7}});
  CHECK(elementary_sum(r, 2, {0, 2}) == Rational(9) / Rational(2));
  CHECK(elementary_sum(r, 1, {0, 2}) == Rational(7));
  CHECK_THROWS(elementary_sum(r, 1, {0, 0}));
  CHECK_THROWS(elementary_sum(r, 0, {0, 1}));

  const auto b = random_rational_matrix(4, 3, rng);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == 0 && j == 0) continue;
      for (int l = i + j + 1; l <= i + j + 3; ++l) CHECK(elementary_sum(b, l, {i, j}).is_zero());
    }
}

TEST_CASE("partition power equals naive power") {
  const auto a = rmat({{1, 2}, {3, 4}});
  CHECK(conv_power_partition(a, 3) == conv_power_naive(a, 3));
  CHECK(conv_power_partition(a, 1) == a);
  CHECK(conv_power_partition(a, 2) == rmat({{1, 4}, {6, 20}}));

  Rng rng(8);
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n)
      for (unsigned k = 1; k <= 6; ++k) {
        const auto x = random_rational_matrix(m, n, rng);
        REQUIRE(conv_power_partition(x, k) == conv_power_naive(x, k));
      }
}

TEST_CASE("matrices with zero origin are nilpotent of order M+N-1") {
  Rng rng(21);
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto x = shift_origin(random_rational_matrix(m, n, rng));
      REQUIRE(conv_power_naive(x, static_cast<unsigned>(m + n - 1)).is_zero());
    }
}
