#include "juryconv/partitions.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace juryconv {

IndexGrid::IndexGrid(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw ShapeMismatch("index grid must be at least 1x1");
}

std::vector<GridIndex> IndexGrid::indices(bool exclude_origin) const {
  std::vector<GridIndex> out;
  out.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (int p = 0; p < rows_; ++p)
    for (int q = 0; q < cols_; ++q) {
      if (exclude_origin && p == 0 && q == 0) continue;
      out.push_back({p, q});
    }
  return out;
}

MultisetPartition::MultisetPartition(std::vector<Part> parts)
    : parts_(std::move(parts)) {
  std::vector<int> mult;
  mult.reserve(parts_.size());
  for (std::size_t t = 0; t < parts_.size(); ++t) {
    const Part& p = parts_[t];
    if (p.multiplicity < 1) throw Error("partition multiplicity must be >= 1");
    if (t > 0 && !(parts_[t - 1].index < p.index))
      throw Error("partition parts must be strictly increasing");
    size_ += p.multiplicity;
    sum_.row += p.multiplicity * p.index.row;
    sum_.col += p.multiplicity * p.index.col;
    mult.push_back(p.multiplicity);
  }
  weight_ = multiset_weight(std::span<const int>(mult));
}

int MultisetPartition::multiplicity(GridIndex ix) const {
  for (const auto& p : parts_)
    if (p.index == ix) return p.multiplicity;
  return 0;
}

std::string MultisetPartition::str() const {
  std::ostringstream os;
  for (std::size_t t = 0; t < parts_.size(); ++t) {
    if (t) os << ' ';
    os << '(' << parts_[t].index.row << ',' << parts_[t].index.col << ")^"
       << parts_[t].multiplicity;
  }
  return os.str();
}

namespace {

struct Enumerator {
  const std::vector<GridIndex>& elems;
  std::size_t cap;
  PartitionList out;
  std::vector<MultisetPartition::Part> current;

  // Chooses multiplicities for elems[from..] with `remaining` elements left
  // to place and (ri, rj) of the target still to cover.
  void run(std::size_t from, int remaining, int ri, int rj) {
    if (remaining == 0) {
      if (ri == 0 && rj == 0) {
        if (out.size() >= cap)
          throw SizeLimitExceeded("partition enumeration exceeded cap of " +
                                  std::to_string(cap) + " multisets");
        out.emplace_back(current);
      }
      return;
    }
    for (std::size_t e = from; e < elems.size(); ++e) {
      const GridIndex g = elems[e];
      // Every later element is >= g lexicographically, so each remaining
      // element adds at least g.row to the row sum and, past the origin, at
      // least one to the total degree.
      if (static_cast<long>(remaining) * g.row > ri) break;
      if ((g.row > 0 || g.col > 0) && remaining > ri + rj) break;
      if (g.row > ri || g.col > rj) continue;
      int max_c = remaining;
      if (g.row > 0) max_c = std::min(max_c, ri / g.row);
      if (g.col > 0) max_c = std::min(max_c, rj / g.col);
      // Larger multiplicities first would break lexicographic order of the
      // flattened sequences, so emit c = max_c .. 1.
      for (int c = max_c; c >= 1; --c) {
        current.push_back({g, c});
        run(e + 1, remaining - c, ri - c * g.row, rj - c * g.col);
        current.pop_back();
      }
    }
  }
};

using CacheKey = std::tuple<int, int, int, int, int, bool>;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<CacheKey, std::shared_ptr<const PartitionList>>& cache() {
  static std::map<CacheKey, std::shared_ptr<const PartitionList>> c;
  return c;
}

}  // namespace

std::shared_ptr<const PartitionList> enumerate_partitions(
    const IndexGrid& grid, int count, GridIndex target, bool exclude_origin,
    std::size_t cap) {
  if (count < 1) throw Error("enumerate_partitions: count must be >= 1");
  if (!grid.contains(target)) throw Error("enumerate_partitions: target outside grid");
  const CacheKey key{grid.rows(), grid.cols(), count, target.row, target.col,
                     exclude_origin};
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) {
      if (it->second->size() > cap)
        throw SizeLimitExceeded("partition enumeration exceeded cap of " +
                                std::to_string(cap) + " multisets");
      return it->second;
    }
  }
  const std::vector<GridIndex> elems = grid.indices(exclude_origin);
  Enumerator en{elems, cap, {}, {}};
  en.run(0, count, target.row, target.col);
  auto result = std::make_shared<const PartitionList>(std::move(en.out));
  std::lock_guard lock(cache_mutex());
  return cache().emplace(key, std::move(result)).first->second;
}

void clear_partition_cache() {
  std::lock_guard lock(cache_mutex());
  cache().clear();
}

}  // namespace juryconv
