#include "juryconv/random.hpp"

namespace juryconv {

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error("Rng::integer: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(eng_());
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a combined state
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ConvMatrix<Rational> random_rational_matrix(std::size_t rows, std::size_t cols, Rng& rng,
                                            int num_bound, int den_bound) {
  std::vector<Rational> d;
  d.reserve(rows * cols);
  for (std::size_t t = 0; t < rows * cols; ++t)
    d.emplace_back(BigInt(static_cast<long>(rng.integer(-num_bound, num_bound))),
                   BigInt(static_cast<long>(rng.integer(1, den_bound))));
  return ConvMatrix<Rational>(rows, cols, std::move(d));
}

ConvMatrix<Rational> random_invertible_rational_matrix(std::size_t rows, std::size_t cols,
                                                       Rng& rng, int num_bound,
                                                       int den_bound) {
  auto m = random_rational_matrix(rows, cols, rng, num_bound, den_bound);
  while (m(0, 0).is_zero())
    m(0, 0) = Rational(BigInt(static_cast<long>(rng.integer(-num_bound, num_bound))),
                       BigInt(static_cast<long>(rng.integer(1, den_bound))));
  return m;
}

}  // namespace juryconv
