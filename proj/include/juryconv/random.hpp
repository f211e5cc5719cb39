#pragma once

#include <cstdint>
#include <random>

#include "juryconv/conv_matrix.hpp"

namespace juryconv {

// Seeded generator whose draws depend only on the engine's output, so a seed
// reproduces the same values on every build of this library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // Uniform on the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 eng_;
};

// Independent stream seed for trial `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Entries p/q with |p| <= num_bound and 1 <= q <= den_bound.
ConvMatrix<Rational> random_rational_matrix(std::size_t rows, std::size_t cols, Rng& rng,
                                            int num_bound = 9, int den_bound = 4);

// Same, conditioned on a00 != 0.
ConvMatrix<Rational> random_invertible_rational_matrix(std::size_t rows, std::size_t cols,
                                                       Rng& rng, int num_bound = 9,
                                                       int den_bound = 4);

}  // namespace juryconv
