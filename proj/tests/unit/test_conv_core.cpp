#include <doctest.h>

#include "juryconv/conv_matrix.hpp"
#include "juryconv/random.hpp"
#include "helpers.hpp"

using namespace juryconv;
using testing::cmat;
using testing::q;
using testing::rmat;

namespace {

// Straight transcription of the defining double sum, kept separate from conv().
ConvMatrix<Rational> conv_oracle(const ConvMatrix<Rational>& a, const ConvMatrix<Rational>& b) {
  ConvMatrix<Rational> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational s;
      for (std::size_t l = 0; l <= i; ++l)
        for (std::size_t k = 0; k <= j; ++k) s += a(l, k) * b(i - l, j - k);
      c(i, j) = s;
    }
  return c;
}

const std::vector<std::pair<std::size_t, std::size_t>> kShapes{
    {1, 1}, {2, 2}, {3, 3}, {2, 5}, {5, 2}, {4, 4}, {5, 5}};

}  // namespace

TEST_CASE("conv examples") {
  const auto a = rmat({{1, 2}, {3, 4}});
  const auto b = rmat({{5, 6}, {7, 8}});
  CHECK(conv(a, b) == rmat({{5, 16}, {22, 60}}));
  CHECK(conv(conv_identity<Rational>(2, 2), a) == a);
  CHECK(conv(a, ConvMatrix<Rational>::zeros(2, 2)) == ConvMatrix<Rational>::zeros(2, 2));
  CHECK(conv(a, b) == conv_oracle(a, b));
}

TEST_CASE("conv rejects mismatched shapes") {
  CHECK_THROWS_AS(conv(rmat({{1, 2}}), rmat({{1}, {2}})), ShapeMismatch);
  CHECK_THROWS_AS(add(rmat({{1, 2}}), rmat({{1}, {2}})), ShapeMismatch);
  CHECK_THROWS_AS(ConvMatrix<Rational>(0, 3), ShapeMismatch);
  CHECK_THROWS_AS(ConvMatrix<Rational>::from_rows({{1, 2}, {3}}), ShapeMismatch);
}

TEST_CASE("identity") {
  CHECK(conv_identity<Rational>(1, 1) == rmat({{1}}));
  CHECK(conv_identity<Rational>(2, 2) == rmat({{1, 0}, {0, 0}}));
  CHECK(conv_identity<Rational>(2, 3) == rmat({{1, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("naive powers") {
  const auto a = rmat({{1, 2}, {3, 4}});
  CHECK(conv_power_naive(a, 0) == conv_identity<Rational>(2, 2));
  CHECK(conv_power_naive(a, 1) == a);
  CHECK(conv_power_naive(a, 2) == rmat({{1, 4}, {6, 20}}));

  // Symbolic 2x2 square [[a^2, 2ab], [2ac, 2ad + 2bc]] at several points.
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_rational_matrix(2, 2, rng);
    const Rational x = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const ConvMatrix<Rational> expect{{x * x, Rational(2) * x * b},
                                      {Rational(2) * x * c, Rational(2) * x * d + Rational(2) * b * c}};
    REQUIRE(conv_power_naive(m, 2) == expect);
  }
}

TEST_CASE("squaring power equals naive power") {
  Rng rng(12);
  for (auto [m, n] : kShapes)
    for (unsigned k = 0; k <= 7; ++k) {
      const auto a = random_rational_matrix(m, n, rng);
      REQUIRE(conv_power_squaring(a, k) == conv_power_naive(a, k));
    }
}

TEST_CASE("inverse examples") {
  const auto a = rmat({{1, 2}, {3, 4}});
  const auto expect = rmat({{1, -2}, {-3, 8}});
  CHECK(conv_inverse_recursive(a) == expect);
  CHECK(conv_inverse_ch(a) == expect);
  // the annihilator expansion 3 I - 3 A + A^2
  const auto poly = add(subtract(scale(Rational(3), conv_identity<Rational>(2, 2)),
                                 scale(Rational(3), a)),
                        conv(a, a));
  CHECK(poly == expect);

  const auto id = conv_identity<Rational>(2, 2);
  CHECK(conv_inverse_recursive(id) == id);
  CHECK(conv_inverse_ch(rmat({{2}})) == ConvMatrix<Rational>{{q("1/2")}});
  const auto c = scale(q("-7/3"), conv_identity<Rational>(3, 2));
  CHECK(conv_inverse_ch(c) == scale(q("-3/7"), conv_identity<Rational>(3, 2)));
}

TEST_CASE("singular inverse") {
  const auto a = rmat({{0, 1}, {1, 1}});
  CHECK_THROWS_AS(conv_inverse_recursive(a), SingularMatrix);
  CHECK_THROWS_AS(conv_inverse_ch(a), SingularMatrix);
  try {
    conv_inverse_recursive(a);
  } catch (const SingularMatrix& e) {
    CHECK(e.entry() == "0");
  }
  // float threshold: |a00| <= 1e-12 max(1, max|a_ij|)
  CHECK_THROWS_AS(conv_inverse_recursive(cmat({{1e-13, 1}, {0, 0}})), SingularMatrix);
  CHECK_THROWS_AS(conv_inverse_recursive(cmat({{1e-9, 1e4}, {0, 0}})), SingularMatrix);
  CHECK_NOTHROW(conv_inverse_recursive(cmat({{1e-9, 1}, {0, 0}})));
}

TEST_CASE("elementwise operations") {
  const auto a = rmat({{1, 2}, {3, 4}});
  CHECK(transpose(a) == rmat({{1, 3}, {2, 4}}));
  CHECK(transpose(rmat({{1, 2, 3}})) == rmat({{1}, {2}, {3}}));
  CHECK(add(a, ConvMatrix<Rational>::zeros(2, 2)) == a);
  CHECK(scale(Rational(2), conv_identity<Rational>(2, 2)) == rmat({{2, 0}, {0, 0}}));
  CHECK(subtract(a, a).is_zero());
}

TEST_CASE("ring axioms hold exactly on random rational matrices") {
  Rng rng(2024);
  for (auto [m, n] : kShapes)
    for (int t = 0; t < 30; ++t) {
      const auto a = random_rational_matrix(m, n, rng);
      const auto b = random_rational_matrix(m, n, rng);
      const auto c = random_rational_matrix(m, n, rng);
      const Rational s = random_rational_matrix(1, 1, rng)(0, 0);
      REQUIRE(conv(a, b) == conv_oracle(a, b));
      REQUIRE(conv(a, b) == conv(b, a));
      REQUIRE(conv(conv(a, b), c) == conv(a, conv(b, c)));
      REQUIRE(conv(a, add(b, c)) == add(conv(a, b), conv(a, c)));
      REQUIRE(conv(scale(s, a), b) == scale(s, conv(a, b)));
      REQUIRE(transpose(conv(a, b)) == conv(transpose(a), transpose(b)));
      REQUIRE(conv(conv_identity<Rational>(m, n), a) == a);
    }
}

TEST_CASE("inverse constructions agree and satisfy the product rule") {
  Rng rng(99);
  for (auto [m, n] : kShapes)
    for (int t = 0; t < 20; ++t) {
      const auto a = random_invertible_rational_matrix(m, n, rng);
      const auto b = random_invertible_rational_matrix(m, n, rng);
      const auto ia = conv_inverse_recursive(a);
      REQUIRE(ia == conv_inverse_ch(a));
      REQUIRE(conv(a, ia) == conv_identity<Rational>(m, n));
      REQUIRE(conv_inverse_recursive(conv(a, b)) == conv(ia, conv_inverse_recursive(b)));
    }
}

TEST_CASE("complex backend agrees with the rational backend") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_invertible_rational_matrix(3, 4, rng);
    const auto b = random_rational_matrix(3, 4, rng);
    const auto ab = to_complex(conv(a, b));
    CHECK(testing::max_diff(conv(to_complex(a), to_complex(b)), ab) <= 1e-10 * std::max(1.0, ab.max_abs()));
    const auto inv = to_complex(conv_inverse_recursive(a));
    CHECK(testing::max_diff(conv_inverse_ch(to_complex(a)), inv) <= 1e-8 * std::max(1.0, inv.max_abs()));
  }
}
