#include <doctest.h>

#include <map>
#include <utility>
#include <vector>

#include "juryconv/numerics.hpp"
#include "juryconv/random.hpp"
#include "helpers.hpp"

using namespace juryconv;
using testing::q;

TEST_CASE("binomial examples") {
  CHECK(binomial(3, 1) == 3);
  CHECK(binomial(3, 3) == 1);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(0, 0) == 1);
}

TEST_CASE("binomial matches a Pascal triangle") {
  std::vector<std::vector<BigInt>> tri{{1}};
  for (unsigned n = 1; n <= 60; ++n) {
    std::vector<BigInt> row(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) row[k] = tri[n - 1][k - 1] + tri[n - 1][k];
    tri.push_back(row);
  }
  for (unsigned n = 0; n <= 60; ++n)
    for (unsigned k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == tri[n][k]);
  // large values stay exact
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("Pascal recurrence for n <= 30") {
  for (unsigned n = 1; n <= 30; ++n)
    for (unsigned k = 1; k <= n; ++k)
      REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("generalized binomial") {
  CHECK(generalized_binomial(2, 1) == doctest::Approx(2));
  CHECK(generalized_binomial(0.5, 2) == doctest::Approx(-0.125));
  CHECK(generalized_binomial(0.5, 3) == doctest::Approx(0.0625));
  for (double a : {-3.7, 0.0, 0.5, 11.0}) CHECK(generalized_binomial(a, 0) == 1.0);
  CHECK(generalized_binomial(-1, 5) == doctest::Approx(-1));

  for (unsigned a = 0; a <= 20; ++a)
    for (unsigned k = 0; k <= 25; ++k) {
      const double exact = binomial(a, k).get_d();
      const double got = generalized_binomial(a, k);
      if (exact == 0.0) REQUIRE(got == 0.0);
      else REQUIRE(std::abs(got - exact) <= 1e-12 * exact);
    }
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(5, 2) == doctest::Approx(20));
  CHECK(falling_factorial(0.5, 2) == doctest::Approx(-0.25));
  CHECK(falling_factorial(7, 0) == 1.0);
}

TEST_CASE("factorial table memoizes and extends past its cap") {
  FactorialTable small(5);
  CHECK(small.cap() == 5);
  BigInt f = 1;
  for (unsigned n = 0; n <= 30; ++n) {
    if (n > 0) f *= n;
    REQUIRE(small(n) == f);
    REQUIRE(factorial(n) == f);
  }
  CHECK(FactorialTable().cap() == 64);
}

TEST_CASE("multiset weight") {
  std::map<std::pair<int, int>, int> a{{{1, 0}, 1}, {{0, 1}, 1}};
  std::map<std::pair<int, int>, int> b{{{1, 0}, 2}};
  std::map<std::pair<int, int>, int> c{{{1, 0}, 3}, {{0, 1}, 2}};
  CHECK(multiset_weight(a) == Rational(1));
  CHECK(multiset_weight(b) == q("1/2"));
  CHECK(multiset_weight(c) == q("1/12"));
  const std::vector<int> bad{1, 0};
  CHECK_THROWS(multiset_weight(std::span<const int>(bad)));
}

TEST_CASE("rationals are reduced with positive denominator") {
  const Rational r(BigInt(6), BigInt(-4));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(4).str() == "4");
  CHECK(q("10/4") == q("5/2"));
  CHECK(q("-0.125") == q("-1/8"));
  CHECK(q("3e-2") == q("3/100"));
  CHECK_THROWS_AS(q("1/0"), Error);
  CHECK_THROWS_AS(q("abc"), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK(q("1/3") < q("1/2"));
}

TEST_CASE("rational to double rounds to nearest") {
  CHECK(q("1/1000").to_double() == 1e-3);
  CHECK(q("1/3").to_double() == 1.0 / 3.0);
  CHECK(q("-2/3").to_double() == -2.0 / 3.0);
  CHECK(q("1/10").to_double() == 0.1);
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const long p = static_cast<long>(rng.integer(-100000, 100000));
    const long d = static_cast<long>(rng.integer(1, 100000));
    REQUIRE(Rational(BigInt(p), BigInt(d)).to_double() ==
            static_cast<double>(p) / static_cast<double>(d));
  }
}

TEST_CASE("rational arithmetic is exact") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    BigInt p = static_cast<long>(rng.integer(-1000000, 1000000));
    BigInt d = static_cast<long>(rng.integer(1, 1000000));
    if (p == 0) p = 1;
    const Rational a(p, d);
    const Rational inv(d, p);
    REQUIRE(a * inv == Rational(1));
    REQUIRE((a + inv) - inv == a);
    REQUIRE(a.denominator() > 0);
  }
}

TEST_CASE("complex comparison is tolerance aware") {
  CHECK(approx_equal(Complex(1.0, 0.0), Complex(1.0 + 1e-14, 0.0)));
  CHECK_FALSE(approx_equal(Complex(1.0, 0.0), Complex(1.001, 0.0)));
  CHECK(approx_equal(Complex(0.0, 0.0), Complex(1e-13, -1e-13)));
}

TEST_CASE("complex matrices reject non-finite entries") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS(ConvMatrix<Complex>(1, 2, {Complex(1, 0), Complex(inf, 0)}));
  CHECK_THROWS(ConvMatrix<Complex>(1, 1, {Complex(0, std::nan(""))}));
}
