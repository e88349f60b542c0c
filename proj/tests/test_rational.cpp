#include "catch2/catch_amalgamated.hpp"

#include "camel/rational.hpp"

#include <random>

using camel::Rational;

TEST_CASE("rationals stay normalized", "[rational]") {
  Rational a(6, 8);
  CHECK(a.numerator() == 3);
  CHECK(a.denominator() == 4);
  Rational b(3, -6);
  CHECK(b.numerator() == -1);
  CHECK(b.denominator() == 2);
  CHECK((Rational(1, 3) + Rational(2, 3)).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("wire strings", "[rational]") {
  CHECK(Rational::parse("7/3") == Rational(7, 3));
  CHECK(Rational::parse("4/2").str() == "2");
  CHECK(Rational::parse("-5/10") == Rational(-1, 2));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational(25, 8).str() == "25/8");
  for (const char* bad : {"", "1.5", "1/0", "1e3", " 1", "1/", "/2", "--1", "1/-2", "0x10"})
    CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
}

TEST_CASE("mixed and decimal renderings", "[rational]") {
  CHECK(Rational(7, 3).mixed() == "2 1/3");
  CHECK(Rational(1, 3).mixed() == "1/3");
  CHECK(Rational(3).mixed() == "3");
  CHECK(Rational(-4, 3).mixed() == "-1 1/3");

  CHECK(Rational(25, 8).decimal() == "3.12500000000000");
  CHECK(Rational(7, 3).decimal(4) == "2.333");
  CHECK(Rational(2, 3).decimal(3) == "0.667");
  CHECK(Rational(1, 1000).decimal(2) == "0.0010");
  CHECK(Rational(123456).decimal(3) == "123000");
  CHECK(Rational(-1, 2).decimal(2) == "-0.50");
  CHECK(Rational(0).decimal() == "0");
  CHECK(Rational(999, 100).decimal(2) == "10");  // rounds up into the next decade
}

TEST_CASE("parse inverts str on random fractions", "[rational][property]") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const long num = static_cast<long>(rng() % 2000001) - 1000000;
    const long den = static_cast<long>(rng() % 100000) + 1;
    const Rational r(num, den);
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("floor and ordering", "[rational]") {
  CHECK(Rational(7, 3).floor() == 2);
  CHECK(Rational(-7, 3).floor() == -3);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(camel::max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(camel::pow2(50) == Rational(camel::BigInt("1125899906842624")));
}
