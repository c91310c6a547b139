#include <doctest.h>

#include <limits>
#include <stdexcept>

#include "optidep/rational.hpp"

using optidep::Rational;

TEST_CASE("rational normalizes sign and common factors") {
  Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(Rational(0, -7) == Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("7.5") == Rational(15, 2));
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("0.25").str() == "0.25");
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(-59, 10).str() == "-5.9");
  CHECK(Rational(4).str() == "4");
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1.2.3"));
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(3, 5) == Rational(-3, 5));
  CHECK(Rational::parse("5.9") + Rational::parse("7.5") + Rational::parse("46") ==
        Rational::parse("59.4"));
}

TEST_CASE("rational ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(7, 3) > Rational(2));
}

TEST_CASE("rational overflow is reported, not wrapped") {
  Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + Rational(1), std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
}

TEST_CASE("rational from_double uses the shortest decimal") {
  CHECK(Rational::from_double(7.5) == Rational(15, 2));
  CHECK(Rational::from_double(9.8) == Rational(49, 5));
  CHECK(Rational::from_double(0.0) == Rational(0));
}
