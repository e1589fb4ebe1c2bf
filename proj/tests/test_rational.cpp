#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "mudra/error.hpp"
#include "mudra/rational.hpp"

using mudra::Rational;

TEST_CASE("rational parsing normalizes") {
  CHECK(Rational::parse("4/8") == Rational(1, 2));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational::parse("0/5").is_zero());
  CHECK(Rational::parse("10/5").is_integer());
  CHECK(Rational(2, -4) == Rational(-1, 2));
}

TEST_CASE("rational parse errors") {
  CHECK_THROWS_AS(Rational::parse("1/0"), mudra::InputError);
  CHECK_THROWS_AS(Rational::parse(""), mudra::InputError);
  CHECK_THROWS_AS(Rational::parse("1.5"), mudra::InputError);
  CHECK_THROWS_AS(Rational::parse("a/b"), mudra::InputError);
  CHECK_THROWS_AS(Rational(1, 0), mudra::StructuralError);
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(7, 8) - Rational(3, 4) == Rational(1, 8));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(mudra::abs(Rational(-5, 7)) == Rational(5, 7));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(mudra::min(Rational(1, 3), Rational(1, 2)) == Rational(1, 3));
  CHECK(mudra::max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(Rational(-2).sign() == -1);
}

TEST_CASE("rational text and hashing") {
  std::ostringstream os;
  os << Rational(9, 8);
  CHECK(os.str() == "9/8");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(1, 2).numerator() == "1");
  CHECK(Rational(1, 2).denominator() == "2");
  std::unordered_set<Rational> set{Rational(1, 2), Rational(2, 4), Rational(1, 3)};
  CHECK(set.size() == 2);
  CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
}
