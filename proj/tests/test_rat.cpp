#include "doctest.h"
#include "lapcas/rat.hpp"

#include <stdexcept>

using lapcas::Rat;

TEST_CASE("construction canonicalizes") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(3, -6) == Rat(-1, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(2, 4).num() == 1);
  CHECK(Rat(2, 4).den() == 2);
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("parse accepts integers, fractions and exact decimals") {
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("-3/4") == Rat(-3, 4));
  CHECK(Rat::parse("+1/2") == Rat(1, 2));
  CHECK(Rat::parse("0.25") == Rat(1, 4));
  CHECK(Rat::parse("-0.1") == Rat(-1, 10));
  CHECK(Rat::parse("2.") == Rat(2));
  CHECK(Rat::parse("3/6") == Rat(1, 2));  // canonicalized, not raw
  CHECK(Rat::parse("12345678901234567890/3") == Rat(mpz_class("4115226300411522630")));
}

TEST_CASE("parse rejects garbage") {
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1e5"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(Rat::parse("--1"), std::invalid_argument);
}

TEST_CASE("arithmetic") {
  const Rat a(1, 3), b(1, 6);
  CHECK(a + b == Rat(1, 2));
  CHECK(a - b == Rat(1, 6));
  CHECK(a * b == Rat(1, 18));
  CHECK(a / b == Rat(2));
  CHECK(-a == Rat(-1, 3));
  CHECK_THROWS_AS(a / Rat(0), std::domain_error);
  CHECK(Rat(3, 4).inverse() == Rat(4, 3));
  CHECK_THROWS_AS(Rat(0).inverse(), std::domain_error);
}

TEST_CASE("predicates and ordering") {
  CHECK(Rat(0).is_zero());
  CHECK(Rat(1).is_one());
  CHECK(Rat(4, 2).is_integer());
  CHECK_FALSE(Rat(1, 2).is_integer());
  CHECK(Rat(-1, 2).sign() == -1);
  CHECK(Rat(1, 2) < Rat(2, 3));
  CHECK(Rat(-5) < Rat(-4));
  CHECK(Rat(1, 3).abs() == Rat(1, 3));
  CHECK(Rat(-1, 3).abs() == Rat(1, 3));
}

TEST_CASE("pow") {
  CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
  CHECK(Rat(2, 3).pow(0) == Rat(1));
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK(Rat(-2).pow(3) == Rat(-8));
  CHECK_THROWS_AS(Rat(0).pow(-1), std::domain_error);
}

TEST_CASE("to_string") {
  CHECK(Rat(5).to_string() == "5");
  CHECK(Rat(-3, 4).to_string() == "-3/4");
  CHECK(Rat(2, 4).to_string() == "1/2");
  CHECK(Rat(0).to_string() == "0");
}

TEST_CASE("to_double") {
  CHECK(Rat(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(Rat(-7, 8).to_double() == doctest::Approx(-0.875));
}

TEST_CASE("rat_sqrt") {
  Rat r;
  CHECK(lapcas::rat_sqrt(Rat(9, 4), r));
  CHECK(r == Rat(3, 2));
  CHECK(lapcas::rat_sqrt(Rat(0), r));
  CHECK(r == Rat(0));
  CHECK(lapcas::rat_sqrt(Rat(1), r));
  CHECK(r == Rat(1));
  CHECK_FALSE(lapcas::rat_sqrt(Rat(2), r));
  CHECK_FALSE(lapcas::rat_sqrt(Rat(-4), r));
  CHECK_FALSE(lapcas::rat_sqrt(Rat(4, 3), r));
  CHECK(lapcas::rat_sqrt(Rat(144, 169), r));
  CHECK(r == Rat(12, 13));
}
