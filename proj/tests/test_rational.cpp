#include <doctest.h>

#include "pcsn/errors.hpp"
#include "pcsn/rational.hpp"

using namespace pcsn;

TEST_CASE("parse and print round-trip") {
  CHECK(rat_to_string(parse_rat("3.25")) == "3.25");
  CHECK(rat_to_string(parse_rat("-0.5")) == "-0.5");
  CHECK(rat_to_string(parse_rat("12")) == "12");
  CHECK(rat_to_string(parse_rat("1/3")) == "1/3");
  CHECK(rat_to_string(parse_rat("7/2")) == "3.5");
  CHECK(parse_rat("0.1") == rat(1, 10));
  CHECK(parse_rat("2/4") == rat(1, 2));
}

TEST_CASE("fraction sidecar form") {
  CHECK(rat_to_fraction(rat(7, 2)) == "7/2");
  CHECK(rat_to_fraction(rat(-7, 2)) == "-7/2");
  CHECK(rat_to_fraction(rat(4)) == "4");
}

TEST_CASE("non-dyadic denominators stay exact") {
  Rat third = parse_rat("1/3");
  CHECK(third + third + third == 1);
  CHECK(rat_to_string(third * 3) == "1");
}

TEST_CASE("malformed literals are rejected") {
  CHECK_THROWS_AS(parse_rat(""), DomainError);
  CHECK_THROWS_AS(parse_rat("1.2.3"), DomainError);
  CHECK_THROWS_AS(parse_rat("x"), DomainError);
  CHECK_THROWS_AS(parse_rat("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rat("1/ 2"), DomainError);
}

TEST_CASE("arithmetic is exact and deterministic") {
  Rat x = rat(1, 3);
  for (int i = 0; i < 64; ++i) x = x * rat(7, 5) - rat(1, 9);
  Rat y = rat(1, 3);
  for (int i = 0; i < 64; ++i) y = y * rat(7, 5) - rat(1, 9);
  CHECK(x == y);
  CHECK(parse_rat(rat_to_string(x)) == x);
}
