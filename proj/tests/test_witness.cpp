#include "gen.hpp"

#include "gdet/witness.hpp"

#include <doctest.h>

using namespace gdet;
using namespace gdet::witness;

TEST_SUITE("witness") {

TEST_CASE("families hit their closed forms for small parameters") {
  for (long p = -60; p <= 60; ++p) {
    const BigInt b(p);
    REQUIRE(det_group(build(F1{b})) == 16 * b + 1);
    REQUIRE(det_group(build(F2a{b})) == (BigInt(8 * p + 1) << 16));
    REQUIRE(det_group(build(F2b{b})) == (BigInt(8 * p - 3) << 16));
    REQUIRE(det_group(build(F3{b})) == (BigInt(4 * p + 1) << 24));
    REQUIRE(det_group(build(F5even{b})) == (BigInt(2 * p) << 26));
    REQUIRE(det_group(build(F5odd{b})) == (BigInt(2 * p + 1) << 26));
    for (long q = -12; q <= 12; ++q) {
      REQUIRE(det_group(build(F4{b, BigInt(q)})) == (BigInt((4 * p + 1) * (8 * q + 3)) << 24));
    }
  }
}

TEST_CASE("sample values and descriptions") {
  CHECK(det_group(build(F4{0, 0})) == 50331648);
  CHECK(det_group(build(F4{-1, 0})) == -150994944);
  CHECK(describe(F4{-1, 0}) == "F4 m=-1 n=0");
  CHECK(family_name(F5odd{3}) == "F5odd");
  CHECK(target_value(F2b{0}) == -196608);
  CHECK(build(F1{1}) == Assignment::of({2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(build(F1{0}) == Assignment::of({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("dispatch picks the expected family") {
  CHECK(describe(witness_for(BigInt(17))->family) == "F1 m=1");
  CHECK(describe(witness_for(BigInt(-196608))->family) == "F2b k=0");
  CHECK(describe(witness_for(BigInt(5) << 16)->family) == "F2b k=1");
  CHECK(describe(witness_for(BigInt(9) << 16)->family) == "F2a k=1");
  CHECK(describe(witness_for(BigInt(15) << 24)->family) == "F4 m=1 n=0");
  CHECK(describe(witness_for(BigInt(0))->family) == "F5even k=0");
  CHECK(describe(witness_for(BigInt(3) << 26)->family) == "F5odd k=1");
  CHECK_FALSE(witness_for(BigInt(7)).has_value());
  CHECK_FALSE(witness_for(BigInt(7) << 24).has_value());
  CHECK_FALSE(witness_for(-(BigInt(1) << 24)).has_value());
  CHECK_THROWS_AS(family_for(classifier::NotMember{"x"}), std::invalid_argument);
}

TEST_CASE("property: every classified member gets a witness of that value") {
  testgen::Gen g(41);
  int built = 0;
  for (int i = 0; i < 3000; ++i) {
    const unsigned w = static_cast<unsigned>(std::array{0, 16, 24, 26, 27, 40}[static_cast<std::size_t>(g.in(0, 5))]);
    const BigInt v = g.big(static_cast<unsigned>(g.in(1, 30))) << w;
    const auto c = classifier::classify_c24(v);
    const auto wit = witness_for(v);
    REQUIRE(wit.has_value() == classifier::is_member(c));
    if (wit) {
      REQUIRE(det_group(wit->assignment) == v);
      REQUIRE(target_value(wit->family) == v);
      ++built;
    }
  }
  CHECK(built > 1000);
}

TEST_CASE("huge members") {
  const BigInt v = (BigInt(1) << 300) + 1;
  const auto wit = witness_for(v);
  REQUIRE(wit);
  CHECK(det_group(wit->assignment) == v);
  const BigInt e = (parse_integer("123456789123456789123456789") * 4 + 1) << 16;
  CHECK(det_group(witness_for(e)->assignment) == e);
}

}  // TEST_SUITE
