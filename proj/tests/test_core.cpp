#include "frozen.hpp"
#include "gen.hpp"

#include "gdet/core.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace gdet;

TEST_SUITE("core") {

TEST_CASE("parse_integer accepts signed decimals of any length") {
  CHECK(parse_integer("0") == 0);
  CHECK(parse_integer("-17") == -17);
  CHECK(to_string(parse_integer("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK(parse_integer("+5") == 5);
  for (const char* bad : {"", "-", "+", " 5", "5 ", "1e3", "0x10", "12a", "--1"}) {
    CHECK_THROWS_AS(parse_integer(bad), std::invalid_argument);
  }
}

TEST_CASE("mod helpers return non-negative remainders") {
  CHECK(mod_u64(BigInt(-1), 16) == 15);
  CHECK(mod_pow2(BigInt(-3), 4) == 13);
  CHECK(mod_pow2(parse_integer("-340282366920938463463374607431768211457"), 63) == (std::uint64_t{1} << 63) - 1);
  CHECK(bit_length(BigInt(0)) == 0);
  CHECK(bit_length(BigInt(-8)) == 4);
  CHECK(pow2(70) == BigInt(1) << 70);
  CHECK(from_i128(-(static_cast<i128>(1) << 100)) == -(BigInt(1) << 100));
}

TEST_CASE("assignment shape is validated") {
  CHECK_THROWS_AS(Assignment(2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Assignment::of({1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Assignment(9, std::vector<BigInt>(512)), std::invalid_argument);
  CHECK_NOTHROW(Assignment(9, std::vector<BigInt>(512), 9));
  CHECK(Assignment::of({5}).rank() == 0);
  CHECK(Assignment::of({1, 2, 3, 4}).rank() == 2);
}

TEST_CASE("small determinants") {
  CHECK(det_group(Assignment::of({7})) == 7);
  CHECK(det_group(Assignment::of({3, 1})) == 8);
  CHECK(det_group(Assignment::of({2, 1, 1, 1})) == 5);
  CHECK(det_group(Assignment::of({3, 1, 0, 0})) == 64);
  CHECK(det_group(Assignment::of({2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1})) == 17);
  std::vector<std::int64_t> unit(16, 0);
  unit[0] = 1;
  CHECK(det_group(Assignment::of(unit)) == 1);
}

TEST_CASE("determinants agree with frozen elimination results") {
  for (const auto& c : frozen::kMatrixDets) {
    const Assignment a = Assignment::of(c.x);
    CHECK(det_group(a) == parse_integer(c.det));
    CHECK(det_matrix_oracle(a) == parse_integer(c.det));
  }
}

TEST_CASE("character transform of a rank-2 assignment") {
  const auto t = character_transform(Assignment::of({1, 2, 3, 4}));
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 10);
  CHECK(t[1] == -2);
  CHECK(t[2] == -4);
  CHECK(t[3] == 0);
}

TEST_CASE("property: transform product equals matrix determinant") {
  testgen::Gen g(11);
  for (int i = 0; i < 400; ++i) {
    const int rank = static_cast<int>(g.in(0, 4));
    const Assignment a = g.assignment(rank, -20, 20);
    REQUIRE(det_group(a) == det_matrix_oracle(a));
  }
}

// Translating by s permutes rows; the sign flips exactly when n = 1 and s != 0.
TEST_CASE("property: determinant under translation and negation") {
  testgen::Gen g(12);
  for (int i = 0; i < 300; ++i) {
    const int rank = static_cast<int>(g.in(1, 4));
    const auto x = g.ints(std::size_t{1} << rank, -30, 30);
    const std::size_t s = static_cast<std::size_t>(g.in(0, static_cast<std::int64_t>(x.size()) - 1));
    std::vector<std::int64_t> shifted(x.size()), negated(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      shifted[j] = x[j ^ s];
      negated[j] = -x[j];
    }
    const BigInt d = det_group(Assignment::of(x));
    const BigInt expected = (rank == 1 && s != 0) ? BigInt(-d) : d;
    REQUIRE(det_group(Assignment::of(shifted)) == expected);
    REQUIRE(det_group(Assignment::of(negated)) == d);
  }
}

TEST_CASE("property: one factor step splits the determinant") {
  testgen::Gen g(13);
  for (int i = 0; i < 500; ++i) {
    const Assignment a = g.assignment(static_cast<int>(g.in(1, 5)), -50, 50);
    const auto [plus, minus] = factor_step(a);
    REQUIRE(plus.rank() == a.rank() - 1);
    REQUIRE(det_group(a) == det_group(plus) * det_group(minus));
  }
  CHECK_THROWS_AS(factor_step(Assignment::of({4})), std::invalid_argument);
}

TEST_CASE("factor tree ends in rank-1 leaves whose product is the root") {
  testgen::Gen g(14);
  const Assignment a = g.assignment(4, -9, 9);
  const FactorTree t = factor_tree(a);
  BigInt product = 1;
  std::size_t leaves = 0;
  auto walk = [&](auto&& self, const FactorTree& node) -> void {
    if (node.children.empty()) {
      CHECK(node.node.rank() == 1);
      product *= node.value;
      ++leaves;
      return;
    }
    REQUIRE(node.children.size() == 2);
    CHECK(node.value == node.children[0].value * node.children[1].value);
    for (const FactorTree& c : node.children) self(self, c);
  };
  walk(walk, t);
  CHECK(leaves == 8);
  CHECK(product == det_group(a));
}

TEST_CASE("rendered tree for (3,1,0,0)") {
  CHECK(render_tree(factor_tree(Assignment::of({3, 1, 0, 0}))) == "D₂(3,1,0,0)=64\n  D₁(3,1)=8\n  D₁(3,1)=8\n");
}

TEST_CASE("closed forms match the group determinant on [-8,8]^4") {
  for (long x0 = -8; x0 <= 8; ++x0)
    for (long x1 = -8; x1 <= 8; ++x1) {
      REQUIRE(d1_closed_form(x0, x1) == det_group(Assignment::of({x0, x1})));
      for (long x2 = -8; x2 <= 8; ++x2)
        for (long x3 = -8; x3 <= 8; ++x3) {
          REQUIRE(d2_closed_form(x0, x1, x2, x3) == det_group(Assignment::of({x0, x1, x2, x3})));
        }
    }
}

TEST_CASE("property: rank-2 closed form is symmetric in its arguments") {
  testgen::Gen g(15);
  for (int i = 0; i < 200; ++i) {
    std::array<long, 4> x{};
    for (long& v : x) v = g.in(-1000, 1000);
    const BigInt ref = d2_closed_form(x[0], x[1], x[2], x[3]);
    std::sort(x.begin(), x.end());
    do {
      REQUIRE(d2_closed_form(x[0], x[1], x[2], x[3]) == ref);
    } while (std::next_permutation(x.begin(), x.end()));
  }
}

TEST_CASE("property: b/c/d/e quads multiply to the rank-4 determinant") {
  testgen::Gen g(16);
  for (int i = 0; i < 300; ++i) {
    const Assignment a = g.assignment(4, -25, 25);
    const BcdeQuad q = bcde_decompose(a);
    REQUIRE(d2_of(q.b) * d2_of(q.c) * d2_of(q.d) * d2_of(q.e) == det_group(a));
  }
  CHECK_THROWS_AS(bcde_decompose(Assignment::of({1, 2, 3, 4})), std::invalid_argument);
}

TEST_CASE("large entries take the exact path") {
  std::vector<BigInt> v(16, BigInt(1) << 70);
  v[0] += 1;
  // Transform: 2^74 + 1 once, then fifteen 1s.
  CHECK(det_group(Assignment(4, v)) == (BigInt(1) << 74) + 1);
}

TEST_CASE("oracle respects its rank cap") {
  CHECK_THROWS_AS(det_matrix_oracle(Assignment(7, std::vector<BigInt>(128))), std::invalid_argument);
}

}  // TEST_SUITE
