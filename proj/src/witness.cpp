#include "gdet/witness.hpp"

#include <array>

namespace gdet::witness {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Assignment rank4(std::array<BigInt, 16> a) {
  return Assignment(4, std::vector<BigInt>(std::make_move_iterator(a.begin()),
                                           std::make_move_iterator(a.end())));
}

// (c + head, c + second, c, c, ..., c)
Assignment near_constant(const BigInt& c, long head, long second) {
  std::array<BigInt, 16> a;
  a.fill(c);
  a[0] = c + head;
  a[1] = c + second;
  return rank4(std::move(a));
}

}  // namespace

Assignment build(const WitnessFamily& f) {
  return std::visit(
      Overloaded{
          [](const F1& x) { return near_constant(x.m, 1, 0); },
          [](const F2a& x) { return near_constant(x.k, 2, 0); },
          [](const F2b& x) {
            const BigInt& k = x.k;
            return rank4({1 - k, k, 1 - k, k, -k, k, 1 - k, k - 1,
                          1 - k, k, -k, k - 1, -k, k, -k, k});
          },
          [](const F3& x) { return near_constant(x.m, 3, 1); },
          [](const F4& x) {
            const BigInt& m = x.m;
            const BigInt& n = x.n;
            // Rows 1..3 of the 4x4 layout repeat the same four entries.
            const std::array<BigInt, 4> tail{m - n - 1, -(m + n), m + n + 1, n - m};
            std::array<BigInt, 16> a{m - n + 2, -(m + n + 1), m + n + 1, n - m};
            for (std::size_t i = 4; i < 16; ++i) a[i] = tail[i % 4];
            return rank4(std::move(a));
          },
          [](const F5even& x) {
            const BigInt& k = x.k;
            return rank4({k + 1, 1 - k, k + 1, -k, k - 1, -k, k + 1, -k,
                          k, -k, k + 1, -k, k - 2, 1 - k, k + 1, -k});
          },
          [](const F5odd& x) {
            const BigInt& k = x.k;
            return rank4({k - 1, k + 1, k + 1, k + 2, k + 1, k + 2, k + 2, k,
                          k, k, k, k, k, k, k, k});
          },
      },
      f);
}

BigInt target_value(const WitnessFamily& f) {
  return std::visit(Overloaded{
                        [](const F1& x) { return BigInt(16 * x.m + 1); },
                        [](const F2a& x) { return BigInt(pow2(16) * (8 * x.k + 1)); },
                        [](const F2b& x) { return BigInt(pow2(16) * (8 * x.k - 3)); },
                        [](const F3& x) { return BigInt(pow2(24) * (4 * x.m + 1)); },
                        [](const F4& x) { return BigInt(pow2(24) * (4 * x.m + 1) * (8 * x.n + 3)); },
                        [](const F5even& x) { return BigInt(pow2(26) * 2 * x.k); },
                        [](const F5odd& x) { return BigInt(pow2(26) * (2 * x.k + 1)); },
                    },
                    f);
}

std::string family_name(const WitnessFamily& f) {
  static constexpr const char* kNames[] = {"F1", "F2a", "F2b", "F3", "F4", "F5even", "F5odd"};
  return kNames[f.index()];
}

std::string describe(const WitnessFamily& f) {
  const std::string params = std::visit(
      Overloaded{
          [](const F1& x) { return "m=" + to_string(x.m); },
          [](const F2a& x) { return "k=" + to_string(x.k); },
          [](const F2b& x) { return "k=" + to_string(x.k); },
          [](const F3& x) { return "m=" + to_string(x.m); },
          [](const F4& x) { return "m=" + to_string(x.m) + " n=" + to_string(x.n); },
          [](const F5even& x) { return "k=" + to_string(x.k); },
          [](const F5odd& x) { return "k=" + to_string(x.k); },
      },
      f);
  return family_name(f) + " " + params;
}

WitnessFamily family_for(const classifier::ValueClass& c) {
  using namespace classifier;
  return std::visit(
      Overloaded{
          [](const Odd16m1& x) -> WitnessFamily { return F1{x.m}; },
          [](const V16_4m1& x) -> WitnessFamily {
            const BigInt u = 4 * x.m + 1;
            if (mod_u64(u, 8) == 1) return F2a{BigInt((u - 1) / 8)};
            return F2b{BigInt((u + 3) / 8)};
          },
          [](const V24_4m1& x) -> WitnessFamily { return F3{x.m}; },
          [](const V24_8m3& x) -> WitnessFamily { return F4{0, x.m}; },
          // 8k - 3 = 4(2k - 1) + 1
          [](const V24_A& x) -> WitnessFamily { return F4{BigInt(2 * x.k - 1), x.l}; },
          [](const V26& x) -> WitnessFamily {
            if (mod_u64(x.m, 2) == 0) return F5even{BigInt(x.m / 2)};
            return F5odd{BigInt((x.m - 1) / 2)};
          },
          [](const NotMember& x) -> WitnessFamily {
            throw std::invalid_argument("no witness for a non-member: " + x.reason);
          },
      },
      c);
}

std::optional<Witness> witness_for(const BigInt& v, const classifier::FactorPolicy& policy) {
  const classifier::ValueClass c = classifier::classify_c24(v, policy);
  if (!classifier::is_member(c)) return std::nullopt;
  WitnessFamily family = family_for(c);
  Assignment a = build(family);
  const BigInt got = det_group(a);
  if (got != v) {
    throw WitnessMismatch("witness " + describe(family) + " evaluates to " + to_string(got) +
                          ", expected " + to_string(v));
  }
  return Witness{std::move(family), std::move(a)};
}

}  // namespace gdet::witness
