#include "gdet/classifier.hpp"

#include <stdexcept>

namespace gdet::classifier {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string not_congruent(const BigInt& u, unsigned r, std::uint64_t modulus) {
  return to_string(u) + " ≢ " + std::to_string(r) + " (mod " + std::to_string(modulus) + ")";
}

}  // namespace

TwoAdicSplit two_adic_split(const BigInt& v) {
  if (sgn(v) == 0) throw std::invalid_argument("two_adic_split of zero");
  const std::uint64_t w = mpz_scan1(v.get_mpz_t(), 0);
  BigInt odd;
  mpz_tdiv_q_2exp(odd.get_mpz_t(), v.get_mpz_t(), w);
  return {w, odd};
}

std::optional<APair> is_in_A(const BigInt& u, const FactorPolicy& policy) {
  // (8k-3)(8l+3) = 5 * 3 = 7 (mod 8), so any other residue is rejected without factoring.
  if (mod_u64(u, 8) != 7) return std::nullopt;
  const OddFactorization f = factor_odd(u, policy);
  const std::vector<BigInt> divisors = positive_divisors(f);

  auto try_divisor = [&](const BigInt& d) -> std::optional<APair> {
    const BigInt cofactor = u / d;
    if (mod_u64(d, 8) != 5 || mod_u64(cofactor, 8) != 3) return std::nullopt;
    return APair{BigInt((d + 3) / 8), BigInt((cofactor - 3) / 8)};
  };
  for (const BigInt& d : divisors) {
    if (auto pair = try_divisor(d)) return pair;
  }
  for (const BigInt& d : divisors) {
    if (auto pair = try_divisor(BigInt(-d))) return pair;
  }
  return std::nullopt;
}

ValueClass classify_c24(const BigInt& v, const FactorPolicy& policy) {
  if (sgn(v) == 0) return V26{0};
  const auto [w, u] = two_adic_split(v);
  if (w == 0) {
    if (mod_u64(u, 16) == 1) return Odd16m1{BigInt((u - 1) / 16)};
    return NotMember{"odd, " + not_congruent(u, 1, 16)};
  }
  if (w == 16) {
    if (mod_u64(u, 4) == 1) return V16_4m1{BigInt((u - 1) / 4)};
    return NotMember{"valuation 16, odd part " + not_congruent(u, 1, 4)};
  }
  if (w == 24) {
    const std::uint64_t r8 = mod_u64(u, 8);
    if (r8 % 4 == 1) return V24_4m1{BigInt((u - 1) / 4)};
    if (r8 == 3) return V24_8m3{BigInt((u - 3) / 8)};
    if (auto pair = is_in_A(u, policy)) return V24_A{pair->k, pair->l};
    return NotMember{"valuation 24, odd part " + to_string(u) + " ≡ 7 (mod 8), " + to_string(u) +
                     " ∉ A"};
  }
  if (w >= 26) {
    BigInt m;
    mpz_tdiv_q_2exp(m.get_mpz_t(), v.get_mpz_t(), 26);
    return V26{m};
  }
  return NotMember{"valuation " + std::to_string(w)};
}

bool is_member(const ValueClass& c) { return !std::holds_alternative<NotMember>(c); }

std::string class_tag(const ValueClass& c) {
  return std::visit(Overloaded{
                        [](const Odd16m1&) { return std::string("Odd16m1"); },
                        [](const V16_4m1&) { return std::string("V16_4m1"); },
                        [](const V24_4m1&) { return std::string("V24_4m1"); },
                        [](const V24_8m3&) { return std::string("V24_8m3"); },
                        [](const V24_A&) { return std::string("V24_A"); },
                        [](const V26&) { return std::string("V26"); },
                        [](const NotMember&) { return std::string("NotMember"); },
                    },
                    c);
}

std::string describe(const ValueClass& c) {
  return std::visit(Overloaded{
                        [](const Odd16m1& x) { return "Odd16m1 m=" + to_string(x.m); },
                        [](const V16_4m1& x) { return "V16_4m1 m=" + to_string(x.m); },
                        [](const V24_4m1& x) { return "V24_4m1 m=" + to_string(x.m); },
                        [](const V24_8m3& x) { return "V24_8m3 m=" + to_string(x.m); },
                        [](const V24_A& x) { return "V24_A k=" + to_string(x.k) + " l=" + to_string(x.l); },
                        [](const V26& x) { return "V26 m=" + to_string(x.m); },
                        [](const NotMember& x) { return "NotMember: " + x.reason; },
                    },
                    c);
}

std::optional<BigInt> reconstruct(const ValueClass& c) {
  return std::visit(Overloaded{
                        [](const Odd16m1& x) -> std::optional<BigInt> { return BigInt(16 * x.m + 1); },
                        [](const V16_4m1& x) -> std::optional<BigInt> { return BigInt(pow2(16) * (4 * x.m + 1)); },
                        [](const V24_4m1& x) -> std::optional<BigInt> { return BigInt(pow2(24) * (4 * x.m + 1)); },
                        [](const V24_8m3& x) -> std::optional<BigInt> { return BigInt(pow2(24) * (8 * x.m + 3)); },
                        [](const V24_A& x) -> std::optional<BigInt> {
                          return BigInt(pow2(24) * (8 * x.k - 3) * (8 * x.l + 3));
                        },
                        [](const V26& x) -> std::optional<BigInt> { return BigInt(pow2(26) * x.m); },
                        [](const NotMember&) -> std::optional<BigInt> { return std::nullopt; },
                    },
                    c);
}

Verdict classify_c22(const BigInt& v) {
  if (mod_u64(v, 4) == 1) return {true, "4m+1", ""};
  if (mod_u64(v, 64) == 0) return {true, "2^6m", ""};
  const auto [w, u] = two_adic_split(v);
  if (w == 4) return {true, "2^4(2m+1)", ""};
  if (w == 0) return {false, "", "odd, " + not_congruent(u, 1, 4)};
  return {false, "", "valuation " + std::to_string(w) + ", odd part " + to_string(u) + "; no clause"};
}

Verdict classify_c23(const BigInt& v) {
  if (mod_u64(v, 8) == 1) return {true, "8m+1", ""};
  if (mod_u64(v, 4096) == 0) return {true, "2^12m", ""};
  const auto [w, u] = two_adic_split(v);
  if (w == 8) {
    if (mod_u64(u, 4) == 1) return {true, "2^8(4m+1)", ""};
    return {false, "", "valuation 8, odd part " + not_congruent(u, 1, 4)};
  }
  if (w == 0) return {false, "", "odd, " + not_congruent(u, 1, 8)};
  return {false, "", "valuation " + std::to_string(w) + ", odd part " + to_string(u) + "; no clause"};
}

Verdict odd_class_c2n(int n, const BigInt& v) {
  if (mod_u64(v, 2) == 0) throw std::invalid_argument("odd_class_c2n needs an odd value");
  if (n < 0 || n > 63) throw std::invalid_argument("rank out of range");
  const std::uint64_t modulus = std::uint64_t{1} << n;
  if (mod_u64(v, modulus) == 1 % modulus) {
    return {true, "2^" + std::to_string(n) + "m+1", ""};
  }
  return {false, "", not_congruent(v, 1, modulus)};
}

}  // namespace gdet::classifier
