#pragma once

// Membership in the value sets of the integer group determinants of C2^2,
// C2^3 and C2^4.
//
//   S(C2^2) = { 4m+1, 2^4(2m+1), 2^6 m }
//   S(C2^3) = { 8m+1, 2^8(4m+1), 2^12 m }
//   S(C2^4) = { 16m+1, 2^16(4m+1), 2^24(4m+1), 2^24(8m+3), 2^24 a, 2^26 m : a in A }
//   A       = { (8k-3)(8l+3) }
//
// The C2^4 families are separated by the exact 2-adic valuation of the value
// (0, 16, 24 or >= 26), which turns the set description into a decision
// procedure. Only valuation 24 with odd part = 7 (mod 8) needs factoring.

#include "gdet/bigint.hpp"
#include "gdet/factor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace gdet::classifier {

struct TwoAdicSplit {
  std::uint64_t valuation;
  BigInt odd_part;
};

/// v == 2^valuation * odd_part with odd_part odd. Throws std::invalid_argument for 0.
TwoAdicSplit two_adic_split(const BigInt& v);

struct APair {
  BigInt k;
  BigInt l;
};

/// Some (k, l) with u == (8k-3)(8l+3), or nullopt when none exists.
/// Among several pairs the one with the smallest positive 8k-3 wins; if every
/// valid 8k-3 is negative, the one of least magnitude.
/// Even u (including 0) is never in A. Propagates FactorizationInfeasible.
std::optional<APair> is_in_A(const BigInt& u, const FactorPolicy& policy = {});

struct Odd16m1 { BigInt m; };     // 16m + 1
struct V16_4m1 { BigInt m; };     // 2^16 (4m + 1)
struct V24_4m1 { BigInt m; };     // 2^24 (4m + 1)
struct V24_8m3 { BigInt m; };     // 2^24 (8m + 3)
struct V24_A { BigInt k, l; };    // 2^24 (8k - 3)(8l + 3)
struct V26 { BigInt m; };         // 2^26 m
struct NotMember { std::string reason; };

using ValueClass = std::variant<Odd16m1, V16_4m1, V24_4m1, V24_8m3, V24_A, V26, NotMember>;

ValueClass classify_c24(const BigInt& v, const FactorPolicy& policy = {});

bool is_member(const ValueClass& c);
std::string class_tag(const ValueClass& c);
/// "Odd16m1 m=2", "V24_A k=1 l=0", "NotMember: valuation 25".
std::string describe(const ValueClass& c);
/// The integer a member class stands for; nullopt for NotMember.
std::optional<BigInt> reconstruct(const ValueClass& c);

/// Membership verdict for the smaller groups, where no parameters are needed.
struct Verdict {
  bool member = false;
  std::string clause;  // e.g. "4m+1"; empty for non-members
  std::string reason;  // empty for members
};

Verdict classify_c22(const BigInt& v);
Verdict classify_c23(const BigInt& v);

/// Odd values of S(C2^n) are exactly 1 (mod 2^n). Throws std::invalid_argument for even v.
Verdict odd_class_c2n(int n, const BigInt& v);

}  // namespace gdet::classifier
