#pragma once

// Exact integer helpers on top of GMP's mpz_class.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gdet {

using BigInt = mpz_class;
using i128 = __int128;

/// Parses an optionally signed decimal integer of any length.
/// Throws std::invalid_argument on anything else (no whitespace, no '+'-only).
BigInt parse_integer(std::string_view text);

std::string to_string(const BigInt& v);
std::string to_string(i128 v);

BigInt from_i128(i128 v);

/// Non-negative remainder of v modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);

/// Non-negative remainder of v modulo 2^bits (bits <= 63).
inline std::uint64_t mod_pow2(const BigInt& v, unsigned bits) {
  return mod_u64(v, std::uint64_t{1} << bits);
}

/// 2^e as an exact integer.
BigInt pow2(std::uint64_t e);

/// Number of bits of |v| (0 for v == 0).
std::size_t bit_length(const BigInt& v);

}  // namespace gdet
