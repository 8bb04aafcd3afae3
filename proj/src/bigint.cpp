#include "gdet/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace gdet {

BigInt parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  BigInt v;
  const std::string s(digits);
  v.set_str(s, 10);
  if (text.front() == '-') v = -v;
  return v;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work on the negative side so that INT128_MIN is representable.
  std::string out;
  i128 x = negative ? v : -v;
  while (x != 0) {
    out.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

BigInt from_i128(i128 v) {
  const bool negative = v < 0;
  const unsigned __int128 mag =
      negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  BigInt out = (hi << 64) + lo;
  return negative ? BigInt(-out) : out;
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == 8, "LP64 expected");
  return mpz_fdiv_ui(v.get_mpz_t(), m);
}

BigInt pow2(std::uint64_t e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

std::size_t bit_length(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace gdet
