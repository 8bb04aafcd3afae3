#pragma once

// Fixed-width evaluation used by the enumerators. Every entry point either
// proves its result exact or reports that the caller must fall back to BigInt.

#include "gdet/bigint.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace gdet::detail {

/// Entry magnitude below which an int64 transform of rank <= 8 cannot overflow
/// (2^54 * 2^8 < 2^63).
inline constexpr std::int64_t kTransformSafeMagnitude = std::int64_t{1} << 54;

/// Unnormalized Walsh-Hadamard butterfly, in place. Size must be a power of two.
inline void wht_inplace(std::span<std::int64_t> x) {
  const std::size_t n = x.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t u = x[j];
        const std::int64_t v = x[j + h];
        x[j] = u + v;
        x[j + h] = u - v;
      }
    }
  }
}

/// Product of the entries in 128 bits; nullopt if any partial product overflows.
inline std::optional<i128> checked_product(std::span<const std::int64_t> t) {
  i128 acc = 1;
  for (const std::int64_t v : t) {
    if (v == 0) return i128{0};
  }
  for (const std::int64_t v : t) {
    if (__builtin_mul_overflow(acc, static_cast<i128>(v), &acc)) return std::nullopt;
  }
  return acc;
}

inline BigInt big_product(std::span<const std::int64_t> t) {
  BigInt acc = 1;
  for (const std::int64_t v : t) acc *= static_cast<long>(v);
  return acc;
}

/// Exact product of int64 character sums as a BigInt, using 128-bit when it fits.
inline BigInt exact_product(std::span<const std::int64_t> t) {
  if (auto p = checked_product(t)) return from_i128(*p);
  return big_product(t);
}

}  // namespace gdet::detail
