#pragma once

// Seeded generators for property tests.

#include "gdet/bigint.hpp"
#include "gdet/core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t in(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  bool coin() { return in(0, 1) == 1; }

  std::vector<std::int64_t> ints(std::size_t count, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out(count);
    for (auto& x : out) x = in(lo, hi);
    return out;
  }

  gdet::Assignment assignment(int rank, std::int64_t lo, std::int64_t hi) {
    return gdet::Assignment::of(ints(std::size_t{1} << rank, lo, hi));
  }

  /// Uniform in (-2^bits, 2^bits).
  gdet::BigInt big(unsigned bits) {
    gdet::BigInt v = 0;
    for (unsigned done = 0; done < bits; done += 32) {
      v <<= 32;
      v += static_cast<unsigned long>(rng_() & 0xffffffffULL);
    }
    v >>= (bits + 31) / 32 * 32 - bits;
    return coin() ? gdet::BigInt(-v) : v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testgen
