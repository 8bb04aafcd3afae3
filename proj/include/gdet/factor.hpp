#pragma once

// Prime factorization of odd integers: trial division, then Brent's variant of
// Pollard rho, with primality decided by Miller-Rabin on fixed bases.

#include "gdet/bigint.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gdet::classifier {

/// Raised instead of returning an unverified answer.
class FactorizationInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactorPolicy {
  /// |u| must be below 2^max_bits.
  unsigned max_bits = 128;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  /// Total rho iterations allowed for one factor_odd call.
  std::uint64_t max_rho_iterations = std::uint64_t{1} << 26;
};

struct PrimePower {
  BigInt prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct OddFactorization {
  int sign = 1;
  std::vector<PrimePower> prime_powers;  // ascending primes

  BigInt product() const;
};

/// Deterministic for n < 3317044064679887385961981 (Miller-Rabin on the first
/// 13 prime bases); above that the same test is combined with GMP's BPSW.
bool is_prime(const BigInt& n);

/// Throws std::invalid_argument for even u (including 0) and
/// FactorizationInfeasible when |u| exceeds the policy cap or the rho budget
/// runs out.
OddFactorization factor_odd(const BigInt& u, const FactorPolicy& policy = {});

/// All positive divisors of the absolute value, ascending.
std::vector<BigInt> positive_divisors(const OddFactorization& f);

}  // namespace gdet::classifier
