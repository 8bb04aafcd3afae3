#include "gdet/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace gdet::classifier {

namespace {

constexpr std::uint32_t kTrialLimit = 1u << 16;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p <= kTrialLimit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (std::uint64_t q = std::uint64_t{p} * p; q <= kTrialLimit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 a, u64 e, u64 n) {
  u64 r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_u64(u64 n) {
  if (n < 2) return false;
  for (const u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.18e23 > 2^64.
  for (const u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool miller_rabin_big(const BigInt& n) {
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  const BigInt nm1 = n - 1;
  BigInt x;
  for (const unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    BigInt base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool witness = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == nm1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool fits_u64(const BigInt& n) { return sgn(n) >= 0 && bit_length(n) <= 64; }

u64 to_u64(const BigInt& n) { return mpz_get_ui(n.get_mpz_t()); }

class RhoBudget {
 public:
  explicit RhoBudget(u64 limit) : remaining_(limit) {}
  void spend(u64 n) {
    if (n > remaining_) throw FactorizationInfeasible("rho iteration budget exhausted");
    remaining_ -= n;
  }

 private:
  u64 remaining_;
};

// Brent's cycle-finding rho on 64-bit moduli. n is odd, composite, not a prime power
// of a small prime.
u64 rho_u64(u64 n, std::mt19937_64& rng, RhoBudget& budget) {
  constexpr u64 kBlock = 128;
  for (;;) {
    const u64 c = rng() % (n - 1) + 1;
    u64 y = rng() % n;
    auto f = [&](u64 v) { return static_cast<u64>((static_cast<u128>(v) * v + c) % n); };
    u64 x = y, ys = y, q = 1, g = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      budget.spend(r);
      for (u64 k = 0; k < r && g == 1; k += kBlock) {
        ys = y;
        const u64 steps = std::min(kBlock, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        budget.spend(steps);
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        budget.spend(1);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

BigInt rho_big(const BigInt& n, std::mt19937_64& rng, RhoBudget& budget) {
  constexpr u64 kBlock = 128;
  auto random_below = [&](const BigInt& bound) {
    BigInt r = 0;
    for (int i = 0; i < 3; ++i) r = (r << 64) + BigInt(static_cast<unsigned long>(rng()));
    return BigInt(r % bound);
  };
  for (;;) {
    const BigInt c = random_below(n - 1) + 1;
    BigInt y = random_below(n);
    auto step = [&](BigInt& v) {
      v *= v;
      v += c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    BigInt x = y, ys = y, q = 1, g = 1, diff;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) step(y);
      budget.spend(r);
      for (u64 k = 0; k < r && g == 1; k += kBlock) {
        ys = y;
        const u64 steps = std::min(kBlock, r - k);
        for (u64 i = 0; i < steps; ++i) {
          step(y);
          diff = abs(x - y);
          q = q * diff % n;
        }
        budget.spend(steps);
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        step(ys);
        budget.spend(1);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace

BigInt OddFactorization::product() const {
  BigInt out = sign;
  for (const PrimePower& pp : prime_powers) {
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    out *= p;
  }
  return out;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return miller_rabin_u64(to_u64(n));
  static const BigInt kMrDeterministicBound("3317044064679887385961981");
  if (!miller_rabin_big(n)) return false;
  if (n < kMrDeterministicBound) return true;
  return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

OddFactorization factor_odd(const BigInt& u, const FactorPolicy& policy) {
  if (mod_u64(u, 2) == 0) throw std::invalid_argument("factor_odd needs an odd argument");
  OddFactorization out;
  out.sign = sgn(u) < 0 ? -1 : 1;
  BigInt n = abs(u);
  if (bit_length(n) > policy.max_bits) {
    throw FactorizationInfeasible("factorization infeasible: |" + to_string(u) + "| exceeds 2^" +
                                  std::to_string(policy.max_bits));
  }

  std::map<BigInt, unsigned> exps;
  for (const std::uint32_t p : small_primes()) {
    if (p == 2) continue;
    if (BigInt(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++exps[BigInt(p)];
    }
  }

  std::mt19937_64 rng(policy.seed);
  RhoBudget budget(policy.max_rho_iterations);
  std::vector<BigInt> pending;
  if (n > 1) pending.push_back(n);
  while (!pending.empty()) {
    BigInt x = std::move(pending.back());
    pending.pop_back();
    if (x == 1) continue;
    if (is_prime(x)) {
      ++exps[x];
      continue;
    }
    const BigInt d = fits_u64(x) ? BigInt(static_cast<unsigned long>(rho_u64(to_u64(x), rng, budget)))
                                 : rho_big(x, rng, budget);
    pending.push_back(d);
    pending.push_back(x / d);
  }

  for (auto& [p, e] : exps) out.prime_powers.push_back({p, e});
  return out;
}

std::vector<BigInt> positive_divisors(const OddFactorization& f) {
  std::vector<BigInt> divs{1};
  for (const PrimePower& pp : f.prime_powers) {
    const std::size_t base = divs.size();
    BigInt power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace gdet::classifier
