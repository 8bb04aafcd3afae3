#pragma once

// Finite replay of the impossibility arguments for D4 = D2(b) D2(c) D2(d) D2(e).
//
// Each D2 factor is written as D2(2k + e0, 2l + e1, 2m + e2, 2n + e3) where the
// odd offsets e = (e0..e3) follow the parity pattern of (b0, b1, b2, b3); by
// the symmetry of D2 one canonical pattern per regime suffices. A row of the
// signature table describes one class of factors: the hypothesis on
// (k, l, m, n), the parity vectors (k, l, m, n) mod 2 it admits, the 2-adic
// valuation of the factor, and the residues mod 8 of its odd components.
// The four factors must have parity vectors that XOR to zero, because
// b_i + c_i + d_i + e_i = 4 a_i.

#include "gdet/residue.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gdet::verifier {

enum class Regime { ThreeEven, OneEven, AllEven, AllOdd, TwoEven };

inline constexpr Regime kAllRegimes[] = {Regime::ThreeEven, Regime::OneEven, Regime::AllEven,
                                         Regime::AllOdd, Regime::TwoEven};

const char* to_string(Regime r);

/// Bit i set when argument i of the factor is odd.
unsigned odd_offsets(Regime r);

struct ValuationClaim {
  unsigned v = 0;
  bool exact = true;  // otherwise only v is a lower bound
};

/// parity vector bits: k | l << 1 | m << 2 | n << 3
unsigned parity_of(const residue::Params& p);

struct SignatureRow {
  std::string tag;
  std::string clause;  // residue-lemma clause the row transcribes
  Regime regime;
  bool (*applies)(const residue::Params&);
  std::vector<unsigned> parities;
  ValuationClaim valuation;
  /// Allowed residues mod 8 of each odd component, as bit masks. One
  /// component is the odd part of the factor; two components are the odd
  /// parts of the brackets D1(x0 + x2, x1 + x3) / 4 and D1(x0 - x2, x1 - x3) / 16
  /// in either order, the first listed belonging to the bracket of valuation 2.
  std::vector<std::uint8_t> components;
  /// Odd regimes only: the factor mod 16 as a function of the parity vector.
  unsigned (*residue16)(unsigned parity) = nullptr;
};

const std::vector<SignatureRow>& signature_table();

/// One concrete choice for one factor.
struct FactorOption {
  std::size_t row;
  unsigned parity;
  std::vector<unsigned> residues;  // one per component
};

std::vector<FactorOption> factor_options(Regime r);

struct SignatureFlags {
  bool odd_residue = false;     // odd product must be 1 mod 16
  bool valuation_gap = false;   // valuation in {16, 24} or >= 26
  bool a_form = false;          // valuation 24 with odd part 7 mod 8 needs a +-3 mod 8 component
};

struct SignatureOutcome {
  std::uint64_t enumerated = 0;
  std::uint64_t expected = 0;   // |options|^4
  std::uint64_t survivors = 0;  // passed the parity filter
  std::uint64_t critical = 0;   // survivors with valuation 24 and odd part 7 mod 8
  std::optional<std::string> failure;
  std::vector<std::int64_t> counterexample;  // per factor: row, parity, residues...
};

SignatureOutcome enumerate_signatures(Regime r, const SignatureFlags& flags);

struct CrossCheckOutcome {
  std::uint64_t enumerated = 0;
  std::uint64_t expected = 0;
  std::optional<std::string> failure;
  std::vector<std::int64_t> counterexample;  // (k, l, m, n)
};

/// Every (k, l, m, n) mod 2^window_bits falls under exactly one row of the
/// regime, whose parity set, valuation and residue claims hold for the whole
/// residue class; every option the table lists is realized by some class.
CrossCheckOutcome cross_check_table(Regime r, unsigned window_bits);

/// Re-examines a single class; nullopt when every row claim holds.
std::optional<std::string> cross_check_case(Regime r, const residue::Params& p, unsigned window_bits);

}  // namespace gdet::verifier
