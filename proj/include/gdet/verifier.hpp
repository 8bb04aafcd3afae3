#pragma once

// Exhaustive verification of the residue-class facts behind the C2^4
// classification.
//
// Three kinds of checks:
//   * parity facts about D4 and its b/c/d/e quad, over all 2^16 parity vectors;
//   * D2 residue facts in parameters (k, l, m, n), over a complete residue
//     system mod a power of two W, each conclusion decided with residue::Approx
//     so that one representative stands for its whole class;
//   * the signature table replay (see signature.hpp).

#include "gdet/residue.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gdet::verifier {

struct LemmaReport {
  std::string lemma_id;
  std::uint64_t window = 0;  // modulus of the enumerated residue system
  std::uint64_t cases_enumerated = 0;
  std::uint64_t expected_cases = 0;
  std::string modulus;       // finest power of two a conclusion is asserted at
  std::string sufficiency;   // why the finite enumeration covers all integers
  std::optional<std::vector<std::int64_t>> counterexample;
  std::string failure;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const { return !counterexample && cases_enumerated == expected_cases; }
  /// "lemma 2.4: 65536 cases, pass"
  std::string summary_line() const;
  /// One key=value record including elapsed time.
  std::string record() const;
};

inline constexpr std::uint64_t kDefaultWindow = 32;

/// Reports "2.2", "2.3" and "2.4".
std::vector<LemmaReport> verify_parity_suite();

/// Ids "3.1" .. "3.6". Throws std::invalid_argument for an unknown id or a
/// window that is not a power of two >= 32.
LemmaReport verify_d2_residue_lemma(const std::string& lemma_id, std::uint64_t window = kDefaultWindow);

/// Reports "signatures" (table cross-check at the given window), "4.1", "4.2",
/// "4.5" and "4.6".
std::vector<LemmaReport> verify_impossibility_cases(std::uint64_t window = kDefaultWindow);

/// All ids accepted by verify, in execution order.
const std::vector<std::string>& registered_lemmas();

/// "all" or one registered id. Throws std::invalid_argument otherwise.
std::vector<LemmaReport> verify(const std::string& lemma_id, std::uint64_t window = kDefaultWindow);

/// Single-case predicate over (k, l, m, n); returns a description on failure.
using CaseCheck = std::function<std::optional<std::string>(const residue::Params&)>;

/// Runs check over [0, window)^4 and stops at the first failure.
LemmaReport enumerate_cases(const std::string& lemma_id, std::uint64_t window, const CaseCheck& check);

/// Re-runs a registered residue lemma on one parameter tuple.
std::optional<std::string> recheck(const std::string& lemma_id, const residue::Params& p,
                                   std::uint64_t window = kDefaultWindow);

}  // namespace gdet::verifier
