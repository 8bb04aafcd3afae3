#pragma once

// Explicit rank-4 assignments realizing every member of S(C2^4).

#include "gdet/classifier.hpp"
#include "gdet/core.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace gdet::witness {

struct F1 { BigInt m; };          // 16m + 1
struct F2a { BigInt k; };         // 2^16 (8k + 1)
struct F2b { BigInt k; };         // 2^16 (8k - 3)
struct F3 { BigInt m; };          // 2^24 (4m + 1)
struct F4 { BigInt m, n; };       // 2^24 (4m + 1)(8n + 3)
struct F5even { BigInt k; };      // 2^26 (2k)
struct F5odd { BigInt k; };       // 2^26 (2k + 1)

using WitnessFamily = std::variant<F1, F2a, F2b, F3, F4, F5even, F5odd>;

/// Thrown when a constructed assignment does not evaluate to its target.
class WitnessMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Assignment build(const WitnessFamily& f);

/// The closed-form determinant the family is constructed to hit.
BigInt target_value(const WitnessFamily& f);

/// "F1", "F2a", ... "F5odd".
std::string family_name(const WitnessFamily& f);

/// Family name with parameters, e.g. "F4 m=-1 n=0".
std::string describe(const WitnessFamily& f);

struct Witness {
  WitnessFamily family;
  Assignment assignment;
};

/// nullopt when v is not in S(C2^4). The assignment is evaluated before it is
/// returned; a mismatch raises WitnessMismatch. Propagates FactorizationInfeasible.
std::optional<Witness> witness_for(const BigInt& v, const classifier::FactorPolicy& policy = {});

/// Dispatch from an already computed member class. Throws std::invalid_argument for NotMember.
WitnessFamily family_for(const classifier::ValueClass& c);

}  // namespace gdet::witness
