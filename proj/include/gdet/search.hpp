#pragma once

// Exhaustive sweeps over boxes alphabet^(2^n), n in {2, 3, 4}, cross-checking
// every determinant against the classification of S(C2^n).
//
// Tuples are numbered in mixed radix with coordinate j as digit j (lowest
// first). The index space is cut into chunks of chunk_size consecutive
// indices; chunks are evaluated independently and merged in index order, so
// the result depends only on n and the alphabet.

#include "gdet/bigint.hpp"
#include "gdet/factor.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gdet::search {

struct SweepChecks {
  bool member_check = true;          // classifier accepts the value for this n
  bool odd_residue_check = true;     // odd values are 1 mod 2^n
  bool valuation_gap_check = true;   // n = 4: nonzero even values have valuation 16, 24 or >= 26
  bool v16_odd_part_check = true;    // n = 4: valuation 16 implies odd part 1 mod 4
};

struct SweepConfig {
  int n = 4;
  std::vector<std::int64_t> alphabet;
  std::uint64_t chunk_size = std::uint64_t{1} << 20;
  unsigned worker_count = 1;
  SweepChecks checks;
  /// Checkpoint/result file, rewritten after every merged chunk.
  std::optional<std::filesystem::path> output_path;
  /// Continue from the checkpoint at output_path (fresh start if absent).
  bool resume = false;
  /// Stop after this many chunks in this run, leaving a resumable checkpoint.
  std::optional<std::uint64_t> max_chunks;
  /// Distinct values kept in memory; exceeding it aborts the sweep.
  std::size_t max_distinct = std::size_t{1} << 24;
  classifier::FactorPolicy factor_policy;
};

struct ValueEntry {
  std::uint64_t count = 0;
  std::uint64_t example_index = 0;  // smallest tuple index attaining the value
  std::string class_tag;            // "Infeasible" when classification could not finish
};

struct Violation {
  std::vector<std::int64_t> tuple;
  BigInt value;
  std::string assertion;
};

struct FlaggedEntry {
  std::vector<std::int64_t> tuple;
  BigInt value;
  std::string reason;
};

struct SweepResult {
  std::map<BigInt, ValueEntry> distinct_values;
  std::vector<Violation> violations;
  std::vector<FlaggedEntry> flagged;
  std::uint64_t total_tuples = 0;
  std::uint64_t total_chunks = 0;
  std::uint64_t chunks_completed = 0;
  std::uint64_t total_enumerated = 0;

  bool complete() const { return chunks_completed == total_chunks; }
};

/// Raised for invalid configurations and unusable checkpoint files.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SweepResult sweep(const SweepConfig& config);

/// |alphabet|^(2^n); throws SweepError when it does not fit in 64 bits.
std::uint64_t tuple_count(int n, std::size_t alphabet_size);

/// Tuple with the given mixed-radix index.
std::vector<std::int64_t> tuple_at(int n, const std::vector<std::int64_t>& alphabet, std::uint64_t index);

/// Class tag for an n = 2, 3 or 4 value; "NotMember" when outside S(C2^n).
/// Propagates FactorizationInfeasible.
std::string class_tag_for(int n, const BigInt& value, const classifier::FactorPolicy& policy = {});

/// Names of the enabled assertions the value violates, given its class tag.
std::vector<std::string> failed_assertions(int n, const BigInt& value, const std::string& class_tag,
                                           const SweepChecks& checks);

struct CoverageReport {
  std::uint64_t bound = 0;
  std::map<std::string, std::uint64_t> per_family;  // witness family -> distinct values built
  std::vector<BigInt> values;                       // sorted, distinct
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Builds and evaluates a witness for every member of S(C2^4) whose class
/// parameters all have magnitude <= bound.
CoverageReport coverage_check(std::uint64_t bound);

/// { (8k-3)(8l+3) : |8k-3| <= bound, |8l+3| <= bound, |product| <= bound }, sorted.
std::vector<std::int64_t> a_set_oracle(std::int64_t bound);

}  // namespace gdet::search
