#include "gdet/search.hpp"

#include "gdet/checkpoint.hpp"
#include "gdet/classifier.hpp"
#include "gdet/core.hpp"
#include "gdet/detail/fastdet.hpp"
#include "gdet/witness.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <set>
#include <thread>
#include <unordered_map>

namespace gdet::search {

namespace {

struct I128Hash {
  std::size_t operator()(i128 v) const noexcept {
    const auto u = static_cast<unsigned __int128>(v);
    const auto lo = static_cast<std::uint64_t>(u);
    const auto hi = static_cast<std::uint64_t>(u >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

struct Local {
  std::uint64_t count = 0;
  std::uint64_t first_index = 0;
};

struct ChunkResult {
  std::unordered_map<i128, Local, I128Hash> small;
  std::map<BigInt, Local> big;
  Local zero;
};

void note(Local& e, std::uint64_t index) {
  if (e.count++ == 0) e.first_index = index;
}

class ChunkEvaluator {
 public:
  ChunkEvaluator(int n, const std::vector<std::int64_t>& alphabet)
      : n_(n), size_(std::size_t{1} << n), alphabet_(alphabet), sign_(size_ * size_) {
    for (std::size_t j = 0; j < size_; ++j) {
      for (std::size_t chi = 0; chi < size_; ++chi) sign_[j * size_ + chi] = (std::popcount(j & chi) & 1) ? -1 : 1;
    }
    std::int64_t max_abs = 0;
    for (const std::int64_t a : alphabet) max_abs = std::max(max_abs, a < 0 ? -a : a);
    // Every character sum is at most 2^n max|a| in magnitude.
    const auto sum_bits = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(max_abs) << n));
    unchecked_ = sum_bits * size_ <= 126;
  }

  ChunkResult run(std::uint64_t begin, std::uint64_t end) const {
    ChunkResult out;
    const std::size_t radix = alphabet_.size();
    std::vector<std::size_t> digits(size_);
    std::vector<std::int64_t> t(size_);
    std::uint64_t rest = begin;
    for (std::size_t j = 0; j < size_; ++j) {
      digits[j] = rest % radix;
      rest /= radix;
      t[j] = alphabet_[digits[j]];
    }
    detail::wht_inplace(t);

    for (std::uint64_t index = begin; index < end; ++index) {
      record(t, index, out);
      if (index + 1 == end) break;
      for (std::size_t j = 0; j < size_; ++j) {
        const std::size_t next = digits[j] + 1 == radix ? 0 : digits[j] + 1;
        shift(t, j, alphabet_[next] - alphabet_[digits[j]]);
        digits[j] = next;
        if (next != 0) break;
      }
    }
    return out;
  }

 private:
  // Coordinate j moved by delta: each character sum moves by +-delta.
  void shift(std::vector<std::int64_t>& t, std::size_t j, std::int64_t delta) const {
    const std::int8_t* s = &sign_[j * size_];
    for (std::size_t chi = 0; chi < size_; ++chi) t[chi] += s[chi] * delta;
  }

  void record(const std::vector<std::int64_t>& t, std::uint64_t index, ChunkResult& out) const {
    for (const std::int64_t v : t) {
      if (v == 0) {
        note(out.zero, index);
        return;
      }
    }
    if (unchecked_) {
      i128 acc = 1;
      for (const std::int64_t v : t) acc *= v;
      note(out.small[acc], index);
      return;
    }
    if (auto p = detail::checked_product(t)) {
      note(out.small[*p], index);
    } else {
      note(out.big[detail::big_product(t)], index);
    }
  }

  int n_;
  std::size_t size_;
  std::vector<std::int64_t> alphabet_;
  std::vector<std::int8_t> sign_;
  bool unchecked_ = false;
};

void validate(const SweepConfig& c) {
  if (c.n < 2 || c.n > 4) throw SweepError("sweep rank must be 2, 3 or 4");
  if (c.alphabet.empty()) throw SweepError("alphabet must be non-empty");
  std::vector<std::int64_t> sorted = c.alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw SweepError("alphabet has duplicates");
  for (const std::int64_t a : c.alphabet) {
    if (a > (std::int64_t{1} << 56) || a < -(std::int64_t{1} << 56)) {
      throw SweepError("alphabet entries must have magnitude <= 2^56");
    }
  }
  if (c.chunk_size == 0) throw SweepError("chunk size must be positive");
  if (c.worker_count == 0) throw SweepError("worker count must be positive");
  if (c.resume && !c.output_path) throw SweepError("resume needs an output path");
}

std::string tag_or_flag(int n, const BigInt& value, const classifier::FactorPolicy& policy) {
  try {
    return class_tag_for(n, value, policy);
  } catch (const classifier::FactorizationInfeasible&) {
    return "Infeasible";
  }
}

void merge_entry(std::map<BigInt, ValueEntry>& global, const BigInt& value, const Local& local, const SweepConfig& c) {
  auto [it, inserted] = global.try_emplace(value);
  ValueEntry& e = it->second;
  if (inserted) {
    e.example_index = local.first_index;
    e.class_tag = tag_or_flag(c.n, value, c.factor_policy);
  } else {
    e.example_index = std::min(e.example_index, local.first_index);
  }
  e.count += local.count;
}

void merge(std::map<BigInt, ValueEntry>& global, const ChunkResult& r, const SweepConfig& c) {
  if (r.zero.count) merge_entry(global, BigInt(0), r.zero, c);
  for (const auto& [v, local] : r.small) merge_entry(global, from_i128(v), local, c);
  for (const auto& [v, local] : r.big) merge_entry(global, v, local, c);
}

void collect_findings(SweepResult& result, const SweepConfig& c) {
  for (const auto& [value, entry] : result.distinct_values) {
    if (entry.class_tag == "Infeasible") {
      result.flagged.push_back({tuple_at(c.n, c.alphabet, entry.example_index), value, "factorization infeasible"});
    }
    for (std::string& a : failed_assertions(c.n, value, entry.class_tag, c.checks)) {
      result.violations.push_back({tuple_at(c.n, c.alphabet, entry.example_index), value, std::move(a)});
    }
  }
}

}  // namespace

std::uint64_t tuple_count(int n, std::size_t alphabet_size) {
  std::uint64_t total = 1;
  for (int i = 0; i < (1 << n); ++i) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(alphabet_size), &total)) {
      throw SweepError("alphabet^(2^n) exceeds the 64-bit index space");
    }
  }
  return total;
}

std::vector<std::int64_t> tuple_at(int n, const std::vector<std::int64_t>& alphabet, std::uint64_t index) {
  std::vector<std::int64_t> out(std::size_t{1} << n);
  for (std::int64_t& x : out) {
    x = alphabet[index % alphabet.size()];
    index /= alphabet.size();
  }
  return out;
}

std::string class_tag_for(int n, const BigInt& value, const classifier::FactorPolicy& policy) {
  if (n == 4) return classifier::class_tag(classifier::classify_c24(value, policy));
  if (n == 2) {
    const classifier::Verdict v = classifier::classify_c22(value);
    if (!v.member) return "NotMember";
    if (v.clause == "4m+1") return "Odd4m1";
    if (v.clause == "2^4(2m+1)") return "V4_odd";
    return "V6";
  }
  if (n == 3) {
    const classifier::Verdict v = classifier::classify_c23(value);
    if (!v.member) return "NotMember";
    if (v.clause == "8m+1") return "Odd8m1";
    if (v.clause == "2^8(4m+1)") return "V8_4m1";
    return "V12";
  }
  throw std::invalid_argument("class tags exist for n = 2, 3, 4 only");
}

std::vector<std::string> failed_assertions(int n, const BigInt& value, const std::string& class_tag,
                                           const SweepChecks& checks) {
  std::vector<std::string> out;
  if (checks.member_check && class_tag == "NotMember") out.emplace_back("member_check");
  if (sgn(value) == 0) return out;
  const auto [w, u] = classifier::two_adic_split(value);
  if (checks.odd_residue_check && w == 0 && mod_pow2(value, static_cast<unsigned>(n)) != 1) {
    out.emplace_back("odd_residue_check");
  }
  if (n == 4 && w > 0) {
    if (checks.valuation_gap_check && !(w == 16 || w == 24 || w >= 26)) out.emplace_back("valuation_gap_check");
    if (checks.v16_odd_part_check && w == 16 && mod_u64(u, 4) != 1) out.emplace_back("v16_odd_part_check");
  }
  return out;
}

SweepResult sweep(const SweepConfig& config) {
  validate(config);
  SweepResult result;
  result.total_tuples = tuple_count(config.n, config.alphabet.size());
  result.total_chunks = (result.total_tuples + config.chunk_size - 1) / config.chunk_size;

  CheckpointHeader header;
  header.config_hash = config_hash(config);
  header.n = config.n;
  header.alphabet = config.alphabet;
  header.chunk_size = config.chunk_size;
  header.total_tuples = result.total_tuples;
  header.total_chunks = result.total_chunks;

  if (config.resume && std::filesystem::exists(*config.output_path)) {
    LoadedCheckpoint loaded = read_checkpoint(*config.output_path);
    if (loaded.header.config_hash != header.config_hash) {
      throw SweepError("checkpoint " + config.output_path->string() + " was written by a different configuration");
    }
    if (loaded.header.total_chunks != result.total_chunks ||
        loaded.header.chunks_completed > loaded.header.total_chunks) {
      throw SweepError("checkpoint progress is inconsistent with the configuration");
    }
    result.chunks_completed = loaded.header.chunks_completed;
    result.total_enumerated = loaded.header.total_enumerated;
    result.distinct_values = std::move(loaded.values);
  }

  const ChunkEvaluator evaluator(config.n, config.alphabet);
  auto chunk_bounds = [&](std::uint64_t c) {
    const std::uint64_t begin = c * config.chunk_size;
    return std::pair{begin, std::min(begin + config.chunk_size, result.total_tuples)};
  };
  auto checkpoint = [&] {
    if (!config.output_path) return;
    header.chunks_completed = result.chunks_completed;
    header.total_enumerated = result.total_enumerated;
    write_checkpoint(*config.output_path, header, result.distinct_values);
  };

  const std::uint64_t budget = config.max_chunks.value_or(result.total_chunks);
  std::uint64_t processed = 0;
  while (result.chunks_completed < result.total_chunks && processed < budget) {
    const std::uint64_t first = result.chunks_completed;
    const std::uint64_t batch =
        std::min<std::uint64_t>({config.worker_count, result.total_chunks - first, budget - processed});
    std::vector<ChunkResult> partial(batch);
    if (batch == 1) {
      const auto [b, e] = chunk_bounds(first);
      partial[0] = evaluator.run(b, e);
    } else {
      std::vector<std::exception_ptr> errors(batch);
      std::vector<std::thread> threads;
      for (std::uint64_t i = 0; i < batch; ++i) {
        threads.emplace_back([&, i] {
          try {
            const auto [b, e] = chunk_bounds(first + i);
            partial[i] = evaluator.run(b, e);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        });
      }
      for (std::thread& t : threads) t.join();
      for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::uint64_t i = 0; i < batch; ++i) {
      merge(result.distinct_values, partial[i], config);
      if (result.distinct_values.size() > config.max_distinct) {
        throw SweepError("more than " + std::to_string(config.max_distinct) + " distinct values");
      }
      const auto [b, e] = chunk_bounds(first + i);
      result.total_enumerated += e - b;
      ++result.chunks_completed;
      ++processed;
      partial[i] = ChunkResult{};
      checkpoint();
    }
  }
  if (config.output_path && processed == 0) checkpoint();

  collect_findings(result, config);
  return result;
}

CoverageReport coverage_check(std::uint64_t bound) {
  using namespace classifier;
  CoverageReport report;
  report.bound = bound;
  const auto b = static_cast<long>(bound);
  std::vector<ValueClass> classes;
  for (long m = -b; m <= b; ++m) {
    classes.emplace_back(Odd16m1{m});
    classes.emplace_back(V16_4m1{m});
    classes.emplace_back(V24_4m1{m});
    classes.emplace_back(V24_8m3{m});
    classes.emplace_back(V26{m});
    for (long l = -b; l <= b; ++l) classes.emplace_back(V24_A{m, l});
  }
  std::set<BigInt> seen;
  for (const ValueClass& c : classes) {
    const BigInt v = *reconstruct(c);
    if (!seen.insert(v).second) continue;
    try {
      const auto w = witness::witness_for(v);
      if (!w) {
        report.failures.push_back(to_string(v) + " (" + describe(c) + ") has no witness");
        continue;
      }
      if (det_group(w->assignment) != v) {
        report.failures.push_back(to_string(v) + ": witness evaluates differently");
        continue;
      }
      ++report.per_family[witness::family_name(w->family)];
    } catch (const std::exception& e) {
      report.failures.push_back(to_string(v) + ": " + e.what());
    }
  }
  report.values.assign(seen.begin(), seen.end());
  return report;
}

std::vector<std::int64_t> a_set_oracle(std::int64_t bound) {
  std::vector<std::int64_t> out;
  const std::int64_t reach = bound / 8 + 2;
  for (std::int64_t k = -reach; k <= reach; ++k) {
    const std::int64_t p = 8 * k - 3;
    if (p > bound || p < -bound) continue;
    for (std::int64_t l = -reach; l <= reach; ++l) {
      const std::int64_t q = 8 * l + 3;
      if (q > bound || q < -bound) continue;
      const std::int64_t prod = p * q;
      if (prod <= bound && prod >= -bound) out.push_back(prod);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gdet::search
