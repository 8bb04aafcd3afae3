#include "cli.hpp"

#include "gdet/classifier.hpp"
#include "gdet/core.hpp"
#include "gdet/search.hpp"
#include "gdet/verifier.hpp"
#include "gdet/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace gdet::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

/// Raised for bad arguments found after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

BigInt parse_value(const std::string& s) {
  try {
    return parse_integer(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("not an integer: '" + s + "'");
  }
}

std::vector<std::int64_t> parse_alphabet(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const std::string& item : split_commas(s)) {
    const BigInt v = parse_value(item);
    if (!v.fits_slong_p()) throw UsageError("alphabet entry out of range: " + item);
    out.push_back(v.get_si());
  }
  return out;
}

int max_rank_from_env() {
  const char* env = std::getenv("GDET_MAX_RANK");
  if (!env || !*env) return kDefaultMaxRank;
  const BigInt v = parse_value(env);
  if (v < 0 || v > 30) throw UsageError("GDET_MAX_RANK must be between 0 and 30");
  return static_cast<int>(v.get_si());
}

std::string join(std::span<const BigInt> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + gdet::to_string(values[i]);
  return out;
}

std::string join(const std::vector<std::int64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

// Parameter of a lower-rank clause: v = scale * (step * m + offset).
std::string lower_rank_line(const std::string& tag, const BigInt& v, long scale, long step, long offset) {
  const BigInt m = (v / scale - offset) / step;
  return tag + " m=" + gdet::to_string(m);
}

struct Options {
  // eval
  int n = 0;
  std::string values;
  bool tree = false;
  // classify / witness
  std::string value;
  std::string group = "c2_4";
  std::uint64_t seed = classifier::FactorPolicy{}.seed;
  // verify
  std::string lemma = "all";
  std::uint64_t window = verifier::kDefaultWindow;
  // sweep
  int sweep_n = 4;
  std::string alphabet;
  unsigned jobs = 1;
  std::string out_path;
  bool resume = false;
  std::uint64_t chunk_size = search::SweepConfig{}.chunk_size;
  std::uint64_t max_chunks = 0;
  std::size_t max_distinct = search::SweepConfig{}.max_distinct;
  // coverage
  std::uint64_t bound = 1;
};

classifier::FactorPolicy policy_for(const Options& o) {
  classifier::FactorPolicy p;
  p.seed = o.seed;
  return p;
}

CommandResult cmd_eval(const Options& o) {
  const std::vector<std::string> items = split_commas(o.values);
  const int max_rank = max_rank_from_env();
  if (o.n < 0 || o.n > max_rank) {
    throw UsageError("--n must be between 0 and " + std::to_string(max_rank) + " (GDET_MAX_RANK)");
  }
  const std::size_t expected = std::size_t{1} << o.n;
  if (items.size() != expected) {
    throw UsageError("expected " + std::to_string(expected) + " values for n=" + std::to_string(o.n) + ", got " +
                     std::to_string(items.size()));
  }
  std::vector<BigInt> values;
  values.reserve(items.size());
  for (const std::string& s : items) values.push_back(parse_value(s));
  const Assignment a(o.n, std::move(values), max_rank);
  CommandResult r;
  if (o.tree) {
    r.out = render_tree(factor_tree(a));
    if (!r.out.empty() && r.out.back() != '\n') r.out += '\n';
    r.out += "product " + gdet::to_string(det_group(a)) + "\n";
  } else {
    r.out = gdet::to_string(det_group(a)) + "\n";
  }
  return r;
}

CommandResult cmd_classify(const Options& o) {
  const BigInt v = parse_value(o.value);
  CommandResult r;
  if (o.group == "c2_4") {
    const classifier::ValueClass c = classifier::classify_c24(v, policy_for(o));
    r.out = classifier::describe(c) + "\n";
    r.exit_code = classifier::is_member(c) ? kOk : kNegative;
    return r;
  }
  const bool c22 = o.group == "c2_2";
  const classifier::Verdict verdict = c22 ? classifier::classify_c22(v) : classifier::classify_c23(v);
  if (!verdict.member) {
    r.out = "NotMember: " + verdict.reason + "\n";
    r.exit_code = kNegative;
    return r;
  }
  const std::string tag = search::class_tag_for(c22 ? 2 : 3, v);
  if (tag == "Odd4m1") r.out = lower_rank_line(tag, v, 1, 4, 1);
  else if (tag == "V4_odd") r.out = lower_rank_line(tag, v, 16, 2, 1);
  else if (tag == "V6") r.out = lower_rank_line(tag, v, 64, 1, 0);
  else if (tag == "Odd8m1") r.out = lower_rank_line(tag, v, 1, 8, 1);
  else if (tag == "V8_4m1") r.out = lower_rank_line(tag, v, 256, 4, 1);
  else r.out = lower_rank_line(tag, v, 4096, 1, 0);
  r.out += "\n";
  return r;
}

CommandResult cmd_witness(const Options& o) {
  const BigInt v = parse_value(o.value);
  CommandResult r;
  const auto w = witness::witness_for(v, policy_for(o));
  if (!w) {
    r.out = classifier::describe(classifier::classify_c24(v, policy_for(o))) + "\n";
    r.exit_code = kNegative;
    return r;
  }
  r.out = witness::describe(w->family) + "\n" + join(w->assignment.values()) + "\n";
  return r;
}

CommandResult cmd_verify(const Options& o) {
  std::vector<verifier::LemmaReport> reports;
  try {
    reports = verifier::verify(o.lemma, o.window);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  CommandResult r;
  bool all_pass = true;
  for (const verifier::LemmaReport& rep : reports) {
    r.out += rep.summary_line() + "\n";
    all_pass = all_pass && rep.passed();
  }
  if (reports.size() > 1) {
    r.out += "verified " + std::to_string(reports.size()) + " lemmas, " + (all_pass ? "pass" : "FAIL") + "\n";
  }
  r.exit_code = all_pass ? kOk : kNegative;
  return r;
}

CommandResult cmd_sweep(const Options& o) {
  search::SweepConfig c;
  c.n = o.sweep_n;
  c.alphabet = parse_alphabet(o.alphabet);
  c.chunk_size = o.chunk_size;
  c.worker_count = o.jobs;
  if (!o.out_path.empty()) c.output_path = o.out_path;
  c.resume = o.resume;
  if (o.max_chunks) c.max_chunks = o.max_chunks;
  c.max_distinct = o.max_distinct;
  c.factor_policy = policy_for(o);
  const search::SweepResult res = search::sweep(c);

  std::ostringstream os;
  os << "tuples " << res.total_tuples << "\n";
  os << "enumerated " << res.total_enumerated << "\n";
  os << "chunks " << res.chunks_completed << "/" << res.total_chunks << (res.complete() ? "" : " (incomplete)")
     << "\n";
  os << "distinct " << res.distinct_values.size() << "\n";
  os << "violations " << res.violations.size() << "\n";
  os << "flagged " << res.flagged.size() << "\n";
  for (const search::Violation& v : res.violations) {
    os << "violation " << v.assertion << " value=" << gdet::to_string(v.value) << " tuple=" << join(v.tuple) << "\n";
  }
  for (const search::FlaggedEntry& f : res.flagged) {
    os << "flagged " << f.reason << " value=" << gdet::to_string(f.value) << " tuple=" << join(f.tuple) << "\n";
  }
  CommandResult r;
  r.out = os.str();
  r.exit_code = res.violations.empty() ? kOk : kNegative;
  return r;
}

CommandResult cmd_coverage(const Options& o) {
  const search::CoverageReport rep = search::coverage_check(o.bound);
  std::ostringstream os;
  os << "bound " << rep.bound << "\n";
  for (const auto& [family, count] : rep.per_family) os << family << " " << count << "\n";
  os << "values " << rep.values.size() << "\n";
  for (const std::string& f : rep.failures) os << "failure " << f << "\n";
  os << "failures " << rep.failures.size() << "\n";
  CommandResult r;
  r.out = os.str();
  r.exit_code = rep.passed() ? kOk : kNegative;
  return r;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Integer group determinants of C2^n"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate D_n at an assignment");
  eval->add_option("--n", o.n, "Rank")->required();
  eval->add_option("--values", o.values, "2^n comma-separated integers")->required()->allow_extra_args(false);
  eval->add_flag("--tree", o.tree, "Print the factor tree down to rank-1 leaves");

  auto* classify = app.add_subcommand("classify", "Decide membership in S(C2^n)");
  classify->add_option("value", o.value, "Decimal integer")->required();
  classify->add_option("--group", o.group, "c2_2, c2_3 or c2_4")
      ->check(CLI::IsMember({"c2_2", "c2_3", "c2_4"}));
  classify->add_option("--seed", o.seed, "Factorization seed");

  auto* witness = app.add_subcommand("witness", "Build an assignment with the given determinant");
  witness->add_option("value", o.value, "Decimal integer")->required();
  witness->add_option("--seed", o.seed, "Factorization seed");

  auto* verify = app.add_subcommand("verify", "Run registered residue checks");
  verify->add_option("--lemma", o.lemma, "Registered id or 'all'");
  verify->add_option("--window", o.window, "Residue window, a power of two >= 32");

  auto* sweep = app.add_subcommand("sweep", "Enumerate alphabet^(2^n) and check every value");
  sweep->add_option("--n", o.sweep_n, "Rank (2, 3 or 4)");
  sweep->add_option("--alphabet", o.alphabet, "Comma-separated entries")->required()->allow_extra_args(false);
  sweep->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", o.out_path, "Checkpoint/result file");
  sweep->add_flag("--resume", o.resume, "Continue from --out");
  sweep->add_option("--chunk-size", o.chunk_size, "Tuples per chunk")->check(CLI::PositiveNumber);
  sweep->add_option("--max-chunks", o.max_chunks, "Stop after this many chunks (0: no limit)");
  sweep->add_option("--max-distinct", o.max_distinct, "Abort above this many distinct values");
  sweep->add_option("--seed", o.seed, "Factorization seed");

  auto* coverage = app.add_subcommand("coverage", "Build and check witnesses for all small class parameters");
  coverage->add_option("--bound", o.bound, "Parameter magnitude bound")->check(CLI::PositiveNumber);

  CommandResult r;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    r.out = app.help();
    return r;
  } catch (const CLI::ParseError& e) {
    r.exit_code = kError;
    r.err = e.what() + std::string("\n");
    return r;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*classify) return cmd_classify(o);
    if (*witness) return cmd_witness(o);
    if (*verify) return cmd_verify(o);
    if (*sweep) return cmd_sweep(o);
    return cmd_coverage(o);
  } catch (const UsageError& e) {
    r.err = std::string("error: ") + e.what() + "\n";
  } catch (const classifier::FactorizationInfeasible& e) {
    r.err = std::string("infeasible: ") + e.what() + "\n";
  } catch (const search::SweepError& e) {
    r.err = std::string("sweep error: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    r.err = std::string("error: ") + e.what() + "\n";
  }
  r.exit_code = kError;
  return r;
}

}  // namespace gdet::cli
