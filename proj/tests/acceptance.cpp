// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "gdet/checkpoint.hpp"
#include "gdet/classifier.hpp"
#include "gdet/core.hpp"
#include "gdet/search.hpp"
#include "gdet/verifier.hpp"
#include "gdet/witness.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace gdet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome timed(double limit_s, const std::function<Outcome()>& body, double& elapsed) {
  const auto t0 = Clock::now();
  Outcome o = body();
  elapsed = seconds_since(t0);
  if (o.pass && elapsed > limit_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s limit";
  }
  return o;
}

std::vector<Assignment> random_corpus() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> rank(1, 4);
  std::uniform_int_distribution<long> entry(-20, 20);
  std::vector<Assignment> out;
  out.reserve(10000);
  for (int i = 0; i < 10000; ++i) {
    const int n = rank(rng);
    std::vector<BigInt> v(std::size_t{1} << n);
    for (BigInt& x : v) x = entry(rng);
    out.emplace_back(n, std::move(v));
  }
  return out;
}

Outcome oracle_equivalence() {
  std::size_t checked = 0;
  for (const Assignment& a : random_corpus()) {
    if (det_group(a) != det_matrix_oracle(a)) return {false, "mismatch at " + to_string(a)};
    ++checked;
  }
  return {true, std::to_string(checked) + " assignments, ranks 1-4"};
}

Outcome split_identity() {
  std::size_t checked = 0;
  for (const Assignment& a : random_corpus()) {
    const auto [plus, minus] = factor_step(a);
    if (det_group(a) != det_group(plus) * det_group(minus)) return {false, "mismatch at " + to_string(a)};
    ++checked;
  }
  return {true, std::to_string(checked) + " assignments"};
}

Outcome closed_form_d2() {
  std::size_t grid = 0;
  for (long a = -8; a <= 8; ++a)
    for (long b = -8; b <= 8; ++b)
      for (long c = -8; c <= 8; ++c)
        for (long d = -8; d <= 8; ++d) {
          if (d2_closed_form(a, b, c, d) != det_group(Assignment::of({a, b, c, d}))) {
            return {false, "grid mismatch"};
          }
          ++grid;
        }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> entry(-1000000, 1000000);
  for (int i = 0; i < 1000; ++i) {
    std::array<long, 4> x{entry(rng), entry(rng), entry(rng), entry(rng)};
    const BigInt ref = d2_closed_form(x[0], x[1], x[2], x[3]);
    std::array<int, 4> perm{0, 1, 2, 3};
    int perms = 0;
    do {
      if (d2_closed_form(x[perm[0]], x[perm[1]], x[perm[2]], x[perm[3]]) != ref) return {false, "not symmetric"};
      ++perms;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (perms != 24) return {false, "permutation count"};
  }
  return {true, std::to_string(grid) + " grid cases, 1000 quadruples x 24 permutations"};
}

Outcome witness_round_trip() {
  using namespace witness;
  std::size_t evaluations = 0;
  auto check = [&](const WitnessFamily& f, const BigInt& expected) {
    ++evaluations;
    return det_group(build(f)) == expected;
  };
  for (long p = -500; p <= 500; ++p) {
    const BigInt b(p);
    const BigInt e16 = BigInt(1) << 16, e24 = BigInt(1) << 24, e26 = BigInt(1) << 26;
    if (!check(F1{b}, 16 * b + 1)) return {false, "F1 " + std::to_string(p)};
    if (!check(F2a{b}, e16 * (8 * b + 1))) return {false, "F2a " + std::to_string(p)};
    if (!check(F2b{b}, e16 * (8 * b - 3))) return {false, "F2b " + std::to_string(p)};
    if (!check(F3{b}, e24 * (4 * b + 1))) return {false, "F3 " + std::to_string(p)};
    if (!check(F5even{b}, e26 * 2 * b)) return {false, "F5even " + std::to_string(p)};
    if (!check(F5odd{b}, e26 * (2 * b + 1))) return {false, "F5odd " + std::to_string(p)};
    for (long q = -500; q <= 500; ++q) {
      if (!check(F4{b, BigInt(q)}, e24 * (4 * b + 1) * (8 * BigInt(q) + 3))) {
        return {false, "F4 " + std::to_string(p) + "," + std::to_string(q)};
      }
    }
  }
  return {true, std::to_string(evaluations) + " evaluations, F4 over the full 1001x1001 grid"};
}

Outcome lemma_suite() {
  const auto reports = verifier::verify("all", 32);
  std::size_t lemmas = 0;
  for (const verifier::LemmaReport& r : reports) {
    if (!r.passed()) return {false, r.summary_line()};
    const bool parity = r.lemma_id.rfind("2.", 0) == 0;
    const bool residue = r.lemma_id.rfind("3.", 0) == 0;
    if (parity && r.cases_enumerated != 65536) return {false, r.summary_line() + " (expected 65536)"};
    if (residue && r.cases_enumerated != 1048576) return {false, r.summary_line() + " (expected 1048576)"};
    ++lemmas;
  }
  return {true, std::to_string(lemmas) + " reports, zero counterexamples"};
}

// Independent restatement of the four sweep assertions.
std::optional<std::string> c24_soundness(const BigInt& v) {
  if (!classifier::is_member(classifier::classify_c24(v))) return "not a member";
  if (v == 0) return std::nullopt;
  const unsigned long w = mpz_scan1(v.get_mpz_t(), 0);
  if (w == 0 && mod_pow2(v, 4) != 1) return "odd value not 1 mod 16";
  if (w > 0 && !(w == 16 || w == 24 || w >= 26)) return "valuation " + std::to_string(w);
  if (w == 16 && mod_pow2(BigInt(v >> 16), 2) != 1) return "valuation 16 with odd part 3 mod 4";
  return std::nullopt;
}

Outcome soundness_sweep(unsigned workers) {
  search::SweepConfig c;
  c.n = 4;
  c.alphabet = {-1, 0, 1};
  c.worker_count = workers;
  const search::SweepResult r = search::sweep(c);
  if (r.total_enumerated != 43046721) return {false, "enumerated " + std::to_string(r.total_enumerated)};
  if (!r.violations.empty()) {
    const auto& v = r.violations.front();
    return {false, std::to_string(r.violations.size()) + " violations, first " + v.assertion + " " + to_string(v.value)};
  }
  if (!r.flagged.empty()) return {false, std::to_string(r.flagged.size()) + " flagged values"};
  std::uint64_t total = 0;
  for (const auto& [v, e] : r.distinct_values) {
    if (auto why = c24_soundness(v)) return {false, to_string(v) + ": " + *why};
    total += e.count;
  }
  if (total != 43046721) return {false, "counts sum to " + std::to_string(total)};
  return {true, "43046721 tuples, " + std::to_string(r.distinct_values.size()) + " distinct values, 0 violations, " +
                    std::to_string(workers) + " workers"};
}

Outcome a_membership() {
  const auto oracle = search::a_set_oracle(20000);
  const std::set<std::int64_t> members(oracle.begin(), oracle.end());
  std::size_t present = 0;
  for (std::int64_t u = -19999; u <= 19999; u += 2) {
    const auto pair = classifier::is_in_A(BigInt(static_cast<long>(u)));
    if (pair.has_value() != members.contains(u)) return {false, "disagreement at " + std::to_string(u)};
    if (pair) {
      if ((8 * pair->k - 3) * (8 * pair->l + 3) != u) return {false, "bad pair for " + std::to_string(u)};
      ++present;
    }
  }
  return {true, "20000 odd u, " + std::to_string(present) + " in A"};
}

Outcome specific_verdicts() {
  using classifier::classify_c24;
  using classifier::is_member;
  const BigInt e24 = BigInt(1) << 24;
  if (is_member(classify_c24(7 * e24))) return {false, "2^24*7 accepted"};
  if (is_member(classify_c24(-e24))) return {false, "-2^24 accepted"};
  for (long q = -99; q <= 99; q += 2) {
    if (is_member(classify_c24(BigInt(q) << 25))) return {false, "2^25*" + std::to_string(q) + " accepted"};
  }
  for (const BigInt& v : {BigInt(15 * e24), BigInt(-9 * e24), BigInt(0)}) {
    if (!is_member(classify_c24(v))) return {false, to_string(v) + " rejected"};
    const auto w = witness::witness_for(v);
    if (!w || det_group(w->assignment) != v) return {false, "no verified witness for " + to_string(v)};
  }
  return {true, "all six verdicts, witnesses re-evaluated"};
}

Outcome lower_rank() {
  search::SweepConfig c2;
  c2.n = 2;
  c2.alphabet = {-3, -2, -1, 0, 1, 2, 3};
  search::SweepConfig c3;
  c3.n = 3;
  c3.alphabet = {-1, 0, 1};
  const auto r2 = search::sweep(c2);
  const auto r3 = search::sweep(c3);
  if (r2.total_enumerated != 2401 || r3.total_enumerated != 6561) return {false, "wrong tuple counts"};
  for (const auto& [v, e] : r2.distinct_values) {
    if (!classifier::classify_c22(v).member) return {false, "n=2 value " + to_string(v)};
  }
  for (const auto& [v, e] : r3.distinct_values) {
    if (!classifier::classify_c23(v).member) return {false, "n=3 value " + to_string(v)};
  }
  if (!r2.violations.empty() || !r3.violations.empty()) return {false, "sweep violations"};
  return {true, "2401 + 6561 tuples, " + std::to_string(r2.distinct_values.size()) + " + " +
                    std::to_string(r3.distinct_values.size()) + " distinct values, all members"};
}

pid_t spawn(const std::vector<std::string>& args) {
  const pid_t pid = fork();
  if (pid == 0) {
    std::vector<char*> argv;
    for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    if (!std::freopen("/dev/null", "w", stdout)) _exit(126);
    execv(argv[0], argv.data());
    _exit(127);
  }
  return pid;
}

int wait_exit(pid_t pid) {
  int status = 0;
  waitpid(pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome resume_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "gdet_acceptance";
  std::filesystem::create_directories(dir);
  const auto full = dir / "uninterrupted.jsonl";
  const auto killed = dir / "killed.jsonl";
  std::filesystem::remove(full);
  std::filesystem::remove(killed);
  auto sweep_args = [](const std::filesystem::path& out) {
    return std::vector<std::string>{GDET_CLI_PATH, "sweep",        "--n",   "4",
                                    "--alphabet",  "-1,0,1",       "--chunk-size", "1048576",
                                    "--out",       out.string()};
  };

  const pid_t victim = spawn(sweep_args(killed));
  std::uint64_t seen = 0, total = 0;
  const auto t0 = Clock::now();
  while (seen < 4 && seconds_since(t0) < 600) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
    if (!std::filesystem::exists(killed)) continue;
    try {
      const auto h = search::read_checkpoint(killed).header;
      seen = h.chunks_completed;
      total = h.total_chunks;
    } catch (const search::SweepError&) {
    }
  }
  kill(victim, SIGKILL);
  wait_exit(victim);
  const auto at_kill = search::read_checkpoint(killed).header;
  if (at_kill.chunks_completed == 0 || at_kill.chunks_completed >= total) {
    return {false, "kill did not land mid-run (" + std::to_string(at_kill.chunks_completed) + " chunks)"};
  }

  auto resumed = sweep_args(killed);
  resumed.emplace_back("--resume");
  if (const int rc = wait_exit(spawn(resumed)); rc != 0) return {false, "resumed run exited " + std::to_string(rc)};
  if (const int rc = wait_exit(spawn(sweep_args(full))); rc != 0) {
    return {false, "uninterrupted run exited " + std::to_string(rc)};
  }
  const std::string a = slurp(full), b = slurp(killed);
  if (a.empty() || a != b) return {false, "result files differ"};
  return {true, "killed after " + std::to_string(at_kill.chunks_completed) + "/" + std::to_string(total) +
                    " chunks, resumed file byte-identical (" + std::to_string(a.size()) + " bytes)"};
}

}  // namespace

int main() {
  const unsigned workers = std::clamp(std::thread::hardware_concurrency(), 1U, 8U);
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "transform product equals elimination determinant", 60, oracle_equivalence},
      {2, "one factor step splits the determinant", 30, split_identity},
      {3, "rank-2 closed form on [-8,8]^4 and under permutations", 60, closed_form_d2},
      {4, "witness families round-trip for parameters up to 500", 30, witness_round_trip},
      {5, "registered residue checks at window 32", 300, lemma_suite},
      {6, "soundness sweep over {-1,0,1}^16", 600, [&] { return soundness_sweep(workers); }},
      {7, "A membership agrees with the product oracle", 60, a_membership},
      {8, "specific verdicts", 60, specific_verdicts},
      {9, "rank 2 and rank 3 sweeps stay inside their value sets", 10, lower_rank},
      {10, "killed and resumed sweep is byte-identical", 1200, resume_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    double elapsed = 0;
    Outcome o;
    try {
      o = timed(c.limit_s, c.run, elapsed);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.2fs", elapsed);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " -- " << o.detail << " ["
              << time_buf << "]" << std::endl;
    failures += o.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
