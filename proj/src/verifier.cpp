#include "gdet/verifier.hpp"

#include "gdet/core.hpp"
#include "gdet/signature.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace gdet::verifier {

using residue::Approx;
using residue::Params;
using residue::Tri;

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }
bool odd(std::int64_t x) { return mod(x, 2) == 1; }

unsigned window_bits(std::uint64_t window) {
  if (window < 32 || !std::has_single_bit(window) || window > (1u << 12)) {
    throw std::invalid_argument("window must be a power of two between 32 and 4096, got " + std::to_string(window));
  }
  return static_cast<unsigned>(std::countr_zero(window));
}

std::optional<std::string> require(Tri t, const std::string& clause, const Approx& x) {
  if (t == Tri::Proven) return std::nullopt;
  return "clause " + clause + " " + residue::to_string(t) + " at value " + residue::to_string(x);
}

Approx d2_value(unsigned odd_offsets, const Params& p, unsigned w) {
  return residue::d2_brackets(residue::doubled_arguments(odd_offsets), p, w).value();
}

std::int64_t odd_product_mod8(const Params& p) {
  const auto [k, l, m, n] = p;
  return mod((2 * k + 2 * l + 1) * (2 * m + 2 * n + 1), 8);
}

struct ResidueLemma {
  std::string modulus;
  std::string sufficiency;
  std::function<std::optional<std::string>(const Params&, unsigned)> check;
};

// D2(k, l, m, n) against the quartic closed form; also invariance of the closed
// form under the generators (0 1) and (0 1 2 3) of the symmetric group.
std::optional<std::string> check_closed_form(const Params& p, unsigned) {
  const BigInt x0(static_cast<long>(p[0])), x1(static_cast<long>(p[1])), x2(static_cast<long>(p[2])),
      x3(static_cast<long>(p[3]));
  const BigInt direct = det_group(Assignment(2, {x0, x1, x2, x3}));
  const BigInt closed = d2_closed_form(x0, x1, x2, x3);
  if (direct != closed) return "D2 = " + gdet::to_string(direct) + " but closed form = " + gdet::to_string(closed);
  if (d2_closed_form(x1, x0, x2, x3) != closed || d2_closed_form(x1, x2, x3, x0) != closed) {
    return "closed form not symmetric";
  }
  return std::nullopt;
}

// D2(2k, 2l, 2m, 2n + 1) and D2(2k, 2l + 1, 2m + 1, 2n + 1) mod 16.
std::optional<std::string> check_odd_factors(const Params& p, unsigned w) {
  const auto [k, l, m, n] = p;
  const Approx a = d2_value(0b1000, p, w);
  if (auto f = require(residue::congruent(a, static_cast<std::uint64_t>(mod(8 * (k + l + m) + 1, 16)), 4), "(1)", a)) {
    return f;
  }
  const Approx b = d2_value(0b1110, p, w);
  return require(residue::congruent(b, static_cast<std::uint64_t>(mod(8 * k - 3, 16)), 4), "(2)", b);
}

// D2(2k, 2l, 2m, 2n): the six parity classes.
std::optional<std::string> check_all_even(const Params& p, unsigned w) {
  const auto [k, l, m, n] = p;
  const Approx a = d2_value(0b0000, p, w);
  const std::int64_t s = k + m - l - n;
  const std::int64_t t = k * m - l * n;
  int odd_params = 0;
  for (const std::int64_t x : p) odd_params += odd(x);
  if (odd(s) && !odd(t)) return require(residue::congruent(a, 16 * 1, 7), "(1)", a);
  if (odd(s) && odd(t)) return require(residue::congruent(a, 16 * 5, 7), "(2)", a);
  if (odd_params == 0 && mod(s, 4) != 0) return require(residue::congruent(a, 256 * 1, 10), "(3)", a);
  if (odd_params == 4 && mod(s, 4) != 0) return require(residue::congruent(a, 256 * 3, 10), "(4)", a);
  if ((odd_params == 0 || odd_params == 4) && mod(s, 4) == 0) return require(residue::congruent(a, 0, 12), "(5)", a);
  if (odd_params == 2) return require(residue::congruent(a, 0, 10), "(6)", a);
  return "no clause covers the case";
}

// D2(2k, 2l + 1, 2m, 2n + 1) with k = m (mod 2) in the +-3 (mod 8) case: one
// bracket is 4 times an odd number r, the other 16 times an odd number s, and
// the D2 value is 2^6 r s.
std::optional<std::string> check_mixed_split(const Params& p, unsigned w) {
  const auto [k, l, m, n] = p;
  auto plus = [&](std::int64_t target) { return mod(k + m, 4) == target && mod(1 - l - n, 4) == target; };
  auto minus = [&](std::int64_t target) { return mod(k - m, 4) == target && mod(2 - l + n, 4) == target; };
  const bool cond_I = plus(0) || minus(0);
  const bool cond_II = plus(2) || minus(2);
  if (odd(k) != odd(m) || !(cond_I || cond_II)) return std::nullopt;
  if (cond_I && cond_II) return "conditions (I) and (II) overlap";

  // (r mod 8 set, s mod 8 set, value / 2^6 mod 4)
  struct Target {
    const char* clause;
    std::uint8_t r, s;
    unsigned quarter;
  };
  const bool k_odd = odd(k);
  const Target target = !k_odd ? (cond_I ? Target{"(1)", residue::residue_mask({7}), residue::residue_mask({3, 7}), 1}
                                         : Target{"(2)", residue::residue_mask({3}), residue::residue_mask({1, 5}), 3})
                               : (cond_I ? Target{"(3)", residue::residue_mask({3}), residue::residue_mask({3, 7}), 1}
                                         : Target{"(4)", residue::residue_mask({7}), residue::residue_mask({1, 5}), 3});
  const residue::D2Brackets br = residue::d2_brackets(residue::doubled_arguments(0b1010), p, w);
  auto split = [&](const Approx& low, const Approx& high) {
    return residue::tri_and(residue::odd_part_mod8_in(low, 2, target.r), residue::odd_part_mod8_in(high, 4, target.s));
  };
  const Tri brackets = residue::tri_or(split(br.first, br.second), split(br.second, br.first));
  if (brackets != Tri::Proven) {
    return std::string("clause ") + target.clause + " bracket split " + residue::to_string(brackets) + " at " +
           residue::to_string(br.first) + ", " + residue::to_string(br.second);
  }
  const Approx a = br.value();
  return require(residue::congruent(a, 64u * target.quarter, 8), target.clause, a);
}

// (2k + 2l + 1)(2m + 2n + 1) mod 8 against linear conditions mod 4.
std::optional<std::string> check_product_residues(const Params& p, unsigned) {
  const auto [k, l, m, n] = p;
  const std::int64_t r = odd_product_mod8(p);
  const bool c1 = mod(k - m, 4) == mod(-l + n, 4);
  const bool c2 = mod(k + m, 4) == mod(-l - n - 1, 4);
  const bool c3 = mod(k + m, 4) == mod(1 - l - n, 4);
  const bool c4 = mod(k - m, 4) == mod(2 - l + n, 4);
  if ((r == 1) != c1) return "clause (1) fails, product " + std::to_string(r);
  if ((r == 7) != c2) return "clause (2) fails, product " + std::to_string(r);
  if ((r == 3) != c3) return "clause (3) fails, product " + std::to_string(r);
  if ((r == 5) != c4) return "clause (4) fails, product " + std::to_string(r);
  return std::nullopt;
}

// Valuation classes of D2 for the three even/odd argument patterns.
std::optional<std::string> check_valuations(const Params& p, unsigned w) {
  const auto [k, l, m, n] = p;
  const bool balanced = !odd(k + m - l - n);

  const Approx a = d2_value(0b0000, p, w);
  const Tri t1 = balanced ? residue::tri_or(residue::valuation_eq(a, 8), residue::valuation_ge(a, 10))
                          : residue::valuation_eq(a, 4);
  if (auto f = require(t1, "(1)", a)) return f;

  const Approx b = d2_value(0b1111, p, w);
  const Tri t2 = balanced ? residue::valuation_ge(b, 9) : residue::valuation_eq(b, 4);
  if (auto f = require(t2, "(2)", b)) return f;

  const Approx c = d2_value(0b1010, p, w);
  const std::int64_t r = odd_product_mod8(p);
  const Tri t3 = odd(k - m) ? residue::valuation_ge(c, 7)
                 : (r == 1 || r == 7) ? residue::valuation_ge(c, 8)
                                      : residue::valuation_eq(c, 6);
  return require(t3, "(3)", c);
}

const std::map<std::string, ResidueLemma>& residue_lemmas() {
  static const std::map<std::string, ResidueLemma> lemmas = {
      {"3.1",
       {"exact",
        "both sides are polynomials of degree <= 4 in each variable; agreement on a product grid with >= 5 points "
        "per variable forces identity",
        check_closed_form}},
      {"3.2",
       {"2^4",
        "D2 brackets evaluated as 2-adic approximations exact for the whole class mod W; value known mod >= 2^5",
        check_odd_factors}},
      {"3.3",
       {"2^12",
        "brackets (x0 +- x2)^2 - (x1 +- x3)^2 known mod 2^8 from inputs mod W = 2^5; product precision propagated "
        "with the valuation of the cofactor",
        check_all_even}},
      {"3.4",
       {"2^8",
        "each bracket known mod 2^8 from inputs mod W; odd parts of bracket/4 and bracket/16 read mod 8",
        check_mixed_split}},
      {"3.5",
       {"2^3", "both sides depend only on inputs mod 4, and 4 divides W", check_product_residues}},
      {"3.6",
       {"2^10",
        "valuation claims decided on 2-adic approximations; undetermined counts as failure",
        check_valuations}},
  };
  return lemmas;
}

LemmaReport signature_report(const std::string& id, std::initializer_list<Regime> regimes, const SignatureFlags& flags,
                             const std::string& sufficiency) {
  const auto start = Clock::now();
  LemmaReport report;
  report.lemma_id = id;
  report.window = 2;
  report.modulus = flags.odd_residue ? "2^4" : "2^3";
  std::string detail;
  for (const Regime r : regimes) {
    const SignatureOutcome o = enumerate_signatures(r, flags);
    report.cases_enumerated += o.enumerated;
    report.expected_cases += o.expected;
    detail += std::string("; ") + to_string(r) + ": " + std::to_string(o.survivors) + " survivors";
    if (flags.a_form) detail += ", " + std::to_string(o.critical) + " at valuation 24 with odd part 7 mod 8";
    if (o.failure && !report.counterexample) {
      report.failure = std::string(to_string(r)) + ": " + *o.failure;
      report.counterexample = o.counterexample;
    }
  }
  report.sufficiency = sufficiency + detail;
  report.elapsed = Clock::now() - start;
  return report;
}

}  // namespace

std::string LemmaReport::summary_line() const {
  std::string line = "lemma " + lemma_id + ": " + std::to_string(cases_enumerated) + " cases, ";
  if (passed()) return line + "pass";
  line += "FAIL";
  if (cases_enumerated != expected_cases) line += " (expected " + std::to_string(expected_cases) + " cases)";
  if (!failure.empty()) line += ": " + failure;
  return line;
}

std::string LemmaReport::record() const {
  std::string out = "id=" + lemma_id + " window=" + std::to_string(window) +
                    " cases=" + std::to_string(cases_enumerated) + " expected=" + std::to_string(expected_cases) +
                    " modulus=" + modulus + " verdict=" + (passed() ? "pass" : "fail") + " elapsed_ms=" +
                    std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
  if (counterexample) {
    out += " counterexample=";
    for (std::size_t i = 0; i < counterexample->size(); ++i) {
      out += (i ? "," : "") + std::to_string((*counterexample)[i]);
    }
  }
  return out;
}

std::vector<LemmaReport> verify_parity_suite() {
  const auto start = Clock::now();
  LemmaReport r22, r23, r24;
  r22.lemma_id = "2.2";
  r23.lemma_id = "2.3";
  r24.lemma_id = "2.4";
  for (LemmaReport* r : {&r22, &r23, &r24}) {
    r->window = 2;
    r->expected_cases = 1u << 16;
    r->modulus = "2";
  }
  r22.modulus = "2^2";
  r22.sufficiency =
      "b, c, d, e are linear in a, so their parities depend only on a mod 2; b_i + c_i + d_i + e_i has every "
      "coefficient divisible by 4, checked on the 16 basis vectors";
  r23.sufficiency = "each determinant is an integer polynomial in a, so its parity depends only on a mod 2";
  r24.sufficiency = r23.sufficiency;

  auto fail = [](LemmaReport& r, const std::vector<std::int64_t>& a, const std::string& why) {
    if (r.counterexample) return;
    r.counterexample = a;
    r.failure = why;
  };

  // Linear-form check on basis vectors.
  for (std::size_t j = 0; j < 16; ++j) {
    std::vector<BigInt> e(16, 0);
    e[j] = 1;
    const BcdeQuad q = bcde_decompose(Assignment(4, e));
    for (std::size_t i = 0; i < 4; ++i) {
      if (mod_u64(q.b[i] + q.c[i] + q.d[i] + q.e[i], 4) != 0) {
        std::vector<std::int64_t> basis(16, 0);
        basis[j] = 1;
        fail(r22, basis, "b + c + d + e not divisible by 4 at index " + std::to_string(i));
      }
    }
  }

  for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
    std::vector<BigInt> values(16);
    std::vector<std::int64_t> tuple(16);
    for (std::size_t j = 0; j < 16; ++j) {
      tuple[j] = (mask >> j) & 1u;
      values[j] = static_cast<long>(tuple[j]);
    }
    const Assignment a(4, values);
    const BcdeQuad q = bcde_decompose(a);
    ++r22.cases_enumerated;
    ++r23.cases_enumerated;
    ++r24.cases_enumerated;

    for (std::size_t i = 0; i < 4; ++i) {
      const std::uint64_t pb = mod_u64(q.b[i], 2);
      if (mod_u64(q.c[i], 2) != pb || mod_u64(q.d[i], 2) != pb || mod_u64(q.e[i], 2) != pb) {
        fail(r22, tuple, "b, c, d, e parities differ at index " + std::to_string(i));
      }
    }

    const std::uint64_t d4 = mod_u64(det_group(a), 2);
    const auto [plus, minus] = factor_step(a);
    if (mod_u64(det_group(plus), 2) != d4 || mod_u64(det_group(minus), 2) != d4) {
      fail(r23, tuple, "D3 factor parity differs from D4");
    }
    for (const auto* x : {&q.b, &q.c, &q.d, &q.e}) {
      if (mod_u64(d2_of(*x), 2) != d4) fail(r23, tuple, "D2 factor parity differs from D4");
    }

    const bool balanced = mod_u64(q.b[0] + q.b[2], 2) == mod_u64(q.b[1] + q.b[3], 2);
    if ((d4 == 0) != balanced) fail(r24, tuple, "D4 parity disagrees with b0 + b2 vs b1 + b3");
  }
  const auto elapsed = Clock::now() - start;
  for (LemmaReport* r : {&r22, &r23, &r24}) r->elapsed = elapsed;
  return {r22, r23, r24};
}

LemmaReport enumerate_cases(const std::string& lemma_id, std::uint64_t window, const CaseCheck& check) {
  const auto start = Clock::now();
  const auto W = static_cast<std::int64_t>(window);
  LemmaReport report;
  report.lemma_id = lemma_id;
  report.window = window;
  report.expected_cases = window * window * window * window;
  Params p{};
  for (p[0] = 0; p[0] < W && !report.counterexample; ++p[0]) {
    for (p[1] = 0; p[1] < W && !report.counterexample; ++p[1]) {
      for (p[2] = 0; p[2] < W && !report.counterexample; ++p[2]) {
        for (p[3] = 0; p[3] < W; ++p[3]) {
          ++report.cases_enumerated;
          if (auto f = check(p)) {
            report.counterexample = std::vector<std::int64_t>(p.begin(), p.end());
            report.failure = "(k,l,m,n)=(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
                             std::to_string(p[2]) + "," + std::to_string(p[3]) + "): " + *f;
            break;
          }
        }
      }
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

LemmaReport verify_d2_residue_lemma(const std::string& lemma_id, std::uint64_t window) {
  const auto& lemmas = residue_lemmas();
  const auto it = lemmas.find(lemma_id);
  if (it == lemmas.end()) throw std::invalid_argument("unknown residue lemma id: " + lemma_id);
  const unsigned w = window_bits(window);
  const ResidueLemma& lemma = it->second;
  LemmaReport report = enumerate_cases(lemma_id, window, [&](const Params& p) { return lemma.check(p, w); });
  report.modulus = lemma.modulus;
  report.sufficiency = lemma.sufficiency;
  return report;
}

std::optional<std::string> recheck(const std::string& lemma_id, const Params& p, std::uint64_t window) {
  const auto& lemmas = residue_lemmas();
  const auto it = lemmas.find(lemma_id);
  if (it == lemmas.end()) throw std::invalid_argument("unknown residue lemma id: " + lemma_id);
  return it->second.check(p, window_bits(window));
}

std::vector<LemmaReport> verify_impossibility_cases(std::uint64_t window) {
  const unsigned w = window_bits(window);
  std::vector<LemmaReport> out;

  {
    const auto start = Clock::now();
    LemmaReport table;
    table.lemma_id = "signatures";
    table.window = window;
    table.modulus = "2^8";
    table.sufficiency =
        "each row's hypothesis, parity set, valuation and residue claims are decided per residue class mod W with "
        "2-adic approximations; rows must partition the classes and every listed option must occur";
    for (const Regime r : kAllRegimes) {
      const CrossCheckOutcome c = cross_check_table(r, w);
      table.cases_enumerated += c.enumerated;
      table.expected_cases += c.expected;
      if (c.failure && !table.counterexample) {
        table.failure = std::string(to_string(r)) + ": " + *c.failure;
        table.counterexample = c.counterexample;
      }
    }
    table.elapsed = Clock::now() - start;
    out.push_back(std::move(table));
  }

  out.push_back(signature_report("4.1", {Regime::ThreeEven, Regime::OneEven}, {.odd_residue = true},
                                 "odd D4 values: every factor signature with parity vectors summing to 0 mod 2 "
                                 "multiplies to 1 mod 16"));
  out.push_back(signature_report("4.2", {Regime::AllEven, Regime::AllOdd, Regime::TwoEven}, {.valuation_gap = true},
                                 "even D4 values: surviving signatures have valuation 16, 24 or >= 26"));
  out.push_back(signature_report("4.5", {Regime::AllEven}, {.valuation_gap = true, .a_form = true},
                                 "b all even: valuation 24 with odd part 7 mod 8 forces a +-3 mod 8 component, "
                                 "hence an odd part of the form (8k-3)(8l+3)"));
  out.push_back(signature_report("4.6", {Regime::TwoEven}, {.valuation_gap = true, .a_form = true},
                                 "exactly two b_i even: same conclusion through the bracket split of each factor"));
  return out;
}

const std::vector<std::string>& registered_lemmas() {
  static const std::vector<std::string> ids = {"2.2", "2.3", "2.4", "3.1", "3.2", "3.3", "3.4",
                                               "3.5", "3.6", "signatures", "4.1", "4.2", "4.5", "4.6"};
  return ids;
}

std::vector<LemmaReport> verify(const std::string& lemma_id, std::uint64_t window) {
  window_bits(window);
  if (lemma_id == "all") {
    std::vector<LemmaReport> out = verify_parity_suite();
    for (const auto& [id, lemma] : residue_lemmas()) out.push_back(verify_d2_residue_lemma(id, window));
    for (LemmaReport& r : verify_impossibility_cases(window)) out.push_back(std::move(r));
    return out;
  }
  if (lemma_id == "2.2" || lemma_id == "2.3" || lemma_id == "2.4") {
    for (LemmaReport& r : verify_parity_suite()) {
      if (r.lemma_id == lemma_id) return {std::move(r)};
    }
  }
  if (residue_lemmas().count(lemma_id)) return {verify_d2_residue_lemma(lemma_id, window)};
  if (lemma_id == "signatures" || lemma_id == "4.1" || lemma_id == "4.2" || lemma_id == "4.5" || lemma_id == "4.6") {
    for (LemmaReport& r : verify_impossibility_cases(window)) {
      if (r.lemma_id == lemma_id) return {std::move(r)};
    }
  }
  throw std::invalid_argument("unknown lemma id: " + lemma_id);
}

}  // namespace gdet::verifier
