#include "gdet/signature.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace gdet::verifier {

using residue::Approx;
using residue::Params;
using residue::Tri;

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

bool odd(std::int64_t x) { return mod(x, 2) == 1; }

// For D2(2k, 2l + 1, 2m, 2n + 1): the two branches of the conditions that
// split the +-3 (mod 8) case.
bool plus_branch(const Params& p, std::int64_t target) {
  const auto [k, l, m, n] = p;
  return mod(k + m, 4) == target && mod(1 - l - n, 4) == target;
}
bool minus_branch(const Params& p, std::int64_t target) {
  const auto [k, l, m, n] = p;
  return mod(k - m, 4) == target && mod(2 - l + n, 4) == target;
}
bool cond_I(const Params& p) { return plus_branch(p, 0) || minus_branch(p, 0); }
bool cond_II(const Params& p) { return plus_branch(p, 2) || minus_branch(p, 2); }

std::int64_t odd_product_mod8(const Params& p) {
  const auto [k, l, m, n] = p;
  return mod((2 * k + 2 * l + 1) * (2 * m + 2 * n + 1), 8);
}

int odd_count(const Params& p) {
  return static_cast<int>(std::count_if(p.begin(), p.end(), [](std::int64_t x) { return odd(x); }));
}

std::uint8_t mask(std::initializer_list<unsigned> r) { return residue::residue_mask(r); }

std::vector<SignatureRow> build_table() {
  std::vector<SignatureRow> t;
  const std::vector<unsigned> all16 = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};

  t.push_back({"Q1", "3.2(1)", Regime::ThreeEven, [](const Params&) { return true; }, all16, {0, true}, {},
               [](unsigned par) { return 8u * ((par ^ (par >> 1) ^ (par >> 2)) & 1u) + 1; }});
  t.push_back({"Q2", "3.2(2)", Regime::OneEven, [](const Params&) { return true; }, all16, {0, true}, {},
               [](unsigned par) { return (par & 1u) ? 5u : 13u; }});

  // D2(2k, 2l, 2m, 2n)
  t.push_back({"E1", "3.3(1)", Regime::AllEven,
               [](const Params& p) { return odd(p[0] + p[2] - p[1] - p[3]) && !odd(p[0] * p[2] - p[1] * p[3]); },
               {1, 2, 4, 8}, {4, true}, {mask({1})}});
  t.push_back({"E2", "3.3(2)", Regime::AllEven,
               [](const Params& p) { return odd(p[0] + p[2] - p[1] - p[3]) && odd(p[0] * p[2] - p[1] * p[3]); },
               {7, 11, 13, 14}, {4, true}, {mask({5})}});
  t.push_back({"E3", "3.3(3)", Regime::AllEven,
               [](const Params& p) { return odd_count(p) == 0 && mod(p[0] + p[2] - p[1] - p[3], 4) != 0; },
               {0}, {8, true}, {mask({1, 5})}});
  t.push_back({"E4", "3.3(4)", Regime::AllEven,
               [](const Params& p) { return odd_count(p) == 4 && mod(p[0] + p[2] - p[1] - p[3], 4) != 0; },
               {15}, {8, true}, {mask({3, 7})}});
  t.push_back({"E5", "3.3(5)", Regime::AllEven,
               [](const Params& p) {
                 return (odd_count(p) == 0 || odd_count(p) == 4) && mod(p[0] + p[2] - p[1] - p[3], 4) == 0;
               },
               {0, 15}, {12, false}, {}});
  t.push_back({"E6", "3.3(6)", Regime::AllEven, [](const Params& p) { return odd_count(p) == 2; },
               {3, 5, 6, 9, 10, 12}, {10, false}, {}});

  // D2(2k + 1, 2l + 1, 2m + 1, 2n + 1)
  t.push_back({"O1", "3.6(2)", Regime::AllOdd, [](const Params& p) { return odd(p[0] + p[2] - p[1] - p[3]); },
               {1, 2, 4, 8, 7, 11, 13, 14}, {4, true}, {mask({3, 7})}});
  t.push_back({"O2", "3.6(2)", Regime::AllOdd, [](const Params& p) { return !odd(p[0] + p[2] - p[1] - p[3]); },
               {0, 3, 5, 6, 9, 10, 12, 15}, {9, false}, {}});

  // D2(2k, 2l + 1, 2m, 2n + 1)
  const std::vector<unsigned> km_even = {0, 2, 8, 10};
  const std::vector<unsigned> km_odd = {5, 7, 13, 15};
  t.push_back({"T1", "3.4(1)", Regime::TwoEven,
               [](const Params& p) { return !odd(p[0]) && !odd(p[2]) && cond_I(p); }, km_even, {6, true},
               {mask({7}), mask({3, 7})}});
  t.push_back({"T2", "3.4(2)", Regime::TwoEven,
               [](const Params& p) { return !odd(p[0]) && !odd(p[2]) && cond_II(p); }, km_even, {6, true},
               {mask({3}), mask({1, 5})}});
  t.push_back({"T3", "3.4(3)", Regime::TwoEven,
               [](const Params& p) { return odd(p[0]) && odd(p[2]) && cond_I(p); }, km_odd, {6, true},
               {mask({3}), mask({3, 7})}});
  t.push_back({"T4", "3.4(4)", Regime::TwoEven,
               [](const Params& p) { return odd(p[0]) && odd(p[2]) && cond_II(p); }, km_odd, {6, true},
               {mask({7}), mask({1, 5})}});
  t.push_back({"T5", "3.6(3)", Regime::TwoEven, [](const Params& p) { return odd(p[0] - p[2]); },
               {1, 3, 9, 11, 4, 6, 12, 14}, {7, false}, {}});
  t.push_back({"T6", "3.6(3)", Regime::TwoEven,
               [](const Params& p) {
                 const std::int64_t r = odd_product_mod8(p);
                 return !odd(p[0] - p[2]) && (r == 1 || r == 7);
               },
               {0, 2, 8, 10, 5, 7, 13, 15}, {8, false}, {}});
  return t;
}

std::vector<unsigned> residues_of(std::uint8_t m) {
  std::vector<unsigned> out;
  for (unsigned r = 0; r < 8; ++r) {
    if (m & (1u << r)) out.push_back(r);
  }
  return out;
}

bool odd_regime(Regime r) { return r == Regime::ThreeEven || r == Regime::OneEven; }

std::string params_text(const Params& p) {
  return "(k,l,m,n)=(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]) + "," +
         std::to_string(p[3]) + ")";
}

// Realized option: row, parity and up to two component residues (8 = none).
using OptionKey = std::array<unsigned, 4>;

OptionKey key_of(const FactorOption& o) {
  return {static_cast<unsigned>(o.row), o.parity, o.residues.size() > 0 ? o.residues[0] : 8u,
          o.residues.size() > 1 ? o.residues[1] : 8u};
}

struct CaseResult {
  std::optional<std::string> failure;
  OptionKey realized{};
};

// Two-component claim on the brackets: one has valuation 2 with odd part in
// `low`, the other valuation 4 with odd part in `high`.
Tri bracket_claim(const Approx& low_bracket, const Approx& high_bracket, std::uint8_t low, std::uint8_t high) {
  return residue::tri_and(residue::odd_part_mod8_in(low_bracket, 2, low),
                          residue::odd_part_mod8_in(high_bracket, 4, high));
}

CaseResult check_case(Regime regime, const Params& p, unsigned w) {
  const auto& table = signature_table();
  const residue::D2Brackets br = residue::d2_brackets(residue::doubled_arguments(odd_offsets(regime)), p, w);
  const Approx alpha = br.value();
  const unsigned parity = parity_of(p);

  std::optional<std::size_t> match;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].regime != regime || !table[i].applies(p)) continue;
    if (match) return {params_text(p) + " matches rows " + table[*match].tag + " and " + table[i].tag, {}};
    match = i;
  }
  if (!match) return {params_text(p) + " matches no row", {}};
  const SignatureRow& row = table[*match];
  const std::string where = params_text(p) + " row " + row.tag + ": ";

  if (std::find(row.parities.begin(), row.parities.end(), parity) == row.parities.end()) {
    return {where + "parity vector " + std::to_string(parity) + " not listed", {}};
  }
  OptionKey key{static_cast<unsigned>(*match), parity, 8u, 8u};

  if (row.residue16) {
    const Tri t = residue::congruent(alpha, row.residue16(parity), 4);
    if (t != Tri::Proven) return {where + "mod 16 claim " + residue::to_string(t) + " for " + residue::to_string(alpha), {}};
    return {std::nullopt, key};
  }

  const Tri tv = row.valuation.exact ? residue::valuation_eq(alpha, row.valuation.v)
                                     : residue::valuation_ge(alpha, row.valuation.v);
  if (tv != Tri::Proven) {
    return {where + "valuation claim " + residue::to_string(tv) + " for " + residue::to_string(alpha), {}};
  }
  if (row.components.size() == 1) {
    const Tri t = residue::odd_part_mod8_in(alpha, row.valuation.v, row.components[0]);
    if (t != Tri::Proven) return {where + "residue claim " + residue::to_string(t) + " for " + residue::to_string(alpha), {}};
    key[2] = static_cast<unsigned>((alpha.residue >> row.valuation.v) & 7u);
  } else if (row.components.size() == 2) {
    const Tri straight = bracket_claim(br.first, br.second, row.components[0], row.components[1]);
    const Tri swapped = bracket_claim(br.second, br.first, row.components[0], row.components[1]);
    if (residue::tri_or(straight, swapped) != Tri::Proven) {
      return {where + "bracket claim unproven for " + residue::to_string(br.first) + ", " +
                  residue::to_string(br.second),
              {}};
    }
    const Approx& low = straight == Tri::Proven ? br.first : br.second;
    const Approx& high = straight == Tri::Proven ? br.second : br.first;
    key[2] = static_cast<unsigned>((low.residue >> 2) & 7u);
    key[3] = static_cast<unsigned>((high.residue >> 4) & 7u);
  }
  return {std::nullopt, key};
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::ThreeEven: return "three-even";
    case Regime::OneEven: return "one-even";
    case Regime::AllEven: return "all-even";
    case Regime::AllOdd: return "all-odd";
    case Regime::TwoEven: return "two-even";
  }
  return "?";
}

unsigned odd_offsets(Regime r) {
  switch (r) {
    case Regime::ThreeEven: return 0b1000;
    case Regime::OneEven: return 0b1110;
    case Regime::AllEven: return 0b0000;
    case Regime::AllOdd: return 0b1111;
    case Regime::TwoEven: return 0b1010;
  }
  return 0;
}

unsigned parity_of(const Params& p) {
  unsigned out = 0;
  for (std::size_t i = 0; i < 4; ++i) out |= static_cast<unsigned>(mod(p[i], 2)) << i;
  return out;
}

const std::vector<SignatureRow>& signature_table() {
  static const std::vector<SignatureRow> table = build_table();
  return table;
}

std::vector<FactorOption> factor_options(Regime r) {
  const auto& table = signature_table();
  std::vector<FactorOption> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const SignatureRow& row = table[i];
    if (row.regime != r) continue;
    for (const unsigned parity : row.parities) {
      if (row.components.empty()) {
        out.push_back({i, parity, {}});
      } else if (row.components.size() == 1) {
        for (const unsigned a : residues_of(row.components[0])) out.push_back({i, parity, {a}});
      } else {
        for (const unsigned a : residues_of(row.components[0])) {
          for (const unsigned b : residues_of(row.components[1])) out.push_back({i, parity, {a, b}});
        }
      }
    }
  }
  return out;
}

SignatureOutcome enumerate_signatures(Regime r, const SignatureFlags& flags) {
  const auto& table = signature_table();
  const std::vector<FactorOption> options = factor_options(r);
  const std::uint64_t n = options.size();
  SignatureOutcome out;
  out.expected = n * n * n * n;

  std::array<std::size_t, 4> idx{};
  auto fail = [&](const std::string& why) {
    if (out.failure) return;
    std::string text = why + ":";
    for (const std::size_t i : idx) {
      const FactorOption& o = options[i];
      text += " " + table[o.row].tag + "/p" + std::to_string(o.parity);
      out.counterexample.push_back(static_cast<std::int64_t>(o.row));
      out.counterexample.push_back(o.parity);
      for (const unsigned res : o.residues) {
        text += "/r" + std::to_string(res);
        out.counterexample.push_back(res);
      }
    }
    out.failure = text;
  };

  for (idx[0] = 0; idx[0] < n; ++idx[0]) {
    for (idx[1] = 0; idx[1] < n; ++idx[1]) {
      for (idx[2] = 0; idx[2] < n; ++idx[2]) {
        for (idx[3] = 0; idx[3] < n; ++idx[3]) {
          ++out.enumerated;
          unsigned parity_sum = 0;
          for (const std::size_t i : idx) parity_sum ^= options[i].parity;
          if (parity_sum != 0) continue;
          ++out.survivors;

          if (odd_regime(r)) {
            unsigned product = 1;
            for (const std::size_t i : idx) product = product * table[options[i].row].residue16(options[i].parity) % 16;
            if (flags.odd_residue && product != 1) fail("odd product " + std::to_string(product) + " mod 16");
            continue;
          }

          unsigned valuation = 0;
          bool exact = true;
          unsigned odd_product = 1;
          bool has_pm3 = false;
          for (const std::size_t i : idx) {
            const SignatureRow& row = table[options[i].row];
            valuation += row.valuation.v;
            exact = exact && row.valuation.exact;
            for (const unsigned res : options[i].residues) {
              odd_product = odd_product * res % 8;
              has_pm3 = has_pm3 || res == 3 || res == 5;
            }
          }
          if (flags.valuation_gap) {
            const bool ok = exact ? (valuation == 16 || valuation == 24 || valuation >= 26) : valuation >= 26;
            if (!ok) fail(std::string("valuation ") + (exact ? "" : ">= ") + std::to_string(valuation));
          }
          if (exact && valuation == 24 && odd_product == 7) {
            ++out.critical;
            if (flags.a_form && !has_pm3) fail("valuation 24, odd part 7 mod 8 without a +-3 component");
          }
        }
      }
    }
  }
  if (!out.failure && out.enumerated != out.expected) out.failure = "enumeration count mismatch";
  return out;
}

std::optional<std::string> cross_check_case(Regime r, const Params& p, unsigned window_bits) {
  return check_case(r, p, window_bits).failure;
}

CrossCheckOutcome cross_check_table(Regime r, unsigned window_bits) {
  const std::int64_t W = std::int64_t{1} << window_bits;
  CrossCheckOutcome out;
  out.expected = static_cast<std::uint64_t>(W * W * W * W);
  std::set<OptionKey> realized;
  Params p{};
  for (p[0] = 0; p[0] < W; ++p[0]) {
    for (p[1] = 0; p[1] < W; ++p[1]) {
      for (p[2] = 0; p[2] < W; ++p[2]) {
        for (p[3] = 0; p[3] < W; ++p[3]) {
          ++out.enumerated;
          CaseResult c = check_case(r, p, window_bits);
          if (c.failure) {
            if (!out.failure) {
              out.failure = c.failure;
              out.counterexample.assign(p.begin(), p.end());
            }
            continue;
          }
          realized.insert(c.realized);
        }
      }
    }
  }
  if (out.failure) return out;
  for (const FactorOption& o : factor_options(r)) {
    if (realized.count(key_of(o))) continue;
    std::string text = "listed option never realized: " + signature_table()[o.row].tag + " parity " +
                       std::to_string(o.parity);
    for (const unsigned res : o.residues) text += " residue " + std::to_string(res);
    out.failure = text;
    break;
  }
  if (!out.failure && out.enumerated != out.expected) out.failure = "enumeration count mismatch";
  return out;
}

}  // namespace gdet::verifier
