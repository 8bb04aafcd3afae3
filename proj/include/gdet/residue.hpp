#pragma once

// Exact reasoning about integers known only modulo a power of two.
//
// A polynomial with integer coefficients, evaluated at inputs that are known
// modulo W = 2^w, is itself known modulo some power of two that depends on the
// shape of the polynomial. Approx carries that knowledge through sums and
// products without ever claiming more bits than are determined, so a property
// checked on one representative of each residue class holds for the whole
// class.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace gdet::residue {

/// Upper bound on tracked precision; residues live in a uint64.
inline constexpr unsigned kMaxPrecision = 62;

/// The set { residue + 2^precision t : t integer }.
struct Approx {
  std::uint64_t residue = 0;  // in [0, 2^precision)
  unsigned precision = 0;

  static Approx of(std::int64_t value, unsigned precision);

  /// Lower bound on the 2-adic valuation shared by every member; exact when
  /// residue != 0.
  unsigned vlb() const;
  bool valuation_known() const { return residue != 0; }

  friend bool operator==(const Approx&, const Approx&) = default;
};

Approx operator+(const Approx& a, const Approx& b);
Approx operator-(const Approx& a, const Approx& b);
Approx operator*(const Approx& a, const Approx& b);
/// Tighter than a * a: the cross term 2 r t carries an extra factor of two.
Approx square(const Approx& a);
/// Exact division by 2^s. Requires vlb() >= s and precision >= s.
Approx shift_down(const Approx& a, unsigned s);

std::string to_string(const Approx& a);

/// Outcome of testing a claim about every member of an Approx.
enum class Tri { Proven, Refuted, Undetermined };

Tri tri_or(Tri a, Tri b);
Tri tri_and(Tri a, Tri b);
const char* to_string(Tri t);

/// x == r (mod 2^e) for every member.
Tri congruent(const Approx& x, std::uint64_t r, unsigned e);
Tri valuation_eq(const Approx& x, unsigned v);
Tri valuation_ge(const Approx& x, unsigned v);
/// Valuation exactly v and odd part mod 8 in the given set.
/// Bit r of the mask stands for residue r mod 8.
Tri odd_part_mod8_in(const Approx& x, unsigned v, std::uint8_t residue_mask);

std::uint8_t residue_mask(std::initializer_list<unsigned> residues);

/// c_k k + c_l l + c_m m + c_n n + constant.
struct LinearForm {
  std::array<std::int64_t, 4> coeff{};
  std::int64_t constant = 0;
};

/// Parameters (k, l, m, n), each a representative of its class mod 2^window_bits.
using Params = std::array<std::int64_t, 4>;

/// Exact: moving any parameter by 2^w moves the value by a multiple of
/// 2^(w + v2(coefficient)).
Approx evaluate(const LinearForm& f, const Params& p, unsigned window_bits);

/// D2(x0, x1, x2, x3) = D1(x0 + x2, x1 + x3) D1(x0 - x2, x1 - x3)
///                    = [(x0 + x2)^2 - (x1 + x3)^2] [(x0 - x2)^2 - (x1 - x3)^2].
struct D2Brackets {
  Approx first;   // (x0 + x2)^2 - (x1 + x3)^2
  Approx second;  // (x0 - x2)^2 - (x1 - x3)^2
  Approx value() const { return first * second; }
};

/// Arguments of D2 as linear forms in (k, l, m, n).
using D2Arguments = std::array<LinearForm, 4>;

D2Brackets d2_brackets(const D2Arguments& args, const Params& p, unsigned window_bits);

/// (2k + e0, 2l + e1, 2m + e2, 2n + e3) with each e_i in {0, 1}.
D2Arguments doubled_arguments(unsigned odd_mask);

}  // namespace gdet::residue
