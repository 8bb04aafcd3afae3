#include "gdet/residue.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gdet::residue {

namespace {

std::uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

unsigned cap(unsigned p) { return std::min(p, kMaxPrecision); }

LinearForm combine(const LinearForm& a, const LinearForm& b, std::int64_t sign) {
  LinearForm out;
  for (std::size_t i = 0; i < 4; ++i) out.coeff[i] = a.coeff[i] + sign * b.coeff[i];
  out.constant = a.constant + sign * b.constant;
  return out;
}

}  // namespace

Approx Approx::of(std::int64_t value, unsigned precision) {
  const unsigned p = cap(precision);
  return {static_cast<std::uint64_t>(value) & low_mask(p), p};
}

unsigned Approx::vlb() const {
  return residue == 0 ? precision : static_cast<unsigned>(std::countr_zero(residue));
}

Approx operator+(const Approx& a, const Approx& b) {
  const unsigned p = std::min(a.precision, b.precision);
  return {(a.residue + b.residue) & low_mask(p), p};
}

Approx operator-(const Approx& a, const Approx& b) {
  const unsigned p = std::min(a.precision, b.precision);
  return {(a.residue - b.residue) & low_mask(p), p};
}

// (r + 2^A s)(q + 2^B t) = rq + 2^A s q + 2^B t r + 2^(A+B) s t
Approx operator*(const Approx& a, const Approx& b) {
  const unsigned p = cap(std::min({a.precision + b.vlb(), b.precision + a.vlb(), a.precision + b.precision}));
  return {(a.residue * b.residue) & low_mask(p), p};
}

// (r + 2^A s)^2 = r^2 + 2^(A+1) r s + 2^(2A) s^2
Approx square(const Approx& a) {
  const unsigned p = cap(std::min(a.precision + 1 + a.vlb(), 2 * a.precision));
  return {(a.residue * a.residue) & low_mask(p), p};
}

Approx shift_down(const Approx& a, unsigned s) {
  if (a.precision < s || (a.residue & low_mask(s)) != 0) {
    throw std::invalid_argument("shift_down: value not known to be divisible by 2^" + std::to_string(s));
  }
  return {a.residue >> s, a.precision - s};
}

std::string to_string(const Approx& a) {
  return std::to_string(a.residue) + " mod 2^" + std::to_string(a.precision);
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::Proven || b == Tri::Proven) return Tri::Proven;
  if (a == Tri::Refuted && b == Tri::Refuted) return Tri::Refuted;
  return Tri::Undetermined;
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::Refuted || b == Tri::Refuted) return Tri::Refuted;
  if (a == Tri::Proven && b == Tri::Proven) return Tri::Proven;
  return Tri::Undetermined;
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Proven: return "proven";
    case Tri::Refuted: return "refuted";
    case Tri::Undetermined: return "undetermined";
  }
  return "?";
}

Tri congruent(const Approx& x, std::uint64_t r, unsigned e) {
  r &= low_mask(e);
  if (x.precision >= e) return (x.residue & low_mask(e)) == r ? Tri::Proven : Tri::Refuted;
  return (x.residue & low_mask(x.precision)) == (r & low_mask(x.precision)) ? Tri::Undetermined : Tri::Refuted;
}

Tri valuation_eq(const Approx& x, unsigned v) {
  if (x.valuation_known()) return x.vlb() == v ? Tri::Proven : Tri::Refuted;
  return x.precision > v ? Tri::Refuted : Tri::Undetermined;
}

Tri valuation_ge(const Approx& x, unsigned v) {
  if (x.valuation_known()) return x.vlb() >= v ? Tri::Proven : Tri::Refuted;
  return x.precision >= v ? Tri::Proven : Tri::Undetermined;
}

Tri odd_part_mod8_in(const Approx& x, unsigned v, std::uint8_t residue_mask) {
  Tri out = Tri::Refuted;
  for (unsigned r = 1; r < 8; r += 2) {
    if (residue_mask & (1u << r)) out = tri_or(out, congruent(x, std::uint64_t{r} << v, v + 3));
  }
  return out;
}

std::uint8_t residue_mask(std::initializer_list<unsigned> residues) {
  std::uint8_t mask = 0;
  for (const unsigned r : residues) mask |= static_cast<std::uint8_t>(1u << (r % 8));
  return mask;
}

Approx evaluate(const LinearForm& f, const Params& p, unsigned window_bits) {
  std::int64_t value = f.constant;
  unsigned precision = kMaxPrecision;
  for (std::size_t i = 0; i < 4; ++i) {
    if (f.coeff[i] == 0) continue;
    value += f.coeff[i] * p[i];
    const auto magnitude = static_cast<std::uint64_t>(f.coeff[i] < 0 ? -f.coeff[i] : f.coeff[i]);
    precision = std::min(precision, window_bits + static_cast<unsigned>(std::countr_zero(magnitude)));
  }
  return Approx::of(value, precision);
}

D2Brackets d2_brackets(const D2Arguments& x, const Params& p, unsigned window_bits) {
  auto eval = [&](const LinearForm& f) { return evaluate(f, p, window_bits); };
  const Approx s02 = eval(combine(x[0], x[2], 1));
  const Approx s13 = eval(combine(x[1], x[3], 1));
  const Approx d02 = eval(combine(x[0], x[2], -1));
  const Approx d13 = eval(combine(x[1], x[3], -1));
  return {square(s02) - square(s13), square(d02) - square(d13)};
}

D2Arguments doubled_arguments(unsigned odd_mask) {
  D2Arguments out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i].coeff[i] = 2;
    out[i].constant = (odd_mask >> i) & 1u;
  }
  return out;
}

}  // namespace gdet::residue
