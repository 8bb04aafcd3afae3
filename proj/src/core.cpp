#include "gdet/core.hpp"

#include "gdet/detail/fastdet.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace gdet {

namespace {

int rank_of_length(std::size_t len) {
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("assignment length " + std::to_string(len) +
                                " is not a power of two");
  }
  return std::countr_zero(len);
}

bool fits_fast_path(const Assignment& a) {
  for (const BigInt& v : a.values()) {
    if (abs(v) >= detail::kTransformSafeMagnitude) return false;
  }
  return true;
}

std::vector<std::int64_t> to_i64(const Assignment& a) {
  std::vector<std::int64_t> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j].get_si();
  return out;
}

const char* subscript_digit(int d) {
  static constexpr const char* kDigits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  return kDigits[d];
}

void render(const FactorTree& t, int depth, std::ostringstream& os) {
  os << std::string(2 * static_cast<std::size_t>(depth), ' ') << "D";
  for (const char c : std::to_string(t.node.rank())) os << subscript_digit(c - '0');
  os << "(";
  for (std::size_t j = 0; j < t.node.size(); ++j) {
    if (j) os << ",";
    os << t.node[j];
  }
  os << ")=" << t.value << "\n";
  for (const FactorTree& c : t.children) render(c, depth + 1, os);
}

}  // namespace

Assignment::Assignment(int rank, std::vector<BigInt> values, int max_rank)
    : rank_(rank), values_(std::move(values)) {
  if (rank < 0 || rank > max_rank) {
    throw std::invalid_argument("rank " + std::to_string(rank) + " outside [0, " +
                                std::to_string(max_rank) + "]");
  }
  if (values_.size() != (std::size_t{1} << rank)) {
    throw std::invalid_argument("rank " + std::to_string(rank) + " needs " +
                                std::to_string(std::size_t{1} << rank) + " values, got " +
                                std::to_string(values_.size()));
  }
}

Assignment Assignment::of(std::initializer_list<long> values) {
  std::vector<BigInt> v;
  v.reserve(values.size());
  for (const long x : values) v.emplace_back(x);
  const int rank = rank_of_length(v.size());
  return Assignment(rank, std::move(v));
}

Assignment Assignment::of(std::span<const std::int64_t> values) {
  std::vector<BigInt> v;
  v.reserve(values.size());
  for (const std::int64_t x : values) v.emplace_back(static_cast<long>(x));
  const int rank = rank_of_length(v.size());
  return Assignment(rank, std::move(v));
}

std::string to_string(const Assignment& a) {
  std::string out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j) out += ',';
    out += to_string(a[j]);
  }
  return out;
}

std::vector<BigInt> character_transform(const Assignment& a) {
  std::vector<BigInt> x(a.values().begin(), a.values().end());
  const std::size_t n = x.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        BigInt u = x[j];
        x[j] += x[j + h];
        x[j + h] = u - x[j + h];
      }
    }
  }
  return x;
}

BigInt det_group(const Assignment& a) {
  if (fits_fast_path(a)) {
    std::vector<std::int64_t> t = to_i64(a);
    detail::wht_inplace(t);
    return detail::exact_product(t);
  }
  BigInt acc = 1;
  for (const BigInt& s : character_transform(a)) {
    if (sgn(s) == 0) return 0;
    acc *= s;
  }
  return acc;
}

BigInt det_matrix_oracle(const Assignment& a, int max_rank) {
  if (a.rank() > max_rank) {
    throw std::invalid_argument("matrix oracle limited to rank " + std::to_string(max_rank));
  }
  const std::size_t n = a.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) m[g][h] = a[g ^ h];
  }
  // Bareiss: after step k every entry of the trailing block is a (k+1)-minor,
  // so the division by the previous pivot is exact.
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::pair<Assignment, Assignment> factor_step(const Assignment& a) {
  if (a.rank() == 0) throw std::invalid_argument("factor_step needs rank >= 1");
  const std::size_t half = a.size() / 2;
  std::vector<BigInt> plus(half), minus(half);
  for (std::size_t j = 0; j < half; ++j) {
    plus[j] = a[j] + a[j + half];
    minus[j] = a[j] - a[j + half];
  }
  return {Assignment(a.rank() - 1, std::move(plus), a.rank()),
          Assignment(a.rank() - 1, std::move(minus), a.rank())};
}

FactorTree factor_tree(const Assignment& a) {
  FactorTree t{a, det_group(a), {}};
  if (a.rank() >= 2) {
    auto [plus, minus] = factor_step(a);
    t.children.push_back(factor_tree(plus));
    t.children.push_back(factor_tree(minus));
  }
  return t;
}

std::string render_tree(const FactorTree& tree) {
  std::ostringstream os;
  render(tree, 0, os);
  return os.str();
}

BigInt d1_closed_form(const BigInt& x0, const BigInt& x1) { return x0 * x0 - x1 * x1; }

BigInt d2_closed_form(const BigInt& x0, const BigInt& x1, const BigInt& x2, const BigInt& x3) {
  const std::array<BigInt, 4> sq{x0 * x0, x1 * x1, x2 * x2, x3 * x3};
  BigInt quartic = 0;
  BigInt cross = 0;
  for (int i = 0; i < 4; ++i) {
    quartic += sq[i] * sq[i];
    for (int j = i + 1; j < 4; ++j) cross += sq[i] * sq[j];
  }
  return quartic - 2 * cross + 8 * x0 * x1 * x2 * x3;
}

BcdeQuad bcde_decompose(const Assignment& a) {
  if (a.rank() != 4) throw std::invalid_argument("bcde_decompose needs rank 4");
  BcdeQuad q;
  for (std::size_t i = 0; i < 4; ++i) {
    const BigInt s0 = a[i] + a[i + 8];
    const BigInt s1 = a[i + 4] + a[i + 12];
    const BigInt d0 = a[i] - a[i + 8];
    const BigInt d1 = a[i + 4] - a[i + 12];
    q.b[i] = s0 + s1;
    q.c[i] = s0 - s1;
    q.d[i] = d0 + d1;
    q.e[i] = d0 - d1;
  }
  return q;
}

BigInt d2_of(const std::array<BigInt, 4>& x) { return d2_closed_form(x[0], x[1], x[2], x[3]); }

}  // namespace gdet
