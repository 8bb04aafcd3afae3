#pragma once

// Group determinants of the elementary abelian groups C2^n.
//
// An element (e_0, ..., e_{n-1}) of C2^n is identified with the index
// j = e_{n-1} 2^{n-1} + ... + e_0 2^0, so the group law is bitwise XOR and the
// group matrix of an assignment x is M[g][h] = x[g ^ h].

#include "gdet/bigint.hpp"

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gdet {

inline constexpr int kDefaultMaxRank = 8;
inline constexpr int kDefaultOracleMaxRank = 6;

/// Rank n together with the 2^n variable values x_0 .. x_{2^n - 1}.
class Assignment {
 public:
  /// Throws std::invalid_argument unless 0 <= rank <= max_rank and
  /// values.size() == 2^rank.
  Assignment(int rank, std::vector<BigInt> values, int max_rank = kDefaultMaxRank);

  /// Rank is inferred from the number of values, which must be a power of two.
  static Assignment of(std::initializer_list<long> values);
  static Assignment of(std::span<const std::int64_t> values);

  int rank() const { return rank_; }
  std::size_t size() const { return values_.size(); }
  std::span<const BigInt> values() const { return values_; }
  const BigInt& operator[](std::size_t j) const { return values_[j]; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  int rank_;
  std::vector<BigInt> values_;
};

std::string to_string(const Assignment& a);

/// Walsh-Hadamard transform: component chi is sum_j (-1)^{popcount(j & chi)} x_j.
std::vector<BigInt> character_transform(const Assignment& a);

/// D_n(x): the product of all character sums.
BigInt det_group(const Assignment& a);

/// Direct determinant of the 2^n x 2^n group matrix by Bareiss elimination.
/// Throws std::invalid_argument when rank > max_rank.
BigInt det_matrix_oracle(const Assignment& a, int max_rank = kDefaultOracleMaxRank);

/// Splits D_{n} into D_{n-1}(x_j + x_{j+h}) * D_{n-1}(x_j - x_{j+h}), h = 2^{n-1}.
/// Throws std::invalid_argument for rank 0.
std::pair<Assignment, Assignment> factor_step(const Assignment& a);

/// Fully iterated factor_step; leaves are rank-1 (or the rank-0 root).
struct FactorTree {
  Assignment node;
  BigInt value;
  std::vector<FactorTree> children;  // empty or {plus, minus}
};

FactorTree factor_tree(const Assignment& a);

/// Indented rendering, one node per line: "D₂(3,1,0,0)=64".
std::string render_tree(const FactorTree& tree);

BigInt d1_closed_form(const BigInt& x0, const BigInt& x1);

/// sum x_i^4 - 2 sum_{i<j} x_i^2 x_j^2 + 8 x_0 x_1 x_2 x_3
BigInt d2_closed_form(const BigInt& x0, const BigInt& x1, const BigInt& x2, const BigInt& x3);

/// The four 4-tuples that write D_4 as a product of four D_2 values:
///   b_i = (a_i + a_{i+8}) + (a_{i+4} + a_{i+12})
///   c_i = (a_i + a_{i+8}) - (a_{i+4} + a_{i+12})
///   d_i = (a_i - a_{i+8}) + (a_{i+4} - a_{i+12})
///   e_i = (a_i - a_{i+8}) - (a_{i+4} - a_{i+12})
struct BcdeQuad {
  std::array<BigInt, 4> b, c, d, e;
};

/// Throws std::invalid_argument unless a.rank() == 4.
BcdeQuad bcde_decompose(const Assignment& a);

BigInt d2_of(const std::array<BigInt, 4>& x);

}  // namespace gdet
