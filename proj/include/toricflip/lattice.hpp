#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace toricflip {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

IntVector make_vector(std::initializer_list<long> entries);
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);  // "p/q", or "p" when q = 1
std::string to_string(std::span<const Integer> v);
std::int64_t to_int64(const Integer& value);

/// Dense rectangular integer matrix, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  explicit IntMatrix(std::vector<IntVector> rows);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const;
  std::vector<IntVector> row_vectors() const;
  IntMatrix transposed() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// gcd of the absolute values of the entries; 0 only for the zero vector.
Integer gcd_all(std::span<const Integer> v);
Integer lcm_all(std::span<const Integer> v);

/// Divides out the content so that gcd of entries is 1. Zero vectors are rejected.
IntVector primitive_part(std::span<const Integer> v);

Integer determinant(const IntMatrix& m);

/// M = left * diag(invariants) * right with left, right unimodular and
/// invariants[0] | invariants[1] | ... (trailing zeros for rank deficiency).
struct SmithForm {
  IntVector invariants;
  IntMatrix left;
  IntMatrix right;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Square basis (rows, upper triangular with positive pivots) of the lattice
/// spanned by the rows of `generators`; the lattice must have full rank.
IntMatrix row_hermite_basis(const IntMatrix& generators);

/// Solves x * basis = v over the rationals for a square nonsingular basis.
RatVector solve_left(const IntMatrix& basis, std::span<const Integer> v);
RatVector solve_left(const IntMatrix& basis, std::span<const Rational> v);

/// Hirzebruch-Jung (minus sign) continued fraction of r/a, 0 < a < r coprime.
std::vector<Integer> hj_continued_fraction(const Integer& r, const Integer& a);

/// Evaluates b_1 - 1/(b_2 - 1/(... - 1/b_k)).
Rational hj_expand(std::span<const Integer> b);

}  // namespace toricflip
