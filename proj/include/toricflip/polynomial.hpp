#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "toricflip/lattice.hpp"

namespace toricflip {

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored, so two polynomials are equal iff their term
/// maps are equal.
class SparsePoly {
 public:
  SparsePoly() = default;
  explicit SparsePoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static SparsePoly monomial(std::size_t num_vars, Exponent e, const Rational& c = 1);
  static SparsePoly variable(std::size_t num_vars, std::size_t var);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Rational& c);
  Rational coefficient(const Exponent& e) const;
  Rational constant_term() const { return coefficient(Exponent(num_vars_, 0)); }

  /// Minimum / maximum exponent of `var` over all terms (0 for the zero polynomial).
  int order_in(std::size_t var) const;
  int degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  SparsePoly restrict_zero(std::size_t var) const;
  SparsePoly derivative(std::size_t var) const;
  /// Variable i of the result is variable perm[i] of this polynomial.
  SparsePoly permuted(const std::vector<std::size_t>& perm) const;
  /// Drops variable `var`, which must not occur.
  SparsePoly without_variable(std::size_t var) const;

  Rational evaluate(const std::vector<Rational>& point) const;

  SparsePoly operator-() const;
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const Rational& c, const SparsePoly& a);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) = default;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t num_vars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Dense univariate polynomial, coefficient i multiplies X^i, no trailing zeros.
using UniPoly = std::vector<Rational>;

void trim(UniPoly& p);
int degree(const UniPoly& p);  // -1 for the zero polynomial
UniPoly derivative(const UniPoly& p);
UniPoly remainder(const UniPoly& a, const UniPoly& b);
UniPoly exact_quotient(const UniPoly& a, const UniPoly& b);
UniPoly monic_gcd(UniPoly a, UniPoly b);
Rational evaluate(const UniPoly& p, const Rational& x);

struct RationalRoot {
  Rational value;
  int multiplicity = 0;
};

/// Rational roots with multiplicity (rational root theorem). Sets `complete`
/// to false when coefficients are too large to enumerate candidates.
std::vector<RationalRoot> rational_roots(const UniPoly& p, bool* complete = nullptr);

/// For a polynomial in two variables: true iff it has no repeated factor of
/// positive degree in `main_var`, i.e. its discriminant in `main_var` is not
/// identically zero. Decided exactly by specialising the other variable at
/// more points than the discriminant degree.
bool squarefree_in(const SparsePoly& f, std::size_t main_var);

}  // namespace toricflip
