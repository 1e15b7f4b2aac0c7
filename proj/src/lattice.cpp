#include "toricflip/lattice.hpp"

#include <algorithm>
#include <utility>

#include "toricflip/error.hpp"

namespace toricflip {

IntVector make_vector(std::initializer_list<long> entries) {
  IntVector v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(std::span<const Integer> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw DomainError("integer " + value.get_str() + " exceeds 64 bits");
  return value.get_si();
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::vector<IntVector> rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("matrix rows have unequal length");
    for (auto& e : r) data_.push_back(std::move(e));
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> v;
  for (auto r : rows) v.push_back(make_vector(r));
  *this = IntMatrix(std::move(v));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer gcd_all(std::span<const Integer> v) {
  if (v.empty()) throw InvalidInput("gcd_all: empty vector");
  Integer g = 0;
  for (const auto& e : v) g = gcd(g, e);
  return g;
}

Integer lcm_all(std::span<const Integer> v) {
  if (v.empty()) throw InvalidInput("lcm_all: empty vector");
  Integer l = 1;
  for (const auto& e : v) {
    if (e == 0) return 0;
    l = lcm(l, e);
  }
  return l;
}

IntVector primitive_part(std::span<const Integer> v) {
  Integer g = gcd_all(v);
  if (g == 0) throw DomainError("primitive_part: zero vector");
  IntVector out(v.begin(), v.end());
  for (auto& e : out) e /= g;
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t SmithForm::rank() const {
  return static_cast<std::size_t>(
      std::count_if(invariants.begin(), invariants.end(), [](const Integer& d) { return d != 0; }));
}

namespace {

// Working state for Smith reduction: a = P m Q, and we keep P^{-1}, Q^{-1}.
struct SmithState {
  IntMatrix a;
  IntMatrix left;   // P^{-1}
  IntMatrix right;  // Q^{-1}

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) += c * a(j, k);
    for (std::size_t k = 0; k < left.rows(); ++k) left(k, j) -= c * left(k, i);
  }
  // col_j += c * col_i
  void add_col(std::size_t j, std::size_t i, const Integer& c) {
    for (std::size_t k = 0; k < a.rows(); ++k) a(k, j) += c * a(k, i);
    for (std::size_t k = 0; k < right.cols(); ++k) right(i, k) -= c * right(j, k);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < left.rows(); ++k) std::swap(left(k, i), left(k, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < right.cols(); ++k) std::swap(right(i, k), right(j, k));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
    for (std::size_t k = 0; k < left.rows(); ++k) left(k, i) = -left(k, i);
  }
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithState s{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s.a(i, j) != 0 && (!found || abs(s.a(i, j)) < abs(s.a(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) break;
      s.swap_rows(t, pi);
      s.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.a(i, t) == 0) continue;
        s.add_row(i, t, -floor_div(s.a(i, t), s.a(t, t)));
        if (s.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.a(t, j) == 0) continue;
        s.add_col(j, t, -floor_div(s.a(t, j), s.a(t, t)));
        if (s.a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and repeat.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s.a(i, j) % s.a(t, t) != 0) {
            s.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (s.a(t, t) < 0) s.negate_row(t);
  }

  SmithForm out;
  out.invariants.resize(diag);
  for (std::size_t t = 0; t < diag; ++t) out.invariants[t] = s.a(t, t);
  out.left = std::move(s.left);
  out.right = std::move(s.right);
  return out;
}

IntMatrix row_hermite_basis(const IntMatrix& generators) {
  const std::size_t n = generators.cols();
  IntMatrix a = generators;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    // Euclid on column `col` among rows >= row.
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t i = row; i < a.rows(); ++i)
        if (a(i, col) != 0 && (best == a.rows() || abs(a(i, col)) < abs(a(best, col)))) best = i;
      if (best == a.rows()) throw DomainError("row_hermite_basis: lattice is not of full rank");
      if (best != row)
        for (std::size_t k = 0; k < n; ++k) std::swap(a(row, k), a(best, k));
      bool done = true;
      for (std::size_t i = row + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        Integer q = floor_div(a(i, col), a(row, col));
        for (std::size_t k = 0; k < n; ++k) a(i, k) -= q * a(row, k);
        if (a(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (a(row, col) < 0)
      for (std::size_t k = 0; k < n; ++k) a(row, k) = -a(row, k);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(a(i, col), a(row, col));
      for (std::size_t k = 0; k < n; ++k) a(i, k) -= q * a(row, k);
    }
    ++row;
  }
  IntMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = a(i, j);
  return basis;
}

RatVector solve_left(const IntMatrix& basis, std::span<const Rational> v) {
  const std::size_t n = basis.rows();
  if (basis.cols() != n || v.size() != n) throw InvalidInput("solve_left: dimension mismatch");
  // Solve basis^T x^T = v^T by Gauss-Jordan on the augmented matrix.
  std::vector<RatVector> aug(n, RatVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = basis(j, i);
    aug[i][n] = v[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug[p][c] == 0) ++p;
    if (p == n) throw DomainError("solve_left: singular basis");
    std::swap(aug[c], aug[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      Rational f = aug[i][c] / aug[c][c];
      for (std::size_t k = c; k <= n; ++k) aug[i][k] -= f * aug[c][k];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

RatVector solve_left(const IntMatrix& basis, std::span<const Integer> v) {
  RatVector q(v.begin(), v.end());
  return solve_left(basis, q);
}

std::vector<Integer> hj_continued_fraction(const Integer& r, const Integer& a) {
  if (!(a > 0 && a < r)) throw DomainError("hj_continued_fraction: need 0 < a < r");
  if (gcd(a, r) != 1) throw DomainError("hj_continued_fraction: gcd(a, r) != 1");
  std::vector<Integer> out;
  Integer num = r, den = a;
  while (den != 0) {
    Integer b;
    mpz_cdiv_q(b.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(b);
    Integer next = b * den - num;
    num = den;
    den = next;
  }
  return out;
}

Rational hj_expand(std::span<const Integer> b) {
  if (b.empty()) throw InvalidInput("hj_expand: empty continued fraction");
  Rational acc = b.back();
  for (std::size_t i = b.size() - 1; i-- > 0;) acc = Rational(b[i]) - 1 / acc;
  return acc;
}

}  // namespace toricflip
