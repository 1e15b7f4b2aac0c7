#include <algorithm>
#include <random>

#include "doctest.h"
#include "toricflip/error.hpp"
#include "toricflip/lattice.hpp"

using namespace toricflip;

TEST_CASE("gcd_all examples") {
  CHECK(gcd_all(make_vector({6, 2, 4})) == 2);
  CHECK(gcd_all(make_vector({12, 18, 30})) == 6);
  for (long k : {-7L, 0L, 1L, 30L, 1000003L}) CHECK(gcd_all(make_vector({1, k})) == 1);
  CHECK(gcd_all(make_vector({0, 0})) == 0);
  CHECK_THROWS_AS(gcd_all(IntVector{}), InvalidInput);
}

TEST_CASE("gcd_all is invariant under permutation and sign flips") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-60, 60);
  for (int trial = 0; trial < 200; ++trial) {
    IntVector v;
    for (int i = 0; i < 4; ++i) v.emplace_back(dist(rng));
    Integer g = gcd_all(v);
    IntVector w = v;
    std::shuffle(w.begin(), w.end(), rng);
    for (auto& e : w)
      if (rng() % 2) e = -e;
    CHECK(gcd_all(w) == g);
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{2, 4}, {6, 8}}) == -8);
  CHECK(determinant(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 5}}) == -5);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

namespace {

IntMatrix diagonal_of(const SmithForm& s, std::size_t rows, std::size_t cols) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < s.invariants.size(); ++i) d(i, i) = s.invariants[i];
  return d;
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
  auto id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.invariants == make_vector({1, 1}));

  auto diag = smith_normal_form(IntMatrix{{2, 0}, {0, 4}});
  CHECK(diag.invariants == make_vector({2, 4}));

  IntMatrix m{{2, 4}, {6, 8}};
  auto s = smith_normal_form(m);
  CHECK(s.invariants == make_vector({2, 4}));
  CHECK(s.left * diagonal_of(s, 2, 2) * s.right == m);

  // A single relation row: the character lattice of u^6 = z1^2 z2^4.
  IntMatrix rel{{2, 4, -6}};
  auto r = smith_normal_form(rel);
  CHECK(r.invariants == make_vector({2}));
  CHECK(r.rank() == 1);
}

TEST_CASE("smith_normal_form reconstructs random matrices with unimodular transforms") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = dim(rng), cols = dim(rng);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
    auto s = smith_normal_form(m);
    REQUIRE(s.left * diagonal_of(s, rows, cols) * s.right == m);
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
    for (std::size_t i = 0; i + 1 < s.invariants.size(); ++i) {
      CHECK(s.invariants[i] >= 0);
      if (s.invariants[i] == 0) {
        CHECK(s.invariants[i + 1] == 0);
      } else {
        CHECK(s.invariants[i + 1] % s.invariants[i] == 0);
      }
    }
  }
}

TEST_CASE("row_hermite_basis spans the generated lattice") {
  IntMatrix gens{{3, 0}, {0, 3}, {1, 2}};
  IntMatrix b = row_hermite_basis(gens);
  CHECK(abs(determinant(b)) == 3);
  for (std::size_t i = 0; i < gens.rows(); ++i) {
    auto x = solve_left(b, gens.row(i));
    for (const auto& c : x) CHECK(c.get_den() == 1);
  }
  CHECK_THROWS_AS(row_hermite_basis(IntMatrix{{1, 1}, {2, 2}}), DomainError);
}

namespace {

// Lower convex hull of the lattice points of the cone of 1/r(1, a), walked from
// the ray e_2 to the ray e_1; b_i from v_{i-1} + v_{i+1} = b_i v_i.
std::vector<Integer> hull_chain(long r, long a) {
  std::vector<std::pair<long, long>> pts{{0, r}, {r, 0}};
  for (long j = 1; j < r; ++j) pts.emplace_back(j, (j * a) % r);
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<long, long>> hull;
  for (auto p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      long cross = (x2 - x1) * (p.second - y1) - (y2 - y1) * (p.first - x1);
      if (cross < 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<Integer> b;
  for (std::size_t i = 1; i + 1 < hull.size(); ++i)
    b.emplace_back((hull[i - 1].first + hull[i + 1].first) / hull[i].first);
  return b;
}

}  // namespace

TEST_CASE("hj_continued_fraction examples against the lattice-point hull") {
  CHECK(hj_continued_fraction(2, 1) == make_vector({2}));
  CHECK(hull_chain(2, 1) == make_vector({2}));
  CHECK(hj_continued_fraction(5, 2) == make_vector({3, 2}));
  CHECK(hull_chain(5, 2) == make_vector({3, 2}));
  for (long r = 2; r <= 10; ++r) {
    auto b = hj_continued_fraction(r, r - 1);
    CHECK(b.size() == static_cast<std::size_t>(r - 1));
    CHECK(std::all_of(b.begin(), b.end(), [](const Integer& x) { return x == 2; }));
  }
  for (long r = 2; r <= 40; ++r)
    for (long a = 1; a < r; ++a)
      if (std::gcd(a, r) == 1) CHECK(hj_continued_fraction(r, a) == hull_chain(r, a));
}

TEST_CASE("hj_continued_fraction reconstructs r/a for r <= 200") {
  for (long r = 2; r <= 200; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      auto b = hj_continued_fraction(r, a);
      CHECK(std::all_of(b.begin(), b.end(), [](const Integer& x) { return x >= 2; }));
      CHECK(hj_expand(b) == Rational(r, a));
    }
}

TEST_CASE("hj_continued_fraction rejects bad input") {
  CHECK_THROWS_AS(hj_continued_fraction(6, 4), DomainError);
  CHECK_THROWS_AS(hj_continued_fraction(5, 5), DomainError);
  CHECK_THROWS_AS(hj_continued_fraction(5, 0), DomainError);
}
