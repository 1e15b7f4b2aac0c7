#include <functional>
#include <numeric>

#include "doctest.h"
#include "toricflip/blowup.hpp"
#include "toricflip/error.hpp"

using namespace toricflip;

namespace {

long mod(long x, long r) { return ((x % r) + r) % r; }

// Blow-up count predicted by Euclidean descent on (r, a), plus n-descent.
long count_xy_t(long r, long a) {
  if (r <= 1) return 0;
  return 1 + count_xy_t(a, mod(r, a)) + count_xy_t(r - a, mod(r, r - a));
}

long count_binomial(long r, long a, long n) {
  if (r <= 1) return 0;
  return 1 + count_xy_t(a, mod(r, a)) + count_xy_t(r - a, mod(r, r - a)) + (n >= 2 ? count_binomial(r, a, n - 1) : 0);
}

std::vector<GermClass> singular_classes(const BlowupStep& s) {
  std::vector<GermClass> out;
  for (auto k : s.singular_charts()) out.push_back(*s.charts[k].germ_class);
  return out;
}

}  // namespace

TEST_CASE("weighted_blowup of xy = t in 1/5(2, 3, 1, 0)") {
  auto step = weighted_blowup(HypersurfaceGerm::xy_t(5, 2));
  CHECK(step.weights == make_vector({2, 3, 1, 5}));
  CHECK(step.discrepancy == Rational(1, 5));
  CHECK(step.fiber_mult == 1);
  REQUIRE(step.charts.size() == 4);
  CHECK(step.charts[0].origin == OriginKind::Singular);
  CHECK(step.charts[1].origin == OriginKind::Singular);
  CHECK(step.charts[2].origin == OriginKind::Smooth);
  CHECK(step.charts[2].germ_class->case_label == CaseLabel::NormalCrossing);
  CHECK(step.charts[3].origin == OriginKind::Absent);
  auto sing = singular_classes(step);
  REQUIRE(sing.size() == 2);
  CHECK(sing[0] == classify(HypersurfaceGerm(QuotientGerm(2, {1, 1, 1, 0}), HypersurfaceGerm::xy_t(2, 1).equation(), 3,
                                             Family::XyT)));
  CHECK(sing[1] == classify(HypersurfaceGerm(QuotientGerm(3, {2, 1, 1, 0}), HypersurfaceGerm::xy_t(3, 2).equation(), 3,
                                             Family::XyT)));
  // Chart x: xy - t becomes xi_1 - xi_3, and t pulls back to xi_0 xi_3.
  SparsePoly expected(4);
  expected.add_term({0, 1, 0, 0}, 1);
  expected.add_term({0, 0, 0, 1}, -1);
  CHECK(step.charts[0].proper_transform == expected);
  CHECK(step.charts[0].base_monomial == Exponent{1, 0, 0, 1});
  CHECK(step.charts[0].cone.multiplicity() == 2);
}

TEST_CASE("chart claim for xy = t: two quotient points of the predicted type") {
  for (long r = 2; r <= 16; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      auto step = weighted_blowup(HypersurfaceGerm::xy_t(r, a));
      std::vector<std::pair<long, long>> expected;
      if (a > 1) expected.emplace_back(a, mod(r, a));
      if (r - a > 1) expected.emplace_back(r - a, mod(r, r - a));
      std::stable_sort(expected.begin(), expected.end(),
                       [](auto p, auto q) { return p.first < q.first; });
      auto sing = singular_classes(step);
      REQUIRE(sing.size() == expected.size());
      for (std::size_t i = 0; i < sing.size(); ++i)
        CHECK(sing[i] == classify(HypersurfaceGerm::xy_t(expected[i].first, expected[i].second)));
      CHECK(step.discrepancy == Rational(1, r));
      CHECK(step.fiber_mult == 1);
      // Cross-check against the discrepancy of the toric valuation on the 3-fold cover.
      CHECK(step.discrepancy == discrepancy_toric_valuation(QuotientGerm(r, {a, r - a, 1}), make_vector({a, r - a, 1})));
    }
}

TEST_CASE("chart claim for xy = z^r + t^n: the third point lowers n") {
  for (long r = 2; r <= 9; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      for (int n = 1; n <= 5; ++n) {
        auto step = weighted_blowup(HypersurfaceGerm::moderate_binomial(r, a, n));
        std::vector<GermClass> expected;
        if (a > 1) expected.push_back(classify(HypersurfaceGerm::xy_t(a, mod(r, a))));
        if (r - a > 1) expected.push_back(classify(HypersurfaceGerm::xy_t(r - a, mod(r, r - a))));
        std::stable_sort(expected.begin(), expected.end(),
                         [](const GermClass& p, const GermClass& q) { return p.index < q.index; });
        if (n >= 2) expected.push_back(classify(HypersurfaceGerm::moderate_binomial(r, a, n - 1)));
        CHECK(singular_classes(step) == expected);
        CHECK(step.discrepancy == Rational(1, r));
        CHECK(step.fiber_mult == 1);
      }
    }
}

TEST_CASE("weighted_blowup rejects inadmissible input") {
  auto g = HypersurfaceGerm::xy_t(5, 2);
  CHECK_THROWS_AS(weighted_blowup(g, make_vector({1, 1, 1, 5})), DomainError);  // not in N
  CHECK_THROWS_AS(weighted_blowup(g, make_vector({0, 5, 0, 5})), DomainError);  // not positive
  CHECK_THROWS_AS(weighted_blowup(HypersurfaceGerm::xyz_t()), DomainError);
  CHECK_THROWS_AS(weighted_blowup(HypersurfaceGerm::xy_t(1, 0)), DomainError);
}

TEST_CASE("weighted_blowup does not depend on the coordinate labelling") {
  auto g = HypersurfaceGerm::moderate_binomial(7, 3, 3);
  auto h = g.permuted({3, 1, 2, 0});  // x and y trade places in the role order
  CHECK(classify(h).a == 4);
  auto p = singular_classes(weighted_blowup(g));
  auto q = singular_classes(weighted_blowup(h));
  REQUIRE(p.size() == q.size());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(same_up_to_swap(p[i], q[i]));
  // The continuation keeps the orientation of its centre.
  CHECK(q.back() == classify(HypersurfaceGerm::moderate_binomial(7, 4, 2)));
}

TEST_CASE("resolve examples") {
  auto t2 = resolve(HypersurfaceGerm::xy_t(2, 1));
  CHECK(t2.blowup_count() == 1);
  CHECK(t2.root().children.empty());

  auto t5 = resolve(HypersurfaceGerm::xy_t(5, 2));
  CHECK(t5.blowup_count() == 4);
  REQUIRE(t5.root().children.size() == 2);
  CHECK(t5.nodes[t5.root().children[0]].germ_class.index == 2);
  CHECK(t5.nodes[t5.root().children[1]].germ_class.index == 3);

  CHECK(resolve(HypersurfaceGerm::smooth()).blowup_count() == 0);
  CHECK(resolve(HypersurfaceGerm::xyz_t()).blowup_count() == 0);
  CHECK(resolve(HypersurfaceGerm::xy_t(1, 0)).blowup_count() == 0);
}

TEST_CASE("resolve node counts follow Euclidean descent") {
  for (long r = 2; r <= 14; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      CHECK(static_cast<long>(resolve(HypersurfaceGerm::xy_t(r, a)).blowup_count()) == count_xy_t(r, a));
      for (long n = 1; n <= 4; ++n)
        CHECK(static_cast<long>(resolve(HypersurfaceGerm::moderate_binomial(r, a, n)).blowup_count()) ==
              count_binomial(r, a, n));
    }
  CHECK(count_xy_t(5, 2) == 4);
}

TEST_CASE("resolve trees: leaves smooth, steps terminal and semistable, measure decreasing") {
  for (long r = 2; r <= 11; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      auto tree = resolve(HypersurfaceGerm::moderate_binomial(r, a, 3));
      for (const auto& node : tree.nodes) {
        auto m = termination_measure(node.germ);
        for (auto c : node.children) CHECK(termination_measure(tree.nodes[c].germ) < m);
        if (!node.step) continue;
        CHECK(node.step->discrepancy > 0);
        CHECK(node.step->discrepancy == Rational(1, node.germ_class.index));
        CHECK(node.step->fiber_mult == 1);
        CHECK(node.children.size() == node.step->singular_charts().size());
      }
      for (const auto& node : tree.nodes)
        if (node.children.empty() && node.step) {
          for (const auto& ch : node.step->charts) CHECK(ch.origin != OriginKind::Singular);
        }
    }
}

TEST_CASE("resolve accepts a moderate germ with a non-binomial equation") {
  SparsePoly f(2);
  f.add_term({1, 0}, 1);
  f.add_term({1, 1}, 1);
  f.add_term({0, 2}, 1);  // Z (1 + t) + t^2
  auto tree = resolve(HypersurfaceGerm::xy_f(5, 2, f));
  CHECK(static_cast<long>(tree.blowup_count()) == count_binomial(5, 2, 2));
}

TEST_CASE("resolve rejects non-moderate germs") {
  SparsePoly f(2);
  f.add_term({2, 0}, 1);
  f.add_term({0, 3}, -1);
  CHECK_THROWS_AS(resolve(HypersurfaceGerm::xy_f(2, 1, f)), DomainError);
}

TEST_CASE("termination_measure examples") {
  CHECK(termination_measure(HypersurfaceGerm::moderate_binomial(4, 1, 3)) == std::pair<std::int64_t, std::int64_t>{4, 3});
  CHECK(termination_measure(HypersurfaceGerm::xy_t(2, 1)) == std::pair<std::int64_t, std::int64_t>{2, 0});
  CHECK(termination_measure(HypersurfaceGerm::smooth()) == std::pair<std::int64_t, std::int64_t>{1, 0});
}

TEST_CASE("hj_resolve_surface") {
  CHECK(hj_resolve_surface(2, 1).self_intersections == make_vector({-2}));
  CHECK(hj_resolve_surface(5, 2).self_intersections == make_vector({-3, -2}));
  CHECK(determinant(hj_resolve_surface(5, 2).intersection_matrix) == 5);
  for (long n = 1; n <= 8; ++n) CHECK(hj_resolve_surface(n + 1, n).self_intersections == IntVector(n, -2));
  for (long r = 2; r <= 80; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      auto chain = hj_resolve_surface(r, a);
      CHECK(abs(determinant(chain.intersection_matrix)) == r);
      CHECK(is_negative_definite(chain.intersection_matrix));
    }
  CHECK_FALSE(is_negative_definite(IntMatrix{{-1, 2}, {2, -1}}));
}
