#include "toricflip/reduction.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "toricflip/error.hpp"

namespace toricflip {

namespace {

void check_curve_conditions(const SparsePoly& f) {
  if (f.num_vars() != 2) throw InvalidInput("f must be a polynomial in (Z, t)");
  if (f.constant_term() != 0) throw DomainError("f(0, 0) must vanish");
  if (f.restrict_zero(0).is_zero()) throw SideConditionError("f(0, t) = 0");
  if (f.restrict_zero(1).is_zero()) throw SideConditionError("f(Z, 0) = 0");
  if (!squarefree_in(f, 0)) throw SideConditionError("f(Z, t) has a repeated factor: not an isolated curve singularity");
}

// Cross product of (b - a) and (c - a).
long cross(std::pair<int, int> a, std::pair<int, int> b, std::pair<int, int> c) {
  return static_cast<long>(b.first - a.first) * (c.second - a.second) -
         static_cast<long>(b.second - a.second) * (c.first - a.first);
}

}  // namespace

NewtonData newton_polygon(const SparsePoly& f) {
  check_curve_conditions(f);
  const int m = f.restrict_zero(0).order_in(1);
  const int k = f.restrict_zero(1).order_in(0);
  std::map<int, int> lowest;  // Z-exponent -> least t-exponent
  for (const auto& [e, c] : f.terms()) {
    if (e[0] > k) continue;
    auto it = lowest.find(e[0]);
    if (it == lowest.end() || e[1] < it->second) lowest[e[0]] = e[1];
  }
  std::vector<std::pair<int, int>> hull;
  for (const auto& p : lowest) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  if (hull.front() != std::make_pair(0, m) || hull.back() != std::make_pair(k, 0))
    throw InternalError("Newton polygon does not join the two axes");

  NewtonData data;
  data.f = f;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    NewtonSegment seg;
    std::tie(seg.i1, seg.j1) = hull[s];
    std::tie(seg.i2, seg.j2) = hull[s + 1];
    seg.root_count = seg.i2 - seg.i1;
    seg.lattice_length = std::gcd(seg.i2 - seg.i1, seg.j1 - seg.j2);
    seg.slope = Rational(seg.j1 - seg.j2, seg.i2 - seg.i1);
    seg.slope.canonicalize();
    // Face polynomial sum a_ij c^(i - i1) over the support points on the edge.
    UniPoly face(static_cast<std::size_t>(seg.root_count) + 1);
    for (const auto& [e, c] : f.terms()) {
      if (e[0] < seg.i1 || e[0] > seg.i2) continue;
      if (Rational(e[1]) + seg.slope * e[0] == Rational(seg.j1) + seg.slope * seg.i1) face[e[0] - seg.i1] += c;
    }
    bool complete = true;
    for (const auto& root : rational_roots(face, &complete))
      if (root.value != 0) seg.face_roots.push_back(root);
    int found = 0;
    for (const auto& root : seg.face_roots) found += root.multiplicity;
    seg.face_split = complete && found == seg.root_count;
    data.lower_hull.push_back(std::move(seg));
  }
  return data;
}

BranchOrders branch_orders(const SparsePoly& f) {
  BranchOrders out;
  out.newton = newton_polygon(f);
  out.d = 1;
  for (const auto& seg : out.newton.lower_hull) out.d = lcm(out.d, Integer(seg.slope.get_den()));
  for (const auto& seg : out.newton.lower_hull) {
    Rational order = seg.slope * out.d;
    if (order.get_den() != 1) throw InternalError("branch order is not integral");
    for (int i = 0; i < seg.root_count; ++i) out.orders.push_back(order.get_num());
  }
  std::sort(out.orders.begin(), out.orders.end());
  return out;
}

namespace {

void check_base_change(const Integer& d, const std::vector<Integer>& n) {
  if (d < 1) throw InvalidInput("base change degree must be positive");
  if (n.empty()) throw InvalidInput("need at least one multiplicity");
  for (const auto& x : n)
    if (x < 1) throw InvalidInput("multiplicities must be positive");
}

IntMatrix relation_row(const Integer& d, const std::vector<Integer>& n) {
  IntMatrix relation(1, n.size() + 1);
  for (std::size_t i = 0; i < n.size(); ++i) relation(0, i) = n[i];
  relation(0, n.size()) = -d;
  return relation;
}

}  // namespace

Integer component_count(const Integer& d, const std::vector<Integer>& n) {
  check_base_change(d, n);
  return abs(smith_normal_form(relation_row(d, n)).invariants.at(0));
}

NormalizationResult normalization_components(const Integer& d, const std::vector<Integer>& n) {
  check_base_change(d, n);
  const std::size_t k = n.size();

  NormalizationResult res;
  res.d = d;
  res.n = n;
  // Character lattice Z^{k+1} / (n_1, ..., n_k, -d): its torsion counts components.
  SmithForm snf = smith_normal_form(relation_row(d, n));
  res.components = abs(snf.invariants.at(0));

  // The cocharacters (v, w) with sum n_i v_i = d w are right^{-1} applied to
  // vectors with vanishing first coordinate.
  std::vector<IntVector> inverse_rows;
  for (std::size_t i = 0; i <= k; ++i) {
    IntVector e(k + 1, 0);
    e[i] = 1;
    IntVector row;
    for (const auto& q : solve_left(snf.right, e)) {
      if (q.get_den() != 1) throw InternalError("Smith transform is not unimodular");
      row.push_back(q.get_num());
    }
    inverse_rows.push_back(std::move(row));
  }

  IntVector m(k);
  Integer D = 1;
  for (std::size_t i = 0; i < k; ++i) {
    m[i] = d / gcd(d, n[i]);
    D = lcm(D, m[i]);
  }
  std::vector<IntVector> generators;
  for (std::size_t c = 1; c <= k; ++c) {
    IntVector g(k);
    for (std::size_t i = 0; i < k; ++i) g[i] = inverse_rows[i][c] * (D / m[i]);  // ray coordinate v_i / m_i, over D
    generators.push_back(std::move(g));
  }
  res.cone = LatticeCone::orthant(k, D, generators);
  for (std::size_t i = 0; i < k; ++i) {
    if (res.cone.rays()[i][i] != D) throw InternalError("normalisation ray is not m_i e_i");
    res.u_height.push_back(n[i] / gcd(d, n[i]));
  }

  res.formula_cone = LatticeCone::orthant(k, d, {n});
  GroupAction ours = res.cone.group_action();
  GroupAction quoted = res.formula_cone.group_action();
  res.matches_formula = ours.modulus == quoted.modulus && ours.elements == quoted.elements;
  return res;
}

Triangulation semistable_resolve_component(const LatticeCone& c, std::span<const Integer> u_height) {
  return unimodular_triangulate_reduced_fiber(c, u_height);
}

ReductionPlan moderate_model(const HypersurfaceGerm& g) {
  ReductionPlan plan;
  plan.source = g;
  plan.source_class = classify(g);
  const GermClass& c = plan.source_class;
  if (c.case_label != CaseLabel::CurveXyF || !c.f)
    throw DomainError("moderate_model needs a germ of case 2.7.3.1, got " + c.summary());
  plan.branches = branch_orders(*c.f);
  for (const auto& order : plan.branches.orders)
    plan.moderate_germs.push_back(
        HypersurfaceGerm::moderate_binomial(c.index, *c.a, static_cast<int>(to_int64(order)), 1, -1));
  plan.normalization = normalization_components(plan.branches.d, plan.branches.orders);
  plan.d_eff = plan.branches.d;
  for (const auto& order : plan.branches.orders) plan.d_eff = lcm(plan.d_eff, order);
  // Lattice polygons always admit unimodular triangulations; higher simplices need not.
  if (plan.branches.orders.size() <= 3) {
    plan.reduced = normalization_components(plan.d_eff, plan.branches.orders);
    plan.triangulation = semistable_resolve_component(plan.reduced->cone, plan.reduced->u_height);
    plan.certificate = certify_reduced_fiber(*plan.triangulation, plan.reduced->u_height);
  }
  return plan;
}

}  // namespace toricflip
