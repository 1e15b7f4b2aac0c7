#include "toricflip/blowup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "toricflip/error.hpp"

namespace toricflip {

namespace {

Integer as_integer(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw InternalError(std::string(what) + " is not integral: " + to_string(q));
  return q.get_num();
}

Rational pairing(const Exponent& alpha, const IntVector& numerator, std::int64_t denominator) {
  Integer s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += numerator[i] * alpha[i];
  Rational q(s, Integer(static_cast<long>(denominator)));
  q.canonicalize();
  return q;
}

QuotientGerm chart_group(const LatticeCone& cone) {
  GroupAction action = cone.group_action();
  auto gen = action.cyclic_generator();
  if (!gen) throw UnsupportedGerm("chart group is not cyclic");
  return QuotientGerm(action.modulus, *gen);
}

}  // namespace

std::vector<std::size_t> BlowupStep::singular_charts() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < charts.size(); ++k)
    if (charts[k].origin == OriginKind::Singular) out.push_back(k);
  std::stable_sort(out.begin(), out.end(), [&](std::size_t p, std::size_t q) {
    return charts[p].germ_class->index < charts[q].germ_class->index;
  });
  return out;
}

IntVector canonical_weights(const HypersurfaceGerm& g) {
  GermClass c = classify(g);
  const bool blowable = c.index > 1 && c.moderate &&
                        (*c.moderate == ModerateLabel::XyT || *c.moderate == ModerateLabel::XyZrTn);
  if (!blowable) throw DomainError("canonical weights need a 3.4.2 or 3.4.3 germ of index > 1, got " + c.summary());
  auto roles = xy_roles(g);
  if (!roles) throw InternalError("moderate germ without xy roles");
  const long r = static_cast<long>(c.index), a = static_cast<long>(*c.a);
  IntVector v(4);
  v[roles->x] = a;
  v[roles->y] = r - a;
  v[roles->z] = 1;
  v[roles->t] = r;
  return v;
}

void identify_chart_origin(Chart& chart, std::optional<std::size_t> x_hint) {
  const SparsePoly& F = chart.proper_transform;
  chart.germ.reset();
  chart.germ_class.reset();
  if (F.constant_term() != 0) {
    chart.origin = OriginKind::Absent;
    return;
  }

  // Solve for a coordinate that occurs only in a linear term.
  for (std::size_t j = 0; j < 4; ++j) {
    Exponent ej(4, 0);
    ej[j] = 1;
    const Rational c = F.coefficient(ej);
    if (c == 0 || F.degree_in(j) != 1) continue;
    bool only_linear = true;
    for (const auto& [e, coef] : F.terms())
      if (e != ej && e[j] != 0) only_linear = false;
    if (!only_linear) continue;
    SparsePoly rest = F - SparsePoly::monomial(4, ej, c);
    Exponent base = chart.base_monomial;
    if (base[j] != 0) {
      if (rest.size() != 1) continue;  // base would stop being a monomial
      const Exponent& sub = rest.terms().begin()->first;
      for (std::size_t i = 0; i < 4; ++i) base[i] += base[j] * sub[i];
      base[j] = 0;
    }
    std::vector<std::size_t> support, free;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == j) continue;
      if (base[i] > 1) throw UnsupportedGerm("chart fibre is not reduced");
      (base[i] ? support : free).push_back(i);
    }
    const QuotientGerm& G = chart.group;
    if (support.size() == 3) {
      if (G.without(j).order() != 1) throw UnsupportedGerm("xyz = t chart point with nontrivial group");
      chart.germ = HypersurfaceGerm::xyz_t();
    } else if (support.size() == 2) {
      // The non-exceptional coordinate plays x, the exceptional one y.
      std::size_t x = support[0], y = support[1];
      if (x == chart.exceptional) std::swap(x, y);
      const std::size_t z = free.at(0);
      QuotientGerm amb(G.order(), {G.weights()[x], G.weights()[y], G.weights()[z], 0});
      if (amb.order() > 1) amb = amb.normalized_by(2);
      SparsePoly xy_t(4);
      xy_t.add_term({1, 1, 0, 0}, 1);
      xy_t.add_term({0, 0, 0, 1}, -1);
      chart.germ = HypersurfaceGerm(amb, xy_t, 3, Family::XyT);
    } else if (support.size() == 1) {
      if (G.without(j).order() != 1) throw UnsupportedGerm("chart point is a quotient of a smooth fibre");
      chart.germ = HypersurfaceGerm::smooth();
    } else {
      throw InternalError("base parameter is a unit at a chart origin");
    }
    chart.germ_class = classify(*chart.germ);
    chart.origin = chart.germ_class->case_label == CaseLabel::Smooth ||
                           chart.germ_class->case_label == CaseLabel::NormalCrossing
                       ? OriginKind::Smooth
                       : OriginKind::Singular;
    return;
  }

  // Otherwise the base must be one coordinate and the equation xy = f(z^r, t).
  std::size_t b = 4;
  for (std::size_t i = 0; i < 4; ++i) {
    if (chart.base_monomial[i] == 1 && b == 4) {
      b = i;
    } else if (chart.base_monomial[i] != 0) {
      throw UnsupportedGerm("chart point of unsupported shape: base is not a coordinate");
    }
  }
  if (b == 4) throw InternalError("base parameter is a unit at a chart origin");
  HypersurfaceGerm raw(chart.group, F, b, Family::XyFZrT);
  auto roles = xy_roles(raw);
  if (!roles) throw UnsupportedGerm("chart equation " + F.to_string({}) + " is not of the form xy = f(z^r, t)");
  if (x_hint && *x_hint == roles->y) std::swap(roles->x, roles->y);
  std::vector<std::size_t> perm{roles->x, roles->y, roles->z, roles->t};
  HypersurfaceGerm oriented = raw.permuted(perm);
  if (oriented.ambient().order() > 1)
    oriented = HypersurfaceGerm(oriented.ambient().normalized_by(2), oriented.equation(), 3, Family::XyFZrT);
  GermClass cls = classify(oriented);
  chart.germ_class = cls;
  if (cls.case_label == CaseLabel::Smooth) {
    chart.origin = OriginKind::Smooth;
    chart.germ = HypersurfaceGerm::smooth();
    return;
  }
  chart.origin = OriginKind::Singular;
  chart.germ = is_moderate(cls) ? moderate_normal_form(cls) : oriented;
}

BlowupStep weighted_blowup(const HypersurfaceGerm& g, const std::optional<IntVector>& weights) {
  BlowupStep step;
  step.center = g;
  step.center_class = classify(g);
  step.denominator = g.ambient().order();
  step.weights = weights ? *weights : canonical_weights(g);
  const IntVector& v = step.weights;
  if (v.size() != 4) throw InvalidInput("weight vector must have 4 entries");
  for (const auto& x : v)
    if (x <= 0) throw DomainError("inadmissible weights " + to_string(v) + ": entries must be positive");
  LatticeCone cone = g.ambient().cone();
  if (!cone.contains_lattice_point(v) || !cone.is_primitive(v))
    throw DomainError("inadmissible weights " + to_string(v) + ": not a primitive vector of N");

  const SparsePoly& F = g.equation();
  bool first = true;
  for (const auto& [alpha, c] : F.terms()) {
    Rational w = pairing(alpha, v, step.denominator);
    if (first || w < step.equation_weight) step.equation_weight = w;
    first = false;
  }

  Rational weight_sum = 0;
  for (const auto& x : v) weight_sum += Rational(x, Integer(static_cast<long>(step.denominator)));
  weight_sum.canonicalize();
  step.discrepancy = weight_sum - step.equation_weight - 1;
  Exponent base_exp(4, 0);
  base_exp[g.base_var()] = 1;
  step.fiber_mult = as_integer(pairing(base_exp, v, step.denominator), "fibre multiplicity");

  const auto center_roles = xy_roles(g);
  auto children = star_subdivide(cone, v);
  if (children.size() != 4) throw InternalError("weighted blow-up must have 4 charts");
  for (std::size_t k = 0; k < 4; ++k) {
    Chart chart;
    chart.exceptional = k;
    chart.cone = children[k];
    chart.group = chart_group(chart.cone);
    const auto& rays = chart.cone.rays();
    chart.proper_transform = SparsePoly(4);
    for (const auto& [alpha, coef] : F.terms()) {
      Exponent e(4);
      for (std::size_t j = 0; j < 4; ++j) {
        Rational x = pairing(alpha, rays[j], step.denominator);
        if (j == k) x -= step.equation_weight;
        e[j] = static_cast<int>(to_int64(as_integer(x, "chart exponent")));
      }
      chart.proper_transform.add_term(e, coef);
    }
    chart.base_monomial.assign(4, 0);
    for (std::size_t j = 0; j < 4; ++j)
      chart.base_monomial[j] =
          static_cast<int>(to_int64(as_integer(pairing(base_exp, rays[j], step.denominator), "base exponent")));
    identify_chart_origin(chart, center_roles ? std::optional<std::size_t>(center_roles->x) : std::nullopt);
    step.charts.push_back(std::move(chart));
  }
  return step;
}

std::size_t ResolutionTree::blowup_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const ResolutionNode& n) { return n.step != nullptr; }));
}

namespace {

bool needs_blowup(const GermClass& c) {
  return c.index > 1 && c.moderate && *c.moderate != ModerateLabel::XyzT;
}

}  // namespace

namespace {

// Normal forms recur within and across trees (the n-descent repeats every
// quotient subtree), so their blow-ups are shared. Bounded; cleared when full.
std::shared_ptr<const BlowupStep> normal_form_step(const HypersurfaceGerm& germ) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const BlowupStep>> cache;
  const std::string key = std::string(family_name(germ.family())) + " " + germ.ambient().to_string() + " " +
                          germ.equation_string() + " " + std::to_string(germ.base_var());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto step = std::make_shared<const BlowupStep>(weighted_blowup(germ));
  std::lock_guard lock(mutex);
  if (cache.size() >= 4096) cache.clear();
  cache.emplace(key, step);
  return step;
}

}  // namespace

ResolutionTree resolve(const HypersurfaceGerm& g) {
  GermClass root_class = classify(g);
  if (!is_moderate(root_class))
    throw DomainError("resolve needs a moderate germ (got " + root_class.summary() + "); apply moderate_model first");
  ResolutionTree tree;
  std::function<void(const HypersurfaceGerm&, const GermClass&, std::size_t)> visit =
      [&](const HypersurfaceGerm& germ, const GermClass& cls, std::size_t depth) {
        const std::size_t id = tree.nodes.size();
        tree.nodes.push_back({germ, cls, nullptr, {}, depth});
        if (!needs_blowup(cls)) return;
        // Blow up the normal form; the original coordinates only matter at the root.
        std::shared_ptr<const BlowupStep> step = normal_form_step(germ);
        for (std::size_t k : step->singular_charts()) {
          const Chart& ch = step->charts[k];
          if (!is_moderate(*ch.germ_class)) throw InternalError("non-moderate chart point during resolution");
          tree.nodes[id].children.push_back(tree.nodes.size());
          visit(moderate_normal_form(*ch.germ_class), *ch.germ_class, depth + 1);
        }
        tree.nodes[id].step = std::move(step);
      };
  const bool normal = g.family() == Family::XyT || g.family() == Family::ModerateBinomial;
  visit(normal || !needs_blowup(root_class) ? g : moderate_normal_form(root_class), root_class, 0);
  return tree;
}

std::pair<std::int64_t, std::int64_t> termination_measure(const HypersurfaceGerm& g) {
  GermClass c = classify(g);
  if (!is_moderate(c)) throw DomainError("termination_measure needs a moderate germ");
  return {c.index, c.n && c.moderate == ModerateLabel::XyZrTn ? *c.n : 0};
}

SurfaceChain hj_resolve_surface(std::int64_t r, std::int64_t a) {
  IntVector b = hj_continued_fraction(Integer(static_cast<long>(r)), Integer(static_cast<long>(a)));
  SurfaceChain chain;
  const std::size_t k = b.size();
  chain.intersection_matrix = IntMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    chain.self_intersections.push_back(-b[i]);
    chain.intersection_matrix(i, i) = -b[i];
    if (i + 1 < k) chain.intersection_matrix(i, i + 1) = chain.intersection_matrix(i + 1, i) = 1;
  }
  return chain;
}

bool is_negative_definite(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("is_negative_definite needs a square matrix");
  // Bareiss elimination without pivoting: after step k the pivot is the
  // leading principal minor of size k + 1.
  const std::size_t n = m.rows();
  IntMatrix a = m;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Integer& minor = a(k, k);
    if (k % 2 == 0 ? minor >= 0 : minor <= 0) return false;
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
  return true;
}

}  // namespace toricflip
