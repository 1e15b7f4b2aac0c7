#include "toricflip/germs.hpp"

#include <algorithm>
#include <numeric>

#include "toricflip/error.hpp"

namespace toricflip {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t r) {
  std::int64_t m = x % r;
  return m < 0 ? m + r : m;
}

std::optional<std::int64_t> inverse_mod(std::int64_t x, std::int64_t r) {
  x = mod(x, r);
  for (std::int64_t u = 1; u < r; ++u)
    if (mod(x * u, r) == 1) return u;
  if (r == 1) return 0;
  return std::nullopt;
}

Exponent unit(std::size_t i, std::size_t n = 4) {
  Exponent e(n, 0);
  e[i] = 1;
  return e;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool has_linear_term(const SparsePoly& p) {
  return std::any_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return total_degree(t.first) == 1; });
}

std::vector<std::size_t> non_base(std::size_t base) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != base) out.push_back(i);
  return out;
}

const std::vector<std::string>& coordinate_names() {
  static const std::vector<std::string> names{"x", "y", "z", "t"};
  return names;
}

}  // namespace

QuotientGerm::QuotientGerm(std::int64_t r, std::vector<std::int64_t> weights) {
  if (r < 1) throw InvalidInput("quotient order must be positive");
  if (weights.empty()) throw InvalidInput("quotient germ needs at least one coordinate");
  std::int64_t g = r;
  for (auto& w : weights) {
    w = mod(w, r);
    g = std::gcd(g, w);
  }
  r_ = r / g;
  for (auto& w : weights) w /= g;
  weights_ = std::move(weights);
}

bool QuotientGerm::is_isolated() const {
  return std::all_of(weights_.begin(), weights_.end(), [&](std::int64_t w) { return std::gcd(w, r_) == 1; });
}

QuotientGerm QuotientGerm::normalized_by(std::size_t coord) const {
  auto u = inverse_mod(weights_.at(coord), r_);
  if (!u) throw DomainError("weight of coordinate " + std::to_string(coord) + " is not prime to " + std::to_string(r_));
  std::vector<std::int64_t> w = weights_;
  for (auto& x : w) x = mod(x * *u, r_);
  return QuotientGerm(r_, std::move(w));
}

QuotientGerm QuotientGerm::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != weights_.size()) throw InvalidInput("permutation has wrong length");
  std::vector<std::int64_t> w(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) w[i] = weights_.at(perm[i]);
  return QuotientGerm(r_, std::move(w));
}

QuotientGerm QuotientGerm::without(std::size_t coord) const {
  std::vector<std::int64_t> w = weights_;
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(coord));
  return QuotientGerm(r_, std::move(w));
}

LatticeCone QuotientGerm::cone() const {
  IntVector g;
  for (auto w : weights_) g.emplace_back(static_cast<long>(w));
  return LatticeCone::orthant(weights_.size(), Integer(static_cast<long>(r_)), {g});
}

std::string QuotientGerm::to_string() const {
  std::string s = "1/" + std::to_string(r_) + "(";
  for (std::size_t i = 0; i < weights_.size(); ++i) s += (i ? ", " : "") + std::to_string(weights_[i]);
  return s + ")";
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::XyzT: return "xyz_t";
    case Family::XyT: return "xy_t";
    case Family::XyFZrT: return "xy_f_zr_t";
    case Family::GorensteinGT: return "gorenstein_gt";
    case Family::Smooth: return "smooth";
    case Family::ModerateBinomial: return "moderate_binomial";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::XyzT, Family::XyT, Family::XyFZrT, Family::GorensteinGT, Family::Smooth,
                   Family::ModerateBinomial})
    if (family_name(f) == name) return f;
  throw InvalidInput("unknown family '" + std::string(name) + "'");
}

HypersurfaceGerm::HypersurfaceGerm(QuotientGerm ambient, SparsePoly equation, std::size_t base_var, Family family)
    : ambient_(std::move(ambient)), equation_(std::move(equation)), base_var_(base_var), family_(family) {
  if (ambient_.dim() != 4) throw InvalidInput("hypersurface germs live in a 4-dimensional quotient");
  if (equation_.num_vars() != 4) throw InvalidInput("equation must be in 4 variables");
  if (base_var_ >= 4) throw InvalidInput("base_var must be 0..3");
  if (equation_.is_zero()) throw InvalidInput("equation is zero");
  if (equation_.constant_term() != 0) throw DomainError("germ does not pass through the origin");
  const std::int64_t r = ambient_.order();
  if (ambient_.weights()[base_var_] != 0) throw DomainError("base coordinate must be invariant");
  std::optional<std::int64_t> character;
  for (const auto& [e, c] : equation_.terms()) {
    std::int64_t ch = 0;
    for (std::size_t i = 0; i < 4; ++i) ch = mod(ch + e[i] * ambient_.weights()[i], r);
    if (character && *character != ch) throw DomainError("equation is not semi-invariant under " + ambient_.to_string());
    character = ch;
  }
}

HypersurfaceGerm HypersurfaceGerm::xyz_t() {
  SparsePoly F(4);
  F.add_term({1, 1, 1, 0}, 1);
  F.add_term(unit(3), -1);
  return HypersurfaceGerm(QuotientGerm::smooth(4), F, 3, Family::XyzT);
}

namespace {

QuotientGerm standard_ambient(std::int64_t r, std::int64_t a) {
  if (r < 1) throw InvalidInput("r must be positive");
  if (r > 1 && (a <= 0 || a >= r || std::gcd(a, r) != 1))
    throw DomainError("need 0 < a < r with gcd(a, r) = 1, got r=" + std::to_string(r) + " a=" + std::to_string(a));
  return QuotientGerm(r, {a, r - a, 1, 0});
}

}  // namespace

HypersurfaceGerm HypersurfaceGerm::xy_t(std::int64_t r, std::int64_t a) {
  SparsePoly F(4);
  F.add_term({1, 1, 0, 0}, 1);
  F.add_term(unit(3), -1);
  return HypersurfaceGerm(standard_ambient(r, a), F, 3, Family::XyT);
}

HypersurfaceGerm HypersurfaceGerm::moderate_binomial(std::int64_t r, std::int64_t a, int n, const Rational& c_z,
                                                     const Rational& c_t) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (c_z == 0 || c_t == 0) throw InvalidInput("binomial coefficients must be nonzero");
  SparsePoly F(4);
  F.add_term({1, 1, 0, 0}, 1);
  F.add_term({0, 0, static_cast<int>(r), 0}, -c_z);
  F.add_term({0, 0, 0, n}, -c_t);
  return HypersurfaceGerm(standard_ambient(r, a), F, 3, Family::ModerateBinomial);
}

HypersurfaceGerm HypersurfaceGerm::xy_f(std::int64_t r, std::int64_t a, const SparsePoly& f) {
  if (f.num_vars() != 2) throw InvalidInput("f must be a polynomial in (Z, t)");
  SparsePoly F(4);
  F.add_term({1, 1, 0, 0}, 1);
  for (const auto& [e, c] : f.terms()) F.add_term({0, 0, static_cast<int>(r) * e[0], e[1]}, -c);
  return HypersurfaceGerm(standard_ambient(r, a), F, 3, Family::XyFZrT);
}

HypersurfaceGerm HypersurfaceGerm::gorenstein(const SparsePoly& g, const SparsePoly& f) {
  if (g.num_vars() != 4 || f.num_vars() != 4) throw InvalidInput("g and f must be polynomials in (x, y, z, t)");
  if (g.involves(3)) throw InvalidInput("g must not involve t");
  SparsePoly F = g - SparsePoly::variable(4, 3) * f;
  return HypersurfaceGerm(QuotientGerm::smooth(4), F, 3, Family::GorensteinGT);
}

HypersurfaceGerm HypersurfaceGerm::smooth() {
  SparsePoly F(4);
  F.add_term(unit(0), 1);
  F.add_term(unit(3), -1);
  return HypersurfaceGerm(QuotientGerm::smooth(4), F, 3, Family::Smooth);
}

HypersurfaceGerm HypersurfaceGerm::permuted(const std::vector<std::size_t>& perm) const {
  std::size_t base = 4;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] == base_var_) base = i;
  if (base == 4) throw InvalidInput("permutation drops the base coordinate");
  return HypersurfaceGerm(ambient_.permuted(perm), equation_.permuted(perm), base, family_);
}

std::string HypersurfaceGerm::equation_string() const { return equation_.to_string(coordinate_names()) + " = 0"; }

std::string_view case_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::NormalCrossing: return "2.7.1";
    case CaseLabel::QuotientXyT: return "2.7.2";
    case CaseLabel::CurveXyF: return "2.7.3.1";
    case CaseLabel::Gorenstein: return "2.7.3.2";
    case CaseLabel::Smooth: return "SMOOTH";
  }
  return "unknown";
}

std::string_view moderate_name(ModerateLabel m) {
  switch (m) {
    case ModerateLabel::XyzT: return "3.4.1";
    case ModerateLabel::XyT: return "3.4.2";
    case ModerateLabel::XyZrTn: return "3.4.3";
  }
  return "unknown";
}

std::string GermClass::summary() const {
  std::string s(case_name(case_label));
  if (moderate) s += " / " + std::string(moderate_name(*moderate));
  s += " r=" + std::to_string(index);
  if (a) s += " a=" + std::to_string(*a);
  if (n) s += " n=" + std::to_string(*n);
  if (weierstrass_degree && !moderate) s += " k=" + std::to_string(*weierstrass_degree);
  if (du_val_rank) s += " A_" + std::to_string(*du_val_rank);
  if (case_label == CaseLabel::Gorenstein && !du_val_verified) s += " (Du Val type unverified)";
  return s;
}

bool same_up_to_swap(const GermClass& p, const GermClass& q) {
  if (p == q) return true;
  if (!p.a || !q.a) return false;
  GermClass s = q;
  s.a = (q.index - *q.a) % q.index;
  return p == s;
}

std::optional<Roles> xy_roles(const HypersurfaceGerm& g) {
  const std::size_t t = g.base_var();
  const auto others = non_base(t);
  std::optional<Roles> found;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const std::size_t p = others[i], q = others[j];
      Exponent xy(4, 0);
      xy[p] = xy[q] = 1;
      if (g.equation().coefficient(xy) == 0) continue;
      const std::size_t z = others[3 - i - j];
      bool ok = g.equation().size() >= 2;
      for (const auto& [e, c] : g.equation().terms())
        if (e != xy && (e[p] != 0 || e[q] != 0)) ok = false;
      if (!ok) continue;
      if (found) return std::nullopt;  // ambiguous
      found = Roles{p, q, z, t};
    }
  return found;
}

namespace {

GermClass smooth_class() { return GermClass{}; }

std::int64_t quotient_parameter(const HypersurfaceGerm& g, const Roles& roles) {
  const std::int64_t r = g.ambient().order();
  QuotientGerm q = g.ambient().normalized_by(roles.z);
  const std::int64_t a = q.weights()[roles.x];
  if (mod(a + q.weights()[roles.y], r) != 0 || q.weights()[roles.t] != 0)
    throw UnsupportedGerm("ambient " + g.ambient().to_string() + " is not of the form 1/r(a, -a, 1, 0)");
  if (std::gcd(a, r) != 1)
    throw DomainError("gcd(a, r) = " + std::to_string(std::gcd(a, r)) + ": the quotient point is not isolated");
  return a;
}

GermClass classify_gorenstein(const HypersurfaceGerm& g) {
  if (g.ambient().order() != 1) throw UnsupportedGerm("g = t f normal form requires index 1");
  const SparsePoly& F = g.equation();
  if (has_linear_term(F)) return smooth_class();
  SparsePoly surface = F.restrict_zero(g.base_var());
  if (surface.is_zero()) throw UnsupportedGerm("g(x, y, z) = 0: the central fibre is not a surface germ");
  GermClass c;
  c.case_label = CaseLabel::Gorenstein;
  c.index = 1;
  // A_k: xy - z^{k+1} up to coefficients.
  if (surface.size() == 2) {
    const auto others = non_base(g.base_var());
    for (std::size_t s : others) {
      std::vector<std::size_t> pq;
      for (std::size_t i : others)
        if (i != s) pq.push_back(i);
      Exponent xy(4, 0);
      xy[pq[0]] = xy[pq[1]] = 1;
      if (surface.coefficient(xy) == 0) continue;
      for (const auto& [e, coef] : surface.terms()) {
        if (e == xy) continue;
        if (e[s] >= 2 && total_degree(e) == e[s]) {
          c.du_val_rank = e[s] - 1;
          c.du_val_verified = true;
        }
      }
    }
  }
  return c;
}

}  // namespace

GermClass classify(const HypersurfaceGerm& g) {
  const SparsePoly& F = g.equation();
  const std::int64_t r = g.ambient().order();
  const std::size_t t = g.base_var();
  switch (g.family()) {
    case Family::XyzT: {
      Exponent xyz(4, 1);
      xyz[t] = 0;
      if (F.size() != 2 || F.coefficient(xyz) == 0 || F.coefficient(unit(t)) == 0)
        throw UnsupportedGerm("equation is not of the form xyz = t");
      if (r != 1) throw UnsupportedGerm("xyz = t is only a normal form in A^4");
      GermClass c;
      c.case_label = CaseLabel::NormalCrossing;
      c.moderate = ModerateLabel::XyzT;
      return c;
    }
    case Family::XyT: {
      auto roles = xy_roles(g);
      if (!roles || F.size() != 2 || F.coefficient(unit(t)) == 0)
        throw UnsupportedGerm("equation is not of the form xy = t");
      if (r == 1) return smooth_class();
      GermClass c;
      c.case_label = CaseLabel::QuotientXyT;
      c.moderate = ModerateLabel::XyT;
      c.index = r;
      c.a = quotient_parameter(g, *roles);
      return c;
    }
    case Family::XyFZrT:
    case Family::ModerateBinomial: {
      auto roles = xy_roles(g);
      if (!roles) throw UnsupportedGerm("equation is not of the form xy = f(z^r, t)");
      Exponent xy(4, 0);
      xy[roles->x] = xy[roles->y] = 1;
      const Rational lead = F.coefficient(xy);
      SparsePoly f(2);
      for (const auto& [e, c] : F.terms()) {
        if (e == xy) continue;
        if (e[roles->z] % r != 0) throw UnsupportedGerm("a power of z not divisible by r occurs");
        f.add_term({e[roles->z] / static_cast<int>(r), e[roles->t]}, -c / lead);
      }
      const bool binomial = f.size() == 2 && f.coefficient({1, 0}) != 0 && f.restrict_zero(0).size() == 1;
      if (g.family() == Family::ModerateBinomial && !binomial)
        throw UnsupportedGerm("equation is not of the form xy = z^r + t^n");
      if (r == 1) {
        if (f.coefficient({1, 0}) != 0 || f.coefficient({0, 1}) != 0) return smooth_class();
        return classify_gorenstein(HypersurfaceGerm(g.ambient(), F, t, Family::GorensteinGT));
      }
      if (f.restrict_zero(0).is_zero()) throw SideConditionError("f(0, t) = 0: z^r divides f(z^r, t)");
      if (f.restrict_zero(1).is_zero())
        throw SideConditionError("f(Z, 0) = 0: t divides the equation, which is case 2.7.2, not 2.7.3.1");
      if (!squarefree_in(f, 0))
        throw SideConditionError("f(Z, t) has a repeated factor: not an isolated curve singularity");
      GermClass c;
      c.case_label = CaseLabel::CurveXyF;
      c.index = r;
      c.a = quotient_parameter(g, *roles);
      c.weierstrass_degree = f.restrict_zero(1).order_in(0);
      c.f = f;
      if (*c.weierstrass_degree == 1) {
        c.moderate = ModerateLabel::XyZrTn;
        c.n = f.restrict_zero(0).order_in(1);
      }
      return c;
    }
    case Family::GorensteinGT:
      return classify_gorenstein(g);
    case Family::Smooth:
      if (r != 1 || !has_linear_term(F)) throw UnsupportedGerm("germ tagged smooth has no linear term in A^4");
      return smooth_class();
  }
  throw InternalError("unhandled family");
}

bool is_moderate(const GermClass& c) { return c.moderate.has_value() || c.case_label == CaseLabel::Smooth; }
bool is_moderate(const HypersurfaceGerm& g) { return is_moderate(classify(g)); }
std::int64_t index_of(const HypersurfaceGerm& g) { return classify(g).index; }

HypersurfaceGerm moderate_normal_form(const GermClass& c) {
  if (c.case_label == CaseLabel::Smooth) return HypersurfaceGerm::smooth();
  if (!c.moderate) throw DomainError("germ " + c.summary() + " is not moderate");
  switch (*c.moderate) {
    case ModerateLabel::XyzT: return HypersurfaceGerm::xyz_t();
    case ModerateLabel::XyT: return HypersurfaceGerm::xy_t(c.index, *c.a);
    case ModerateLabel::XyZrTn: return HypersurfaceGerm::moderate_binomial(c.index, *c.a, static_cast<int>(*c.n));
  }
  throw InternalError("unhandled moderate label");
}

bool reid_tai_is_terminal(const QuotientGerm& q, bool require_isolated) {
  if (require_isolated && !q.is_isolated())
    throw DomainError(q.to_string() + " has a positive-dimensional fixed locus");
  const std::int64_t r = q.order();
  for (std::int64_t k = 1; k < r; ++k) {
    std::int64_t age = 0;
    for (auto w : q.weights()) age += mod(k * w, r);
    if (age <= r) return false;
  }
  return true;
}

Rational discrepancy_toric_valuation(const QuotientGerm& q, std::span<const Integer> v,
                                     const std::set<std::size_t>& boundary) {
  if (v.size() != q.dim()) throw InvalidInput("valuation vector has wrong length");
  for (auto b : boundary)
    if (b >= q.dim()) throw InvalidInput("boundary index out of range");
  for (const auto& x : v)
    if (x < 0) throw DomainError("valuation " + to_string(v) + " lies outside the orthant");
  LatticeCone cone = q.cone();
  if (!cone.contains_lattice_point(v)) throw DomainError("valuation " + to_string(v) + " is not in N");
  if (!cone.is_primitive(v)) throw DomainError("valuation " + to_string(v) + " is not primitive");
  Integer sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!boundary.count(i)) sum += v[i];
  Rational out(sum, Integer(static_cast<long>(q.order())));
  out.canonicalize();
  return out - 1;
}

}  // namespace toricflip
