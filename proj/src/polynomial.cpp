#include "toricflip/polynomial.hpp"

#include <algorithm>
#include <limits>

#include "toricflip/error.hpp"

namespace toricflip {

SparsePoly SparsePoly::monomial(std::size_t num_vars, Exponent e, const Rational& c) {
  SparsePoly p(num_vars);
  p.add_term(e, c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t num_vars, std::size_t var) {
  Exponent e(num_vars, 0);
  e.at(var) = 1;
  return monomial(num_vars, e);
}

void SparsePoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != num_vars_) throw InvalidInput("SparsePoly: exponent has wrong length");
  for (int x : e)
    if (x < 0) throw InvalidInput("SparsePoly: negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational SparsePoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int SparsePoly::order_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int m = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) m = std::min(m, e.at(var));
  return m;
}

int SparsePoly::degree_in(std::size_t var) const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e.at(var));
  return m;
}

SparsePoly SparsePoly::restrict_zero(std::size_t var) const {
  SparsePoly out(num_vars_);
  for (const auto& [e, c] : terms_)
    if (e.at(var) == 0) out.terms_.emplace(e, c);
  return out;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  SparsePoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponent d = e;
    --d[var];
    out.add_term(d, c * e[var]);
  }
  return out;
}

SparsePoly SparsePoly::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != num_vars_) throw InvalidInput("SparsePoly: permutation has wrong length");
  SparsePoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    Exponent p(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) p[i] = e[perm[i]];
    out.add_term(p, c);
  }
  return out;
}

SparsePoly SparsePoly::without_variable(std::size_t var) const {
  SparsePoly out(num_vars_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) != 0) throw InvalidInput("SparsePoly: dropped variable occurs");
    Exponent p = e;
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(var));
    out.add_term(p, c);
  }
  return out;
}

Rational SparsePoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != num_vars_) throw InvalidInput("SparsePoly: point has wrong length");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < num_vars_; ++i)
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    total += term;
  }
  return total;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  if (a.num_vars_ != b.num_vars_) throw InvalidInput("SparsePoly: variable count mismatch");
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.num_vars_ != b.num_vars_) throw InvalidInput("SparsePoly: variable count mismatch");
  SparsePoly out(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(a.num_vars_);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

SparsePoly operator*(const Rational& c, const SparsePoly& a) {
  SparsePoly out(a.num_vars_);
  for (const auto& [e, x] : a.terms_) out.add_term(e, c * x);
  return out;
}

std::string SparsePoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int x : a.first) da += x;
    for (int x : b.first) db += x;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += toricflip::to_string(mag);
    } else if (mag != 1) {
      out += toricflip::to_string(mag) + "*" + mono;
    } else {
      out += mono;
    }
  }
  return out;
}

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UniPoly& p) {
  UniPoly q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

UniPoly derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

namespace {

void divide(const UniPoly& a, const UniPoly& b, UniPoly* quotient, UniPoly* rest) {
  UniPoly r = a;
  trim(r);
  UniPoly d = b;
  trim(d);
  if (d.empty()) throw DomainError("polynomial division by zero");
  UniPoly q(r.size() >= d.size() ? r.size() - d.size() + 1 : 0);
  while (r.size() >= d.size() && !r.empty()) {
    std::size_t shift = r.size() - d.size();
    Rational f = r.back() / d.back();
    q[shift] = f;
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= f * d[i];
    trim(r);
  }
  trim(q);
  if (quotient) *quotient = std::move(q);
  if (rest) *rest = std::move(r);
}

}  // namespace

UniPoly remainder(const UniPoly& a, const UniPoly& b) {
  UniPoly r;
  divide(a, b, nullptr, &r);
  return r;
}

UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) {
  UniPoly q, r;
  divide(a, b, &q, &r);
  if (!r.empty()) throw InternalError("exact_quotient: nonzero remainder");
  return q;
}

UniPoly monic_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rational evaluate(const UniPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

namespace {

std::vector<Integer> positive_divisors(const Integer& n, bool* ok) {
  std::vector<Integer> out;
  Integer m = abs(n);
  if (m > Integer("1000000000000")) {
    *ok = false;
    return out;
  }
  for (Integer d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    if (d * d != m) out.push_back(m / d);
  }
  return out;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const UniPoly& p, bool* complete) {
  if (complete) *complete = true;
  UniPoly q = p;
  trim(q);
  if (q.empty()) throw DomainError("rational_roots of the zero polynomial");
  std::vector<RationalRoot> roots;
  int zero_mult = 0;
  while (!q.empty() && q.front() == 0) {
    q.erase(q.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.push_back({Rational(0), zero_mult});
  if (q.size() <= 1) return roots;

  Integer den_lcm = 1;
  for (const auto& c : q) den_lcm = lcm(den_lcm, c.get_den());
  std::vector<Integer> ints;
  for (const auto& c : q) ints.push_back(Integer(c * den_lcm));
  bool ok = true;
  auto ps = positive_divisors(ints.front(), &ok);
  auto qs = positive_divisors(ints.back(), &ok);
  if (!ok) {
    if (complete) *complete = false;
    return roots;
  }
  std::vector<Rational> candidates;
  for (const auto& a : ps)
    for (const auto& b : qs)
      for (int sign : {1, -1}) {
        Rational c(sign * a, b);
        c.canonicalize();
        if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(c);
      }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& c : candidates) {
    int mult = 0;
    UniPoly linear{-c, Rational(1)};
    while (degree(q) >= 1 && evaluate(q, c) == 0) {
      q = exact_quotient(q, linear);
      ++mult;
    }
    if (mult) roots.push_back({c, mult});
  }
  return roots;
}

bool squarefree_in(const SparsePoly& f, std::size_t main_var) {
  if (f.num_vars() != 2 || main_var > 1) throw InvalidInput("squarefree_in expects a bivariate polynomial");
  const std::size_t other = 1 - main_var;
  const int k = f.degree_in(main_var);
  if (k == 0) return true;
  // Leading coefficient in main_var as a polynomial in the other variable.
  UniPoly lead(static_cast<std::size_t>(f.degree_in(other)) + 1);
  for (const auto& [e, c] : f.terms())
    if (e[main_var] == k) lead[e[other]] += c;
  trim(lead);
  // deg_t disc <= (2k - 1) * deg_t f, and lead vanishes at <= deg lead points.
  const int samples = (2 * k - 1) * f.degree_in(other) + degree(lead) + 2;
  for (int s = 0; s < samples; ++s) {
    Rational t0 = s;
    if (evaluate(lead, t0) == 0) continue;
    UniPoly g(static_cast<std::size_t>(k) + 1);
    for (const auto& [e, c] : f.terms()) {
      Rational term = c;
      for (int i = 0; i < e[other]; ++i) term *= t0;
      g[e[main_var]] += term;
    }
    trim(g);
    if (degree(monic_gcd(g, derivative(g))) == 0) return true;
  }
  return false;
}

}  // namespace toricflip
