#include "jacobian_oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

using QVec = std::vector<mpq_class>;

// Solves A c = b over Q by Gauss-Jordan elimination.
QVec solve(std::vector<QVec> a, QVec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("singular ray matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      mpq_class f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

mpq_class frac(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - f;
}

QVec reduce(QVec v) {
  for (auto& x : v) x = frac(x);
  return v;
}

QVec add(const QVec& u, const QVec& v) {
  QVec w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = frac(u[i] + v[i]);
  return w;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
}

// Closure of a finite set of generators in (Q/Z)^k.
std::set<QVec> generate(const std::vector<QVec>& gens, std::size_t k) {
  std::set<QVec> group{QVec(k, 0)};
  std::vector<QVec> frontier{QVec(k, 0)};
  while (!frontier.empty()) {
    QVec x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      QVec y = add(x, g);
      if (group.insert(y).second) frontier.push_back(y);
    }
  }
  return group;
}

long powmod(long b, long e, long p) {
  long r = 1;
  b %= p;
  if (b < 0) b += p;
  for (; e > 0; --e) r = r * b % p;
  return r;
}

long eval(const std::vector<Term>& f, const std::array<long, 4>& x, long p) {
  long s = 0;
  for (const auto& t : f) {
    long m = ((t.c % p) + p) % p;
    for (int i = 0; i < 4; ++i) m = m * powmod(x[i], t.e[i], p) % p;
    s = (s + m) % p;
  }
  return s;
}

std::vector<Term> partial(const std::vector<Term>& f, int i) {
  std::vector<Term> d;
  for (const auto& t : f)
    if (t.e[i] > 0) {
      Term u = t;
      u.c *= u.e[i];
      u.e[i] -= 1;
      d.push_back(u);
    }
  return d;
}

unsigned zero_mask(const std::array<long, 4>& x) {
  unsigned m = 0;
  for (int i = 0; i < 4; ++i)
    if (x[i] == 0) m |= 1u << i;
  return m;
}

// Character of the equation on a group element: sum of e_j c_j over one monomial.
mpq_class equation_character(const std::vector<Term>& f, const QVec& h) {
  mpq_class s = 0;
  for (int j = 0; j < 4; ++j) s += f.front().e[j] * h[j];
  return frac(s);
}

// Is the quotient of the hypersurface germ at a smooth point with zero set
// `mask` smooth? The stabiliser acts on the tangent space through the four
// coordinate characters minus one copy of the equation's character.
bool stratum_quotient_smooth(const std::set<QVec>& group, const std::vector<Term>& f, unsigned mask) {
  std::vector<QVec> stab;
  for (const auto& h : group) {
    bool fixes = true;
    for (int j = 0; j < 4; ++j)
      if (!(mask >> j & 1u) && h[j] != 0) fixes = false;
    if (fixes) stab.push_back(h);
  }
  // Any coordinate whose character agrees with the equation's on the stabiliser
  // leaves the same multiset of characters behind.
  int normal = -1;
  for (int j = 0; j < 4 && normal < 0; ++j)
    if (std::all_of(stab.begin(), stab.end(), [&](const QVec& h) { return h[j] == equation_character(f, h); }))
      normal = j;
  if (normal < 0) throw std::runtime_error("equation character is not a coordinate character on the stabiliser");

  std::set<QVec> image;
  std::vector<QVec> reflections;
  for (const auto& h : stab) {
    QVec t;
    for (int j = 0; j < 4; ++j)
      if (j != normal) t.push_back(h[j]);
    if (std::count_if(t.begin(), t.end(), [](const mpq_class& x) { return x != 0; }) == 1) reflections.push_back(t);
    image.insert(t);
  }
  return generate(reflections, 3).size() == image.size();
}

}  // namespace

Germ xy_t(long r, long a) { return {r, {a, r - a, 1, 0}, {a, r - a, 1, r}, {{{1, 1, 0, 0}, 1}, {{0, 0, 0, 1}, -1}}}; }

Germ binomial(long r, long a, long n) {
  return {r, {a, r - a, 1, 0}, {a, r - a, 1, r}, {{{1, 1, 0, 0}, 1}, {{0, 0, r, 0}, -1}, {{0, 0, 0, n}, -1}}};
}

std::vector<ChartReport> analyse_blowup(const Germ& g) {
  std::vector<ChartReport> out;
  QVec v(4), amb(4);
  for (int i = 0; i < 4; ++i) {
    v[i] = mpq_class(g.blowup[i], g.r);
    amb[i] = mpq_class(g.ambient[i], g.r);
    v[i].canonicalize();
    amb[i].canonicalize();
  }
  for (std::size_t k = 0; k < 4; ++k) {
    ChartReport rep;
    rep.chart = k;
    std::vector<QVec> rays(4);
    for (std::size_t j = 0; j < 4; ++j) {
      rays[j] = QVec(4, 0);
      if (j == k)
        rays[j] = v;
      else
        rays[j][j] = 1;
    }
    // Coordinates of the generators of N in the ray basis give the chart group.
    std::vector<QVec> cols(4, QVec(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) cols[i][j] = rays[j][i];
    std::vector<QVec> gens;
    for (int i = 0; i < 4; ++i) {
      QVec e(4, 0);
      e[i] = 1;
      gens.push_back(reduce(solve(cols, e)));
    }
    gens.push_back(reduce(solve(cols, amb)));
    std::set<QVec> group = generate(gens, 4);
    rep.group_order = group.size();

    // Pull back: exponent of xi_j is <e, ray_j>; then strip the exceptional coordinate.
    std::map<Exp, long> pulled;
    for (const auto& t : g.eq) {
      Exp e{};
      for (std::size_t j = 0; j < 4; ++j) {
        mpq_class s = 0;
        for (int i = 0; i < 4; ++i) s += t.e[i] * rays[j][i];
        if (s.get_den() != 1) throw std::runtime_error("non-integral chart exponent");
        e[j] = s.get_num().get_si();
      }
      pulled[e] += t.c;
    }
    long low = -1;
    for (const auto& [e, c] : pulled)
      if (c != 0 && (low < 0 || e[k] < low)) low = e[k];
    for (const auto& [e, c] : pulled)
      if (c != 0) {
        Exp stripped = e;
        stripped[k] -= low;
        rep.equation.push_back({stripped, c});
      }

    long top = 0;
    for (const auto& t : rep.equation)
      for (auto x : t.e) top = std::max(top, x);
    std::vector<Term> grads[4];
    for (int i = 0; i < 4; ++i) grads[i] = partial(rep.equation, i);

    std::set<unsigned> smooth_strata;
    std::set<std::array<long, 4>> off;
    for (long p : {11L, 13L, 17L, 19L}) {
      if (p <= top) continue;
      if (rep.primes.size() == 2) break;
      rep.primes.push_back(p);
      std::array<long, 4> x{};
      for (x[0] = 0; x[0] < p; ++x[0])
        for (x[1] = 0; x[1] < p; ++x[1])
          for (x[2] = 0; x[2] < p; ++x[2])
            for (x[3] = 0; x[3] < p; ++x[3]) {
              if (eval(rep.equation, x, p) != 0) continue;
              const unsigned mask = zero_mask(x);
              bool singular = true;
              for (int i = 0; i < 4 && singular; ++i) singular = eval(grads[i], x, p) == 0;
              if (!singular)
                smooth_strata.insert(mask);
              else if (mask != 0xFu)
                off.insert(x);
            }
    }
    if (rep.primes.empty()) throw std::runtime_error("chart exponents exceed the scanned primes");
    rep.off_origin.assign(off.begin(), off.end());

    rep.origin_on_surface = std::none_of(rep.equation.begin(), rep.equation.end(),
                                         [](const Term& t) { return t.e == Exp{0, 0, 0, 0}; });
    if (rep.origin_on_surface) {
      bool smooth_point = false;
      for (int i = 0; i < 4; ++i)
        for (const auto& t : grads[i])
          if (t.e == Exp{0, 0, 0, 0} && t.c != 0) smooth_point = true;
      rep.origin_singular = !smooth_point || !stratum_quotient_smooth(group, rep.equation, 0xFu);
    }
    for (unsigned mask : smooth_strata)
      if (mask != 0xFu && !stratum_quotient_smooth(group, rep.equation, mask)) rep.bad_strata.push_back(mask);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace oracle
