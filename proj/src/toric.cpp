#include "toricflip/toric.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "toricflip/error.hpp"

namespace toricflip {

namespace {

IntMatrix rows_to_matrix(const std::vector<IntVector>& rows) { return IntMatrix(rows); }

bool is_unit_vector(const RatVector& v, std::size_t* index) {
  std::size_t ones = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 1) {
      ++ones;
      *index = k;
    } else if (v[k] != 0) {
      return false;
    }
  }
  return ones == 1;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::optional<std::vector<std::int64_t>> GroupAction::cyclic_generator() const {
  const auto n = static_cast<std::int64_t>(elements.size());
  for (const auto& e : elements) {
    std::int64_t g = modulus;
    for (auto w : e) g = std::gcd(g, w);
    if (modulus / g == n) return e;
  }
  return std::nullopt;
}

LatticeCone LatticeCone::orthant(std::size_t rank, const Integer& denominator,
                                 const std::vector<IntVector>& generators) {
  if (rank == 0) throw InvalidInput("LatticeCone: rank must be positive");
  if (denominator < 1) throw InvalidInput("LatticeCone: denominator must be >= 1");
  LatticeCone c;
  c.rank_ = rank;
  c.denominator_ = denominator;
  std::vector<IntVector> spanning;
  for (std::size_t i = 0; i < rank; ++i) {
    IntVector e(rank, 0);
    e[i] = denominator;
    spanning.push_back(e);
  }
  for (const auto& g : generators) {
    if (g.size() != rank) throw InvalidInput("LatticeCone: generator has wrong length");
    IntVector reduced(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      Integer m;
      mpz_fdiv_r(m.get_mpz_t(), g[i].get_mpz_t(), denominator.get_mpz_t());
      reduced[i] = m;
    }
    c.generators_.push_back(reduced);
    spanning.push_back(reduced);
  }
  c.set_basis(row_hermite_basis(rows_to_matrix(spanning)));
  for (std::size_t i = 0; i < rank; ++i) {
    IntVector e(rank, 0);
    e[i] = denominator;
    c.rays_.push_back(c.make_primitive(e));
  }
  return c;
}

LatticeCone LatticeCone::with_rays(const LatticeCone& lattice_of, std::vector<IntVector> rays) {
  if (rays.size() != lattice_of.rank_) throw InvalidInput("LatticeCone: need one ray per dimension");
  LatticeCone c;
  c.rank_ = lattice_of.rank_;
  c.denominator_ = lattice_of.denominator_;
  c.generators_ = lattice_of.generators_;
  c.basis_ = lattice_of.basis_;
  c.inverse_ = lattice_of.inverse_;
  c.inverse_den_ = lattice_of.inverse_den_;
  for (auto& r : rays) {
    if (r.size() != c.rank_) throw InvalidInput("LatticeCone: ray has wrong length");
    if (!c.contains_lattice_point(r)) throw DomainError("LatticeCone: ray " + to_string(r) + " not in N");
    c.rays_.push_back(c.make_primitive(r));
  }
  if (determinant(rows_to_matrix(c.rays_)) == 0)
    throw DomainError("LatticeCone: rays are linearly dependent");
  return c;
}

void LatticeCone::set_basis(IntMatrix basis) {
  basis_ = std::move(basis);
  const std::size_t n = basis_.rows();
  inverse_den_ = abs(determinant(basis_));
  inverse_ = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    RatVector row = solve_left(basis_, e);
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = row[j] * inverse_den_;
      if (scaled.get_den() != 1) throw InternalError("lattice basis inverse is not integral after scaling");
      inverse_(i, j) = scaled.get_num();
    }
  }
}

IntVector LatticeCone::scaled_coordinates(std::span<const Integer> numerator) const {
  if (numerator.size() != rank_) throw InvalidInput("LatticeCone: vector has wrong length");
  IntVector x(rank_, 0);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (numerator[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) x[j] += numerator[i] * inverse_(i, j);
  }
  return x;
}

bool LatticeCone::contains_lattice_point(std::span<const Integer> numerator) const {
  for (const auto& x : scaled_coordinates(numerator))
    if (!mpz_divisible_p(x.get_mpz_t(), inverse_den_.get_mpz_t())) return false;
  return true;
}

bool LatticeCone::is_primitive(std::span<const Integer> numerator) const {
  IntVector v(numerator.begin(), numerator.end());
  return contains_lattice_point(v) && make_primitive(v) == v;
}

IntVector LatticeCone::make_primitive(std::span<const Integer> numerator) const {
  if (gcd_all(numerator) == 0) throw DomainError("LatticeCone: zero vector has no primitive form");
  if (!contains_lattice_point(numerator)) throw DomainError("LatticeCone: vector " + to_string(numerator) + " not in N");
  // v / q stays in D*N exactly when q divides every lattice coordinate of v.
  Integer q = 0;
  for (const auto& x : scaled_coordinates(numerator)) q = gcd(q, x / inverse_den_);
  IntVector w(numerator.begin(), numerator.end());
  for (auto& e : w) e /= q;
  return w;
}

RatVector LatticeCone::ray_coordinates(std::span<const Integer> numerator) const {
  return solve_left(rows_to_matrix(rays_), numerator);
}

bool LatticeCone::contains(std::span<const Integer> numerator) const {
  for (const auto& l : ray_coordinates(numerator))
    if (l < 0) return false;
  return true;
}

Integer LatticeCone::multiplicity() const {
  Integer num = abs(determinant(rows_to_matrix(rays_)));
  Integer den = abs(determinant(basis_));
  if (num % den != 0) throw InternalError("cone multiplicity is not integral");
  return num / den;
}

GroupAction LatticeCone::group_action() const {
  const std::size_t n = rank_;
  // Ray coordinates of each basis vector of D*N, scaled by the multiplicity.
  const Integer mult = multiplicity();
  const std::int64_t m = to_int64(mult);
  std::vector<std::vector<std::int64_t>> gens;
  IntMatrix rays = rows_to_matrix(rays_);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector lambda = solve_left(rays, basis_.row(i));
    std::vector<std::int64_t> g(n);
    for (std::size_t k = 0; k < n; ++k) {
      Rational scaled = lambda[k] * mult;
      if (scaled.get_den() != 1) throw InternalError("group weights are not integral");
      Integer w;
      mpz_fdiv_r(w.get_mpz_t(), scaled.get_num().get_mpz_t(), mult.get_mpz_t());
      g[k] = to_int64(w);
    }
    gens.push_back(std::move(g));
  }
  std::set<std::vector<std::int64_t>> seen;
  std::deque<std::vector<std::int64_t>> queue;
  std::vector<std::int64_t> zero(n, 0);
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      auto next = cur;
      for (std::size_t k = 0; k < n; ++k) next[k] = (next[k] + g[k]) % m;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  if (static_cast<std::int64_t>(seen.size()) != m)
    throw InternalError("group order differs from cone multiplicity");
  GroupAction action;
  action.modulus = m;
  action.elements.assign(seen.begin(), seen.end());
  return action;
}

Rational LatticeCone::evaluate(std::span<const Integer> functional,
                               std::span<const Integer> numerator) const {
  if (functional.size() != numerator.size()) throw InvalidInput("functional has wrong length");
  Integer s = 0;
  for (std::size_t i = 0; i < functional.size(); ++i) s += functional[i] * numerator[i];
  Rational out(s, denominator_);
  out.canonicalize();
  return out;
}

Rational LatticeCone::normalized_volume(std::span<const Integer> height) const {
  Rational vol = Rational(multiplicity());
  for (const auto& r : rays_) {
    Rational h = evaluate(height, r);
    if (h <= 0) throw DomainError("normalized_volume: height must be positive on every ray");
    vol /= h;
  }
  return vol;
}

Integer cone_multiplicity(const LatticeCone& c) { return c.multiplicity(); }

std::vector<LatticeCone> star_subdivide(const LatticeCone& c, std::span<const Integer> v) {
  if (v.size() != c.rank()) throw InvalidInput("star_subdivide: vector has wrong length");
  if (!c.contains_lattice_point(v)) throw DomainError("star_subdivide: " + to_string(v) + " not in N");
  IntVector point(v.begin(), v.end());
  if (c.make_primitive(point) != point) throw DomainError("star_subdivide: " + to_string(v) + " not primitive");
  RatVector lambda = c.ray_coordinates(point);
  for (const auto& l : lambda)
    if (l < 0) throw DomainError("star_subdivide: " + to_string(v) + " lies outside the cone");
  std::size_t ray_index = 0;
  if (is_unit_vector(lambda, &ray_index)) return {c};
  std::vector<LatticeCone> out;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (lambda[k] == 0) continue;
    auto rays = c.rays();
    rays[k] = point;
    out.push_back(LatticeCone::with_rays(c, std::move(rays)));
  }
  return out;
}

namespace {

struct FanCone {
  LatticeCone cone;
  Integer mult;
};

}  // namespace

Triangulation unimodular_triangulate_reduced_fiber(const LatticeCone& c,
                                                   std::span<const Integer> height) {
  for (const auto& r : c.rays())
    if (c.evaluate(height, r) != 1)
      throw InternalError("reduced-fiber triangulation: ray " + to_string(r) + " is not at height 1");

  std::vector<FanCone> fan{{c, c.multiplicity()}};
  for (;;) {
    auto it = std::find_if(fan.begin(), fan.end(), [](const FanCone& f) { return f.mult > 1; });
    if (it == fan.end()) break;
    const LatticeCone& cone = it->cone;

    // Height-1 lattice points in the fundamental parallelepiped are exactly the
    // group elements whose weights sum to the modulus.
    GroupAction group = cone.group_action();
    const std::int64_t m = group.modulus;
    bool found = false;
    IntVector best_point;
    Integer best_score;
    for (const auto& e : group.elements) {
      std::int64_t sum = 0;
      for (auto w : e) sum += w;
      if (sum != m) continue;
      IntVector p(cone.rank(), 0);
      std::int64_t max_weight = 0;
      for (std::size_t k = 0; k < e.size(); ++k) {
        for (std::size_t i = 0; i < cone.rank(); ++i) p[i] += cone.rays()[k][i] * e[k];
        max_weight = std::max(max_weight, e[k]);
      }
      for (auto& x : p) {
        if (x % m != 0) throw InternalError("height-1 point is not a lattice point");
        x /= m;
      }
      Integer score = it->mult * max_weight / m;
      if (!found || score < best_score || (score == best_score && lex_less(p, best_point))) {
        found = true;
        best_point = p;
        best_score = score;
      }
    }
    if (!found)
      throw InternalError("reduced-fiber triangulation: non-unimodular cone without height-1 points");

    // Only cones sharing the carrier face of the point can contain it.
    RatVector lambda = cone.ray_coordinates(best_point);
    std::vector<IntVector> carrier;
    for (std::size_t k = 0; k < lambda.size(); ++k)
      if (lambda[k] > 0) carrier.push_back(cone.rays()[k]);

    std::vector<FanCone> next;
    next.reserve(fan.size() + cone.rank());
    for (auto& f : fan) {
      bool candidate = std::all_of(carrier.begin(), carrier.end(), [&](const IntVector& r) {
        return std::find(f.cone.rays().begin(), f.cone.rays().end(), r) != f.cone.rays().end();
      });
      if (!candidate || !f.cone.contains(best_point)) {
        next.push_back(std::move(f));
        continue;
      }
      for (auto& child : star_subdivide(f.cone, best_point)) {
        Integer mult = child.multiplicity();
        next.push_back({std::move(child), mult});
      }
    }
    fan = std::move(next);
  }

  Triangulation t;
  t.parent = c;
  for (auto& f : fan) t.cones.push_back(std::move(f.cone));
  return t;
}

FiberCertificate certify_reduced_fiber(const Triangulation& t, std::span<const Integer> height) {
  FiberCertificate cert;
  cert.all_unimodular = true;
  cert.all_rays_height_one = true;
  Rational total = 0;
  for (const auto& cone : t.cones) {
    if (cone.multiplicity() != 1) cert.all_unimodular = false;
    for (const auto& r : cone.rays())
      if (cone.evaluate(height, r) != 1) cert.all_rays_height_one = false;
    if (cert.all_rays_height_one) total += cone.normalized_volume(height);
  }
  cert.volume_matches =
      cert.all_rays_height_one && !t.cones.empty() && total == t.parent.normalized_volume(height);
  return cert;
}

}  // namespace toricflip
