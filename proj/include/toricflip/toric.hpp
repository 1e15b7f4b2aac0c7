#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toricflip/lattice.hpp"

namespace toricflip {

/// Finite abelian group N / N' acting diagonally on the coordinates dual to
/// the rays of a simplicial cone. Each element is stored as its weight vector
/// modulo `modulus`, which is the multiplicity of the cone.
struct GroupAction {
  std::int64_t modulus = 1;
  std::vector<std::vector<std::int64_t>> elements;  // sorted, identity first

  std::size_t size() const { return elements.size(); }
  bool trivial() const { return elements.size() <= 1; }
  /// Weights of an element of maximal order when the group is cyclic.
  std::optional<std::vector<std::int64_t>> cyclic_generator() const;
};

/// Simplicial cone in a lattice N = Z^n + sum_j Z * (1/D) g_j.
///
/// Every vector of N is stored as an integer numerator over the common
/// denominator D, so that D*N is an honest integer lattice containing D*Z^n.
/// Rays are kept primitive in N.
class LatticeCone {
 public:
  LatticeCone() = default;

  /// Positive orthant of Z^n + sum_j Z*(1/D) g_j; axis rays are made primitive.
  static LatticeCone orthant(std::size_t rank, const Integer& denominator,
                             const std::vector<IntVector>& generators = {});

  /// Cone spanned by `rays` (numerators over the denominator of `lattice_of`)
  /// inside the lattice of `lattice_of`.
  static LatticeCone with_rays(const LatticeCone& lattice_of, std::vector<IntVector> rays);

  std::size_t rank() const { return rank_; }
  const Integer& denominator() const { return denominator_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  /// Rows form a basis of D*N.
  const IntMatrix& lattice_basis() const { return basis_; }

  bool contains_lattice_point(std::span<const Integer> numerator) const;
  bool is_primitive(std::span<const Integer> numerator) const;
  IntVector make_primitive(std::span<const Integer> numerator) const;

  /// Coefficients lambda with v = sum_k lambda_k * ray_k.
  RatVector ray_coordinates(std::span<const Integer> numerator) const;
  bool contains(std::span<const Integer> numerator) const;

  /// Index of the sublattice spanned by the rays; 1 iff the chart is smooth.
  Integer multiplicity() const;
  bool is_smooth() const { return multiplicity() == 1; }

  /// N / (Z-span of rays) acting on the coordinates dual to the rays.
  GroupAction group_action() const;

  /// <h, v> for an integer functional h on the ambient coordinates.
  Rational evaluate(std::span<const Integer> functional, std::span<const Integer> numerator) const;

  /// Volume of {v in cone : h(v) <= 1} in units of a fundamental simplex of N.
  Rational normalized_volume(std::span<const Integer> height) const;

  friend bool operator==(const LatticeCone& a, const LatticeCone& b) {
    return a.denominator_ == b.denominator_ && a.basis_ == b.basis_ && a.rays_ == b.rays_;
  }

 private:
  void set_basis(IntMatrix basis);
  // Coordinates of v in the lattice basis, scaled by inverse_den_.
  IntVector scaled_coordinates(std::span<const Integer> numerator) const;

  std::size_t rank_ = 0;
  Integer denominator_ = 1;
  std::vector<IntVector> generators_;
  IntMatrix basis_;
  IntMatrix inverse_;  // basis_^{-1} * inverse_den_
  Integer inverse_den_ = 1;
  std::vector<IntVector> rays_;
};

Integer cone_multiplicity(const LatticeCone& c);

/// Maximal cones of the star subdivision of `c` at the lattice point `v`
/// (numerator over the cone's denominator). Returns {c} when v is a ray.
std::vector<LatticeCone> star_subdivide(const LatticeCone& c, std::span<const Integer> v);

struct Triangulation {
  LatticeCone parent;
  std::vector<LatticeCone> cones;
};

/// Certificate that a triangulation resolves the cone with reduced fiber.
struct FiberCertificate {
  bool all_unimodular = false;
  bool all_rays_height_one = false;
  bool volume_matches = false;
  bool ok() const { return all_unimodular && all_rays_height_one && volume_matches; }
};

/// Unimodular triangulation of `c` all of whose rays have height 1 under
/// `height`, built by iterated star subdivision. Throws InternalError when the
/// cone has a ray off height 1 or a non-unimodular cone without a height-1 point.
Triangulation unimodular_triangulate_reduced_fiber(const LatticeCone& c,
                                                   std::span<const Integer> height);

FiberCertificate certify_reduced_fiber(const Triangulation& t, std::span<const Integer> height);

}  // namespace toricflip
