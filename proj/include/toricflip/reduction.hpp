#pragma once

#include <optional>
#include <vector>

#include "toricflip/blowup.hpp"
#include "toricflip/germs.hpp"

namespace toricflip {

/// One edge of the lower Newton polygon of f(Z, t), joining (i1, j1) to
/// (i2, j2) with i1 < i2 and j1 > j2 (i = Z-exponent, j = t-exponent).
/// Roots Z = c t^s + ... with s = (j1 - j2) / (i2 - i1); there are i2 - i1 of them.
struct NewtonSegment {
  int i1 = 0, j1 = 0, i2 = 0, j2 = 0;
  Rational slope;
  int root_count = 0;      // i2 - i1
  int lattice_length = 0;  // gcd(i2 - i1, j1 - j2)
  /// Nonzero rational roots of the face polynomial, with multiplicity.
  std::vector<RationalRoot> face_roots;
  /// True when the face polynomial splits into linear factors over Q.
  bool face_split = false;
};

struct NewtonData {
  SparsePoly f;
  std::vector<NewtonSegment> lower_hull;  // ordered by increasing Z-exponent, decreasing slope
};

/// Lower hull from (0, ord_t f(0, t)) to (ord_Z f(Z, 0), 0). Enforces the
/// side conditions of xy = f(z^r, t).
NewtonData newton_polygon(const SparsePoly& f);

struct BranchOrders {
  Integer d;                    // lcm of slope denominators
  std::vector<Integer> orders;  // u-adic orders of the roots after t = u^d, ascending
  NewtonData newton;
};

BranchOrders branch_orders(const SparsePoly& f);

struct NormalizationResult {
  Integer d;
  std::vector<Integer> n;
  Integer components;      // torsion of the character lattice, from Smith normal form
  LatticeCone cone;        // one component, in coordinates along its rays
  IntVector u_height;      // the function u on that cone
  LatticeCone formula_cone;      // the orthant of Z^k + Z (1/d)(n_1, ..., n_k)
  bool matches_formula = false;  // same group on the coordinate axes
};

/// Number of irreducible components of the normalisation of (u^d = prod z_i^{n_i}):
/// the torsion order of its character lattice, read off a Smith normal form.
Integer component_count(const Integer& d, const std::vector<Integer>& n);

/// Normalisation of (u^d = prod z_i^{n_i}).
NormalizationResult normalization_components(const Integer& d, const std::vector<Integer>& n);

Triangulation semistable_resolve_component(const LatticeCone& c, std::span<const Integer> u_height);

struct ReductionPlan {
  HypersurfaceGerm source;
  GermClass source_class;
  BranchOrders branches;
  std::vector<HypersurfaceGerm> moderate_germs;
  NormalizationResult normalization;  // of u^d = prod z_i^{n_i} over the branch orders
  Integer d_eff;                      // lcm(d, n_i): base change making every height 1
  std::optional<NormalizationResult> reduced;
  std::optional<Triangulation> triangulation;
  std::optional<FiberCertificate> certificate;
};

/// Moderate models (xy = z^r - u^{n_i}) in 1/r(a, r-a, 1, 0) for a germ of case 2.7.3.1.
ReductionPlan moderate_model(const HypersurfaceGerm& g);

}  // namespace toricflip
