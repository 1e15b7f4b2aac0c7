#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "toricflip/germs.hpp"

namespace toricflip {

enum class OriginKind { Absent, Smooth, Singular };

/// One affine chart of a weighted blow-up, in the coordinates dual to the
/// rays of the chart cone. Coordinate `exceptional` cuts out the exceptional divisor.
struct Chart {
  std::size_t exceptional = 0;
  LatticeCone cone;
  QuotientGerm group;           // chart group acting on the chart coordinates
  SparsePoly proper_transform;  // equation divided by the exceptional coordinate to its full order
  Exponent base_monomial;       // pullback of the base parameter
  OriginKind origin = OriginKind::Absent;
  std::optional<HypersurfaceGerm> germ;  // normal form of the germ at the chart origin
  std::optional<GermClass> germ_class;
};

struct BlowupStep {
  HypersurfaceGerm center;
  GermClass center_class;
  IntVector weights;  // numerators over `denominator`
  std::int64_t denominator = 1;
  Rational equation_weight;
  std::vector<Chart> charts;
  Rational discrepancy;
  Integer fiber_mult;

  /// Charts whose origin is singular: smaller group order first, ties by chart index.
  std::vector<std::size_t> singular_charts() const;
};

/// The weights (1/r)(a, r-a, 1, r) in the coordinates of a 3.4.2 or 3.4.3 germ.
IntVector canonical_weights(const HypersurfaceGerm& g);

/// Weighted blow-up with the given weights (numerators over the ambient order);
/// canonical weights when omitted.
BlowupStep weighted_blowup(const HypersurfaceGerm& g, const std::optional<IntVector>& weights = std::nullopt);

/// Reads off the germ at the origin of a chart from the proper transform and
/// base monomial. For a point xy = f(z^r, t), `x_hint` picks which chart
/// coordinate plays x, so that a continuation keeps the orientation of its centre.
void identify_chart_origin(Chart& chart, std::optional<std::size_t> x_hint = std::nullopt);

struct ResolutionNode {
  HypersurfaceGerm germ;
  GermClass germ_class;
  std::shared_ptr<const BlowupStep> step;  // null at leaves; shared between nodes with the same germ
  std::vector<std::size_t> children;
  std::size_t depth = 0;
};

/// Nodes in preorder; nodes[0] is the root.
struct ResolutionTree {
  std::vector<ResolutionNode> nodes;
  std::size_t blowup_count() const;
  const ResolutionNode& root() const { return nodes.front(); }
};

ResolutionTree resolve(const HypersurfaceGerm& g);

/// (r, n) with n = 0 outside family 3.4.3; decreases lexicographically along the recursion.
std::pair<std::int64_t, std::int64_t> termination_measure(const HypersurfaceGerm& g);

struct SurfaceChain {
  std::vector<Integer> self_intersections;  // -b_i
  IntMatrix intersection_matrix;
};

SurfaceChain hj_resolve_surface(std::int64_t r, std::int64_t a);

/// Sylvester's criterion on leading principal minors.
bool is_negative_definite(const IntMatrix& m);

}  // namespace toricflip
