#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "toricflip/lattice.hpp"
#include "toricflip/polynomial.hpp"
#include "toricflip/toric.hpp"

namespace toricflip {

/// Cyclic quotient 1/r(w_1, ..., w_n). Weights are reduced to [0, r) and an
/// unfaithful action is replaced by the faithful one it induces.
class QuotientGerm {
 public:
  QuotientGerm() = default;
  QuotientGerm(std::int64_t r, std::vector<std::int64_t> weights);
  static QuotientGerm smooth(std::size_t dim) { return QuotientGerm(1, std::vector<std::int64_t>(dim, 0)); }

  std::int64_t order() const { return r_; }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  std::size_t dim() const { return weights_.size(); }

  /// True iff no nontrivial element fixes a point off the origin.
  bool is_isolated() const;
  /// Same group, generator rescaled so that coordinate `coord` has weight 1.
  QuotientGerm normalized_by(std::size_t coord) const;
  QuotientGerm permuted(const std::vector<std::size_t>& perm) const;
  /// Action on the remaining coordinates after deleting `coord`.
  QuotientGerm without(std::size_t coord) const;

  /// Orthant cone in N = Z^n + Z*(1/r)(w).
  LatticeCone cone() const;

  std::string to_string() const;  // "1/5(2, 3, 1, 0)"
  friend bool operator==(const QuotientGerm&, const QuotientGerm&) = default;

 private:
  std::int64_t r_ = 1;
  std::vector<std::int64_t> weights_;
};

enum class Family { XyzT, XyT, XyFZrT, GorensteinGT, Smooth, ModerateBinomial };

std::string_view family_name(Family f);  // "xyz_t", "xy_t", ...
Family parse_family(std::string_view name);

/// A hypersurface germ (F = 0) in a 4-dimensional cyclic quotient, fibred over
/// the disc by the coordinate `base_var`.
class HypersurfaceGerm {
 public:
  HypersurfaceGerm() = default;
  HypersurfaceGerm(QuotientGerm ambient, SparsePoly equation, std::size_t base_var, Family family);

  /// (xyz = t) in A^4.
  static HypersurfaceGerm xyz_t();
  /// (xy = t) in 1/r(a, r-a, 1, 0).
  static HypersurfaceGerm xy_t(std::int64_t r, std::int64_t a);
  /// (xy = c_z z^r + c_t t^n) in 1/r(a, r-a, 1, 0).
  static HypersurfaceGerm moderate_binomial(std::int64_t r, std::int64_t a, int n, const Rational& c_z = 1,
                                            const Rational& c_t = 1);
  /// (xy = f(z^r, t)) in 1/r(a, r-a, 1, 0), with f given in variables (Z, t).
  static HypersurfaceGerm xy_f(std::int64_t r, std::int64_t a, const SparsePoly& f);
  /// (g(x, y, z) = t f(x, y, z, t)) in A^4; both polynomials in (x, y, z, t).
  static HypersurfaceGerm gorenstein(const SparsePoly& g, const SparsePoly& f);
  /// (x = t) in A^4.
  static HypersurfaceGerm smooth();

  const QuotientGerm& ambient() const { return ambient_; }
  const SparsePoly& equation() const { return equation_; }
  std::size_t base_var() const { return base_var_; }
  Family family() const { return family_; }

  /// Same germ with coordinates relabelled: new coordinate i is old perm[i].
  HypersurfaceGerm permuted(const std::vector<std::size_t>& perm) const;
  std::string equation_string() const;

  friend bool operator==(const HypersurfaceGerm&, const HypersurfaceGerm&) = default;

 private:
  QuotientGerm ambient_;
  SparsePoly equation_;
  std::size_t base_var_ = 3;
  Family family_ = Family::Smooth;
};

enum class CaseLabel { NormalCrossing, QuotientXyT, CurveXyF, Gorenstein, Smooth };
enum class ModerateLabel { XyzT, XyT, XyZrTn };

std::string_view case_name(CaseLabel c);          // "2.7.1", ..., "SMOOTH"
std::string_view moderate_name(ModerateLabel m);  // "3.4.1", ...

struct GermClass {
  CaseLabel case_label = CaseLabel::Smooth;
  std::optional<ModerateLabel> moderate;
  std::int64_t index = 1;
  std::optional<std::int64_t> a;                   // x-weight once z has weight 1
  std::optional<std::int64_t> n;                   // t-order of the 3.4.3 model
  std::optional<std::int64_t> weierstrass_degree;  // ord_Z f(Z, 0) in case 2.7.3.1
  std::optional<SparsePoly> f;                     // f(Z, t) in case 2.7.3.1
  std::optional<std::int64_t> du_val_rank;         // k for an A_k surface in 2.7.3.2
  bool du_val_verified = false;

  std::string summary() const;
  friend bool operator==(const GermClass&, const GermClass&) = default;
};

/// Equality up to the x <-> y swap, which exchanges a and r - a.
bool same_up_to_swap(const GermClass& p, const GermClass& q);

GermClass classify(const HypersurfaceGerm& g);
bool is_moderate(const HypersurfaceGerm& g);
bool is_moderate(const GermClass& c);
std::int64_t index_of(const HypersurfaceGerm& g);

/// The normal-form germ of a moderate class: xyz = t, xy = t, xy = z^r + t^n or smooth.
HypersurfaceGerm moderate_normal_form(const GermClass& c);

/// Coordinates playing the roles of x, y, z, t in a germ of shape xy = t or
/// xy = f(z^r, t); x is the lower-numbered coordinate of the xy term.
struct Roles {
  std::size_t x = 0, y = 1, z = 2, t = 3;
};
std::optional<Roles> xy_roles(const HypersurfaceGerm& g);

/// Every nontrivial element has age sum_i frac(k w_i / r) > 1.
bool reid_tai_is_terminal(const QuotientGerm& q, bool require_isolated = true);

/// a(v; K + B) = sum_{i not in boundary} v_i - 1 for a primitive v of N in the
/// orthant, v given as a numerator over q.order().
Rational discrepancy_toric_valuation(const QuotientGerm& q, std::span<const Integer> v,
                                     const std::set<std::size_t>& boundary = {});

}  // namespace toricflip
