#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engel/horizontal.hpp"

namespace engel {

enum class ShellKind { Empty, A, B, K3, KW, Ln, CR };

std::string to_string(ShellKind k);
/// Throws std::invalid_argument for unknown names.
ShellKind parse_shell_kind(std::string_view name);

/// |p_coord| <= 2^(slope * i + offset) on layer i.
struct CapRule {
  std::size_t coord;
  int slope;
  int offset;
};

/// Floating membership tolerance, relative, on the modulus equalities.
inline constexpr double kMembershipTau = 1e-9;

/// Countable union of layers i = 1, 2, ...; on layer i the max modulus of
/// the block coordinates lies in [2^(i-1) - eps, 2^(i-1) + eps] and each
/// capped coordinate satisfies its cap. Remaining coordinates are free.
///
/// Ln is the slab union {x in {1..n}} and CR the curve
/// (C x {0, 1, R i}) u ({0} x C) in C^2.
struct ShellSet {
  ShellKind kind = ShellKind::Empty;
  std::vector<std::size_t> block;
  std::vector<CapRule> caps;
  Rational epsilon{0};
  int n = 0;
  Rational R{0};

  static ShellSet empty();
  /// Block (w,x,z), |y| <= c_i = 2^(3i+1).
  static ShellSet A();
  /// Block (w,x), |y| <= d_i = 2^(5i+2), |z| <= e_i = 2^(3i+1).
  static ShellSet B();
  /// Annuli a_i = 2^(i-1) - eps <= max(|w|,|x|) <= b_i = 2^(i-1) + eps,
  /// |y| <= 2^(5i+2), z free. Requires 0 < eps <= 1/2 so that
  /// a_i < b_i <= a_(i+1).
  static ShellSet K3(const Rational& epsilon = Rational(1, 2));
  /// Block (w,y), |z| <= 2^i, x free.
  static ShellSet KW();
  static ShellSet Ln(int n);
  static ShellSet CR(const Rational& R);

  /// Ambient dimension of the points this set lives in.
  std::size_t dimension() const { return kind == ShellKind::CR ? 2 : 4; }
  bool dyadic() const;
  /// Lower and upper block radius of layer i.
  Rational inner_radius(int i) const;
  Rational outer_radius(int i) const;
  /// Exponent of the cap of rule c on layer i.
  static int cap_exponent(const CapRule& c, int i) { return c.slope * i + c.offset; }
  /// Number of connected components for Ln; 0 otherwise.
  int component_count() const { return kind == ShellKind::Ln ? n : 0; }
};

struct Membership {
  bool in = false;
  /// Witness layer (slab index for Ln, branch 1..4 for CR); 0 when out.
  int layer = 0;
};

/// Exact decision; the lowest witness layer is reported.
Membership shell_membership(const ShellSet& s, const ExactPoint& p);
/// Membership up to relative tolerance tau on the defining equalities.
Membership shell_membership(const ShellSet& s, const FloatPoint& p, double tau = kMembershipTau);

enum class AvoidStatus { Certified, Intersects, Unknown };
std::string to_string(AvoidStatus s);

struct AvoidResult {
  AvoidStatus status = AvoidStatus::Unknown;
  /// Witness parameter when Intersects; exact when found at an exact node.
  std::optional<ComplexFloat> zeta;
  std::optional<GaussianRational> exact_zeta;
  int layer = 0;
  /// Grid resolution used by the last pass (0 for the global bound).
  int grid = 0;
};

/// Semi-decision whether f(|zeta| <= r) misses S.
///
/// Certified means every cell of a square grid over the disc keeps a
/// positive margin from every relevant layer, with per-cell Lipschitz bounds
/// from the derivative coefficient sums. Intersects comes with an exact node
/// in S or a bisected root of a layer equality on a grid edge along which all
/// caps hold robustly. Unknown when refinement up to max_grid does not
/// decide.
AvoidResult disc_avoids(const ShellSet& s, const PolyCurve& curve, double r = 1.0, int max_grid = 128);
inline AvoidResult disc_avoids(const ShellSet& s, const HorizontalDisc& disc, double r = 1.0, int max_grid = 128) {
  return disc_avoids(s, disc.curve, r, max_grid);
}

struct WLineHit {
  ComplexFloat zeta;
  int layer = 0;
  /// Relative layer-radius residual | |w(zeta)| / 2^(layer-1) - 1 |.
  double residual = 0.0;
};

/// A point of the W-line (w(zeta), x0, y0, z0) on the KW set. Layer i is the
/// least with 2^(i-1) > |y0|, 2^(i-1) > |w(0)| and 2^i >= |z0|; zeta is
/// bisected along the ray from 0 to a circle point where |w| exceeds
/// 2^(i-1). Throws PreconditionError for constant w or a non-KW set.
WLineHit wline_shell_intersection(const UPoly& w, const ExactPoint& base_xyz, const ShellSet& s);

}  // namespace engel
