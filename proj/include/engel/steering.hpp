#pragma once

#include <vector>

#include "engel/horizontal.hpp"

namespace engel {

/// One piece of a horizontal path: the curve on the real interval [t0, t1].
struct PathSegment {
  PolyCurve curve;
  Rational t0{0};
  Rational t1{1};

  ExactPoint start() const { return curve.evaluate(GaussianRational(t0)); }
  ExactPoint end() const { return curve.evaluate(GaussianRational(t1)); }
};

/// Piecewise polynomial path tangent to the tagged model.
struct HorizontalPath {
  std::vector<PathSegment> segments;
  TangencyModel model = TangencyModel::DStandard;
};

/// The 2-jet (y, y', y'') of a graph over x; a point (w, x, y, z) of the
/// standard model carries the jet (y, z, w).
struct Jet2 {
  GaussianRational value;
  GaussianRational first;
  GaussianRational second;

  friend bool operator==(const Jet2&, const Jet2&) = default;
};

Jet2 jet_of(const ExactPoint& p);

/// The segment t -> (y''(x(t)), x(t), y(x(t)), y'(x(t))) with
/// x(t) = x0 + t (x1 - x0), t in [0, 1]. Throws PreconditionError if x0 = x1.
PathSegment jet_lift(const UPoly& yx, const GaussianRational& x0, const GaussianRational& x1);

/// The unique polynomial of degree <= 5 in x with jet j0 at x0 and j1 at x1.
/// Throws PreconditionError if x0 = x1.
UPoly hermite_quintic(const GaussianRational& x0, const Jet2& j0, const GaussianRational& x1, const Jet2& j1);

/// A D-tangent path from p to q. One Hermite segment when x_p != x_q;
/// otherwise two segments through a waypoint at x_p + 1 carrying the average
/// of the two endpoint jets.
HorizontalPath hermite_steer(const ExactPoint& p, const ExactPoint& q);

/// Exact start, end and continuity check; an empty path connects p to p.
bool path_endpoint_check(const HorizontalPath& path, const ExactPoint& p, const ExactPoint& q);

/// Every segment passes verify_tangency for the model's forms.
bool path_tangent(const HorizontalPath& path);

/// The same trace run backwards: segments in reverse order, each
/// reparametrized by t -> t0 + t1 - t.
HorizontalPath reverse(const HorizontalPath& path);

}  // namespace engel
