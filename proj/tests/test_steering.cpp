#include <gtest/gtest.h>

#include "engel/sampling.hpp"
#include "engel/steering.hpp"

using namespace engel;

namespace {

GaussianRational q(long a, long b) { return Rational(a, b); }

Jet2 jet_at(const UPoly& y, const GaussianRational& x) {
  return {y.evaluate(x), y.derivative().evaluate(x), y.derivative().derivative().evaluate(x)};
}

void expect_valid(const HorizontalPath& path, const ExactPoint& p, const ExactPoint& r) {
  EXPECT_TRUE(path_endpoint_check(path, p, r)) << format_point(p) << " -> " << format_point(r);
  EXPECT_TRUE(path_tangent(path));
}

}  // namespace

TEST(JetLift, Examples) {
  PathSegment line = jet_lift(UPoly(), 0, 1);
  EXPECT_EQ(line.curve, PolyCurve(standard_ambient(), {UPoly(), UPoly::zeta(), UPoly(), UPoly()}));

  PathSegment para = jet_lift(UPoly({0, 0, q(1, 2)}), 0, 1);
  EXPECT_EQ(para.curve.component("w"), UPoly({1}));
  EXPECT_EQ(para.curve.component("z"), para.curve.component("x"));
  EXPECT_TRUE(verify_tangency(para.curve, standard_d_forms()).tangent);

  EXPECT_THROW(jet_lift(UPoly::zeta(), 2, 2), PreconditionError);
}

TEST(JetLift, TangentForRandomGraphs) {
  Rng rng = stream(21, "jet-lift");
  for (int t = 0; t < 100; ++t) {
    UPoly y = random_upoly(rng, 6, 9);
    const GaussianRational x0 = random_gaussian(rng, 9), x1 = x0 + random_nonzero_gaussian(rng, 9);
    PathSegment s = jet_lift(y, x0, x1);
    EXPECT_TRUE(verify_tangency(s.curve, standard_d_forms()).tangent);
    EXPECT_EQ(jet_of(s.start()), jet_at(y, x0));
    EXPECT_EQ(jet_of(s.end()), jet_at(y, x1));
  }
}

TEST(HermiteQuintic, UnitExample) {
  UPoly y = hermite_quintic(0, {0, 0, 0}, 1, {1, 1, 1});
  EXPECT_EQ(y, UPoly({0, 0, 0, q(13, 2), -9, q(7, 2)}));
}

TEST(HermiteQuintic, ReproducesJets) {
  Rng rng = stream(22, "hermite");
  for (int t = 0; t < 100; ++t) {
    const GaussianRational x0 = random_gaussian(rng, 9), x1 = x0 + random_nonzero_gaussian(rng, 9);
    const Jet2 j0{random_gaussian(rng, 9), random_gaussian(rng, 9), random_gaussian(rng, 9)};
    const Jet2 j1{random_gaussian(rng, 9), random_gaussian(rng, 9), random_gaussian(rng, 9)};
    UPoly y = hermite_quintic(x0, j0, x1, j1);
    EXPECT_LE(y.degree(), 5);
    EXPECT_EQ(jet_at(y, x0), j0);
    EXPECT_EQ(jet_at(y, x1), j1);
  }
  // A quintic is its own interpolant.
  UPoly y = random_upoly(rng, 5, 9);
  EXPECT_EQ(hermite_quintic(q(1, 3), jet_at(y, q(1, 3)), -2, jet_at(y, -2)), y);
}

TEST(HermiteSteer, Examples) {
  const ExactPoint zero = ExactPoint::Zero(4);
  HorizontalPath xl = hermite_steer(zero, make_point({0, 1, 0, 0}));
  ASSERT_EQ(xl.segments.size(), 1u);
  EXPECT_EQ(xl.segments[0].curve, PolyCurve(standard_ambient(), {UPoly(), UPoly::zeta(), UPoly(), UPoly()}));

  const ExactPoint ones = make_point({1, 1, 1, 1});
  HorizontalPath u = hermite_steer(zero, ones);
  ASSERT_EQ(u.segments.size(), 1u);
  EXPECT_EQ(u.segments[0].curve.component("y"), UPoly({0, 0, 0, q(13, 2), -9, q(7, 2)}));
  expect_valid(u, zero, ones);

  const ExactPoint wpt = make_point({1, 0, 0, 0});
  HorizontalPath d = hermite_steer(zero, wpt);
  ASSERT_EQ(d.segments.size(), 2u);
  EXPECT_EQ(d.segments[0].end()(1), GaussianRational(1));
  expect_valid(d, zero, wpt);
}

TEST(HermiteSteer, RandomPairs) {
  Rng rng = stream(23, "steer");
  for (int t = 0; t < 100; ++t) {
    const ExactPoint p = random_point(rng, 4, 12);
    ExactPoint r = random_point(rng, 4, 12);
    if (t % 10 == 0) r(1) = p(1);
    HorizontalPath path = hermite_steer(p, r);
    expect_valid(path, p, r);
    EXPECT_EQ(path.segments.size(), p(1) == r(1) ? 2u : 1u);
    for (const auto& s : path.segments) {
      EXPECT_LE(s.curve.component("y").degree(), 5);
      EXPECT_LE(s.curve.component("z").degree(), 4);
      EXPECT_LE(s.curve.component("w").degree(), 3);
    }
    expect_valid(reverse(path), r, p);
  }
}

TEST(HermiteSteer, SamePointUsesDetour) {
  const ExactPoint p = make_point({q(1, 2), 3, -1, GaussianRational(0, 2)});
  HorizontalPath path = hermite_steer(p, p);
  EXPECT_EQ(path.segments.size(), 2u);
  expect_valid(path, p, p);
}

TEST(PathEndpointCheck, Examples) {
  const ExactPoint p = make_point({0, 0, 0, 0}), r = make_point({1, 2, 3, 4});
  HorizontalPath path = hermite_steer(p, r);
  EXPECT_TRUE(path_endpoint_check(path, p, r));
  EXPECT_FALSE(path_endpoint_check(path, r, p));

  HorizontalPath bent = path;
  const PolyCurve& c = bent.segments.back().curve;
  bent.segments.back().curve = PolyCurve(c.ambient(), {c[0], c[1], c[2] + UPoly({0, q(1, 1000)}), c[3]});
  EXPECT_FALSE(path_endpoint_check(bent, p, r));

  HorizontalPath empty;
  EXPECT_TRUE(path_endpoint_check(empty, r, r));
  EXPECT_FALSE(path_endpoint_check(empty, p, r));

  HorizontalPath two = hermite_steer(p, make_point({5, 0, 1, 1}));
  two.segments[1] = jet_lift(UPoly(), 7, 0);
  EXPECT_FALSE(path_endpoint_check(two, p, two.segments[1].end()));
}
