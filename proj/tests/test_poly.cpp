#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "engel/horizontal.hpp"
#include "engel/poly.hpp"
#include "engel/sampling.hpp"

using namespace engel;

namespace {

const Ambient& A() { return standard_ambient(); }
MultiPoly var(const char* n) { return MultiPoly::variable(A(), n); }
MultiPoly cst(const GaussianRational& c) { return MultiPoly::constant(A(), c); }
GaussianRational q(long a, long b) { return Rational(a, b); }

}  // namespace

TEST(PolyArith, Examples) {
  EXPECT_EQ(var("z") * var("x"), MultiPoly::monomial(A(), {0, 1, 0, 1}));
  EXPECT_EQ((var("y") + var("z") * var("x")) - var("z") * var("x"), var("y"));
  EXPECT_EQ(pow(cst(1) + var("w"), 2), cst(1) + cst(2) * var("w") + var("w") * var("w"));
  EXPECT_TRUE((var("x") - var("x")).is_zero());
  EXPECT_EQ(scale(var("x"), 0).term_count(), 0u);
}

TEST(PolyArith, AmbientMismatchThrows) {
  Ambient other{"x", "y", "z", "t"};
  EXPECT_THROW(poly_arith(var("x"), MultiPoly::variable(other, "x"), PolyOp::Add), AmbientError);
  EXPECT_THROW(MultiPoly::variable(A(), "q"), AmbientError);
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(var("w") * var("z"), "w"), var("z"));
  EXPECT_TRUE(differentiate(cst(7), "x").is_zero());
  EXPECT_EQ(differentiate(var("z") * var("z") * var("x"), "z"), cst(2) * var("z") * var("x"));
  EXPECT_THROW(differentiate(var("z"), "t"), AmbientError);
}

TEST(Antiderivative, Examples) {
  EXPECT_EQ(antiderivative_zeta(UPoly({0, 0, 1})), UPoly({0, 0, 0, q(1, 3)}));
  EXPECT_TRUE(antiderivative_zeta(UPoly()).is_zero());
  // Integrand z x' of the explicit line: v_x v_z + v_x^2 v_w zeta.
  const GaussianRational vx(3), vz(5), vw(-2);
  UPoly integrand({vx * vz, vx * vx * vw});
  EXPECT_EQ(antiderivative_zeta(integrand), UPoly({0, vx * vz, vx * vx * vw * q(1, 2)}));
}

TEST(Antiderivative, InvertsDerivativeOnRandomInputs) {
  Rng rng = stream(3, "antiderivative");
  for (int t = 0; t < 200; ++t) {
    UPoly u = random_upoly(rng, 7, 15);
    EXPECT_EQ(antiderivative_zeta(u).derivative(), u);
  }
}

TEST(ComposeCurve, Examples) {
  PolyCurve xline(A(), {UPoly(), UPoly::zeta(), UPoly(), UPoly()});
  EXPECT_TRUE(compose_curve(var("y") - var("z") * var("x"), xline).is_zero());
  EXPECT_EQ(compose_curve(var("x"), xline), UPoly::zeta());
  ExactPoint zero = ExactPoint::Zero(4);
  ExactPoint v = make_point({0, 1, 0, 0});
  EXPECT_TRUE(compose_curve(var("z") * var("x"), remark_line(zero, v).curve).is_zero());
}

TEST(ComposeCurve, DistributesOverProducts) {
  Rng rng = stream(4, "compose-curve");
  for (int t = 0; t < 100; ++t) {
    MultiPoly p = random_multipoly(rng, A(), 3, 4, 6), r = random_multipoly(rng, A(), 3, 4, 6);
    PolyCurve g(A(), {random_upoly(rng, 2, 5), random_upoly(rng, 2, 5), random_upoly(rng, 2, 5),
                      random_upoly(rng, 2, 5)});
    EXPECT_EQ(compose_curve(p * r, g), compose_curve(p, g) * compose_curve(r, g));
    EXPECT_EQ(compose_curve(p + r, g), compose_curve(p, g) + compose_curve(r, g));
  }
}

TEST(ComposeCurve, MatchesCoordinatesByName) {
  Ambient xyz{"x", "y", "z"};
  PolyCurve g(A(), {UPoly({9}), UPoly::zeta(), UPoly({2}), UPoly({0, 0, 1})});
  MultiPoly p = MultiPoly::variable(xyz, "z") * MultiPoly::variable(xyz, "x");
  EXPECT_EQ(compose_curve(p, g), UPoly({0, 0, 0, 1}));
  Ambient bad{"x", "t"};
  EXPECT_THROW(compose_curve(MultiPoly::variable(bad, "t"), g), AmbientError);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(var("y") - var("z") * var("x"), make_point({5, 1, 2, 2})), GaussianRational(0));
  EXPECT_EQ(evaluate(var("w"), make_point({1, 0, 0, 0})), GaussianRational(1));
  EXPECT_EQ(evaluate(var("z") - var("w") * var("x"), make_point({1, 1, 0, 1})), GaussianRational(0));
  FloatPoint fp(4);
  fp << 5.0, 1.0, 2.0, 2.0;
  EXPECT_EQ(evaluate(var("y") - var("z") * var("x"), fp), ComplexFloat(0.0));
  EXPECT_THROW(evaluate(var("w"), make_point({1, 2})), AmbientError);
}

TEST(Evaluate, ExactAndFloatAgree) {
  Rng rng = stream(5, "evaluate");
  for (int t = 0; t < 100; ++t) {
    MultiPoly p = random_multipoly(rng, A(), 4, 6, 9);
    ExactPoint pt = random_point(rng, 4, 5);
    const ComplexFloat exact = evaluate(p, pt).to_complex();
    const ComplexFloat fl = evaluate(p, to_float(pt));
    EXPECT_NEAR(std::abs(exact - fl), 0.0, 1e-9 * (1.0 + std::abs(exact)));
  }
}

TEST(SupOnCircle, Examples) {
  auto s = sup_on_circle(UPoly::zeta(), 1.0, 64);
  EXPECT_DOUBLE_EQ(s.numeric_max, 1.0);
  EXPECT_GE(s.certified_upper, 1.0);

  auto c = sup_on_circle(UPoly::constant(GaussianRational(3, 4)), 2.0, 16);
  EXPECT_DOUBLE_EQ(c.numeric_max, 5.0);
  EXPECT_DOUBLE_EQ(c.certified_upper, 5.0);

  // Dense sampling oracle for zeta^2 + 1 on the unit circle.
  double dense = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const ComplexFloat z = std::polar(1.0, 2.0 * std::numbers::pi * k / 100000.0);
    dense = std::max(dense, std::abs(z * z + 1.0));
  }
  auto u = sup_on_circle(UPoly({1, 0, 1}), 1.0, 64);
  EXPECT_NEAR(u.numeric_max, dense, 1e-12);
  EXPECT_NEAR(u.numeric_max, 2.0, 1e-12);
  EXPECT_GE(u.certified_upper, 2.0);
  EXPECT_LE(u.certified_upper, 2.2);
}

TEST(SupOnCircle, CertifiedBoundDominatesAndTightens) {
  Rng rng = stream(6, "sup-circle");
  std::uniform_real_distribution<double> rad(0.1, 2.0);
  for (int t = 0; t < 100; ++t) {
    UPoly u = random_upoly(rng, 6, 9);
    const double r = rad(rng);
    double dense = 0.0;
    const auto fc = float_coeffs(u);
    for (int k = 0; k < 20000; ++k) dense = std::max(dense, std::abs(horner(fc, std::polar(r, 2 * std::numbers::pi * k / 20000.0))));
    double prev = INFINITY;
    for (int samples = 8; samples <= 1024; samples *= 2) {
      auto s = sup_on_circle(u, r, samples);
      EXPECT_GE(s.certified_upper, s.numeric_max);
      EXPECT_GE(s.certified_upper, dense * (1 - 1e-12));
      EXPECT_LE(s.certified_upper, prev * (1 + 1e-12));
      prev = s.certified_upper;
    }
  }
}

TEST(PolyMap, ComposeWithIdentity) {
  Rng rng = stream(7, "polymap");
  PolyMap id = PolyMap::identity(A());
  for (int t = 0; t < 50; ++t) {
    MultiPoly p = random_multipoly(rng, A(), 3, 5, 7);
    EXPECT_EQ(compose(p, id), p);
  }
}

TEST(PolyMap, ComposeSubstitutes) {
  // F(w,x,y,z) = (w + x^2, x, y, z); p = w  ->  w + x^2.
  PolyMap f(A(), A(), {var("w") + var("x") * var("x"), var("x"), var("y"), var("z")});
  EXPECT_EQ(compose(var("w") * var("w"), f), pow(var("w") + var("x") * var("x"), 2));
  PolyMap ff = compose(f, f);
  EXPECT_EQ(ff[0], var("w") + cst(2) * var("x") * var("x"));
}

TEST(PolyCurve, ReparametrizeAndBasepoint) {
  PolyCurve g(A(), {UPoly({1, 1}), UPoly({0, 0, 1}), UPoly(), UPoly({2})});
  PolyCurve h = g.reparametrize(2, 1);
  EXPECT_EQ(h[0], UPoly({2, 2}));
  EXPECT_EQ(h[1], UPoly({1, 4, 4}));
  EXPECT_EQ(h.basepoint(), make_point({2, 1, 0, 2}));
  EXPECT_EQ(g.max_degree(), 2);
}

TEST(UPoly, ComposeAgreesWithEvaluation) {
  Rng rng = stream(8, "upoly-compose");
  for (int t = 0; t < 100; ++t) {
    UPoly a = random_upoly(rng, 4, 7), b = random_upoly(rng, 3, 7);
    GaussianRational s = random_gaussian(rng, 5);
    EXPECT_EQ(a.compose(b).evaluate(s), a.evaluate(b.evaluate(s)));
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
  }
}

TEST(Gcd, RecoversPlantedFactor) {
  Rng rng = stream(9, "gcd");
  for (int t = 0; t < 60; ++t) {
    MultiPoly g = random_multipoly(rng, A(), 2, 3, 5);
    MultiPoly a = random_multipoly(rng, A(), 2, 3, 5), b = random_multipoly(rng, A(), 2, 3, 5);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    MultiPoly h = gcd(g * a, g * b);
    EXPECT_TRUE(divide_exact(g * a, h).has_value());
    EXPECT_TRUE(divide_exact(g * b, h).has_value());
    EXPECT_TRUE(divide_exact(h, g).has_value()) << "gcd " << h << " misses factor " << g;
    EXPECT_EQ(h.leading_coefficient(), GaussianRational(1));
  }
}

TEST(Gcd, Examples) {
  const MultiPoly x = var("x"), y = var("y");
  EXPECT_EQ(gcd(x * x - y * y, x * x + cst(2) * x * y + y * y), x + y);
  EXPECT_EQ(gcd(x, y), cst(1));
  EXPECT_EQ(gcd(cst(3), cst(0)), cst(1));
  EXPECT_TRUE(gcd(MultiPoly(A()), MultiPoly(A())).is_zero());
  EXPECT_FALSE(divide_exact(x, y).has_value());
  EXPECT_EQ(*divide_exact(x * y + x, x), y + cst(1));
}

TEST(Gcd, DivisorAndVariableFreeFactors) {
  const MultiPoly w = var("w"), x = var("x"), y = var("y"), z = var("z");
  const MultiPoly f = x * x + cst(3) * y * z - w;
  // One argument divides the other.
  EXPECT_EQ(gcd(f * (z + cst(2)) * (w - y), cst(2) * f), f);
  // The gcd is free of y although both arguments involve it.
  EXPECT_EQ(gcd((x + z) * (y + cst(1)), (x + z) * (y + cst(2))), x + z);
  EXPECT_EQ(gcd(w * x * (y - z), x * x * (y + z)), x);
}
