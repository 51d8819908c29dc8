#include <gtest/gtest.h>

#include "engel/linalg.hpp"
#include "engel/sampling.hpp"
#include "engel/transport.hpp"

using namespace engel;

namespace {

const Ambient& A() { return standard_ambient(); }
MultiPoly var(const char* n) { return MultiPoly::variable(A(), n); }
VectorField d(const char* n) { return VectorField::coordinate(A(), n); }

PolyAutomorphism random_automorphism(Rng& rng, int count) { return random_automorphism(rng, A(), count, 2, 4); }

/// Solves D Phi(p) u = X(Phi(p)) pointwise; no use of the inverse map.
ExactPoint pointwise_pullback(const PolyAutomorphism& phi, const VectorField& x, const ExactPoint& p) {
  const PolyMatrix j = phi.jacobian();
  MatrixX<GaussianRational> m(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = evaluate(j[r][c], p);
  ExactPoint image(4);
  for (int k = 0; k < 4; ++k) image(k) = evaluate(phi.forward()[k], p);
  return *exact_solve(m, x.evaluate(image));
}

bool proportional(const VectorField& a, const VectorField& b) {
  const std::vector<VectorField> v = {a, b};
  return generic_rank(v) == 1;
}

}  // namespace

TEST(Shear, Examples) {
  PolyAutomorphism s1 = make_shear(A(), "w", var("x") * var("x"));
  EXPECT_EQ(s1.inverse()[0], var("w") - var("x") * var("x"));
  EXPECT_EQ(s1.forward()[0], var("w") + var("x") * var("x"));
  PolyAutomorphism s2 = make_shear(A(), "y", var("w") * var("z"));
  EXPECT_EQ(s2.inverse()[2], var("y") - var("w") * var("z"));
  PolyAutomorphism both = s2.after(s1);
  const PolyMap id = PolyMap::identity(A());
  EXPECT_EQ(compose(both.forward(), both.inverse()), id);
  EXPECT_EQ(compose(both.inverse(), both.forward()), id);
  EXPECT_EQ(both.shears().size(), 2u);
  EXPECT_THROW(make_shear(A(), "w", var("w") * var("x")), PreconditionError);
  EXPECT_THROW(PolyAutomorphism(s1.forward(), s1.forward()), std::invalid_argument);
}

TEST(Shear, RandomCompositionsAreUnimodular) {
  Rng rng = stream(31, "shear-det");
  const PolyMap id = PolyMap::identity(A());
  for (int t = 0; t < 50; ++t) {
    PolyAutomorphism phi = random_automorphism(rng, 1 + t % 5);
    EXPECT_EQ(phi.jacobian_determinant(), MultiPoly::constant(A(), 1));
    EXPECT_EQ(compose(phi.forward(), phi.inverse()), id);
    EXPECT_EQ(compose_shears(A(), phi.shears()).forward(), phi.forward());
  }
}

TEST(PullbackField, Examples) {
  PolyAutomorphism s = make_shear(A(), "w", var("x") * var("x"));
  EXPECT_EQ(pullback_field(s, d("w")), d("w"));
  EXPECT_EQ(pullback_field(s, d("x")), d("x") - MultiPoly::constant(A(), 2) * var("x") * d("w"));
  Rng rng = stream(32, "pullback-id");
  VectorField x = random_field(rng, A(), 3, 4, 9);
  EXPECT_EQ(pullback_field(PolyAutomorphism::identity(A()), x), x);
}

TEST(PullbackField, MatchesPointwiseSolve) {
  Rng rng = stream(33, "pullback-pointwise");
  for (int t = 0; t < 50; ++t) {
    PolyAutomorphism phi = random_automorphism(rng, 1 + t % 3);
    VectorField x = random_field(rng, A(), 2, 3, 5);
    ExactPoint p = random_point(rng, 4, 5);
    EXPECT_EQ(pullback_field(phi, x).evaluate(p), pointwise_pullback(phi, x, p));
  }
}

TEST(PullbackField, Functorial) {
  Rng rng = stream(34, "pullback-functorial");
  for (int t = 0; t < 50; ++t) {
    PolyAutomorphism phi = random_automorphism(rng, 2), psi = random_automorphism(rng, 2);
    VectorField x = random_field(rng, A(), 2, 3, 5);
    EXPECT_EQ(pullback_field(phi.after(psi), x), pullback_field(psi, pullback_field(phi, x)));
  }
}

TEST(PullbackField, BracketNaturality) {
  Rng rng = stream(35, "pullback-bracket");
  for (int t = 0; t < 50; ++t) {
    PolyAutomorphism phi = random_automorphism(rng, 1 + t % 5);
    VectorField x = random_field(rng, A(), 2, 3, 5), y = random_field(rng, A(), 2, 3, 5);
    EXPECT_EQ(pullback_field(phi, lie_bracket(x, y)), lie_bracket(pullback_field(phi, x), pullback_field(phi, y)));
  }
}

TEST(PullbackFlag, Examples) {
  const EngelFlag st = std::get<EngelFlag>(check_engel(standard_engel_frame()));
  EngelFlag same = pullback_flag(PolyAutomorphism::identity(A()), st);
  EXPECT_EQ(same.w, st.w);
  EXPECT_EQ(same.e_form, st.e_form);

  PolyAutomorphism s = make_shear(A(), "w", var("x") * var("x"));
  EngelFlag f = pullback_flag(s, st);
  EXPECT_TRUE(proportional(f.w, pullback_field(s, d("w"))));
  for (const auto& x : f.d.fields()) EXPECT_TRUE(pair(f.e_form, x).is_zero());
}

TEST(PullbackFlag, RandomCompositionsStayEngel) {
  Rng rng = stream(36, "pullback-flag");
  const EngelFlag st = std::get<EngelFlag>(check_engel(standard_engel_frame()));
  for (int t = 0; t < 50; ++t) {
    PolyAutomorphism phi = random_automorphism(rng, 1 + t % 5);
    EXPECT_LE(phi.forward().max_degree(), 8);
    EngelFlag f = pullback_flag(phi, st);
    EXPECT_TRUE(proportional(f.w, pullback_field(phi, st.w)));
  }
}

TEST(CartanProlong, StandardChartZero) {
  DistributionFrame p = cartan_prolong(standard_contact_frame(), standard_contact_form(), ProlongChart::Zero);
  const Ambient& b = p.ambient();
  EXPECT_EQ(b.names(), (std::vector<std::string>{"x", "y", "z", "t"}));
  const MultiPoly t = MultiPoly::variable(b, "t"), z = MultiPoly::variable(b, "z");
  const VectorField expected = VectorField::coordinate(b, "z") +
                               t * (VectorField::coordinate(b, "x") + z * VectorField::coordinate(b, "y"));
  EXPECT_EQ(p.fields()[0], VectorField::coordinate(b, "t"));
  EXPECT_EQ(p.fields()[1], expected);
}

TEST(CartanProlong, BothChartsAreEngelWithFiberCharacteristic) {
  for (ProlongChart c : {ProlongChart::Zero, ProlongChart::Infinity}) {
    DistributionFrame p = cartan_prolong(standard_contact_frame(), standard_contact_form(), c);
    const EngelCheck check = check_engel(p);
    ASSERT_TRUE(std::holds_alternative<EngelFlag>(check)) << std::get<EngelFailure>(check).stage;
    EXPECT_TRUE(proportional(std::get<EngelFlag>(check).w, VectorField::coordinate(p.ambient(), fiber_name(c))));
  }
}

TEST(CartanProlong, ChartsAgreeOnOverlap) {
  DistributionFrame p0 = cartan_prolong(standard_contact_frame(), standard_contact_form(), ProlongChart::Zero);
  DistributionFrame pi = cartan_prolong(standard_contact_frame(), standard_contact_form(), ProlongChart::Infinity);
  Rng rng = stream(37, "charts");
  for (int k = 0; k < 50; ++k) {
    ExactPoint p = random_point(rng, 3, 9);
    ExactPoint q(4);
    q << p(0), p(1), p(2), random_nonzero_gaussian(rng, 9);
    EXPECT_TRUE(charts_agree_at(p0, pi, q));
  }
  // A chart-infinity frame with the wrong tangent field disagrees.
  const Ambient& b = pi.ambient();
  DistributionFrame wrong({pi.fields()[0], VectorField::coordinate(b, "z")}, 2);
  EXPECT_FALSE(charts_agree_at(p0, wrong, make_point({0, 0, 0, 1})));
  EXPECT_THROW(charts_agree_at(p0, pi, make_point({1, 2, 3, 0})), PreconditionError);
}

TEST(CartanProlong, RejectsNonContact) {
  const Ambient xyz{"x", "y", "z"};
  DistributionFrame flat({VectorField::coordinate(xyz, "x"), VectorField::coordinate(xyz, "z")}, 2);
  EXPECT_THROW(cartan_prolong(flat, DiffForm::coordinate(xyz, "y"), ProlongChart::Zero), PreconditionError);
  EXPECT_THROW(cartan_prolong(flat, standard_contact_form(), ProlongChart::Zero), PreconditionError);
}

TEST(CartanProlong, ProjectionsOfTangentCurvesAreContact) {
  DistributionFrame p0 = cartan_prolong(standard_contact_frame(), standard_contact_form(), ProlongChart::Zero);
  const EngelFlag flag = std::get<EngelFlag>(check_engel(p0));
  const std::vector<DiffForm> alpha = {standard_contact_form()};
  Rng rng = stream(38, "prolong-curves");
  for (int k = 0; k < 50; ++k) {
    // x' = t z', y' = z x' with z, t free.
    const UPoly z = random_upoly(rng, 3, 7), t = random_upoly(rng, 3, 7);
    const UPoly x = antiderivative_zeta(t * z.derivative()) + UPoly({random_gaussian(rng, 7)});
    const UPoly y = antiderivative_zeta(z * x.derivative()) + UPoly({random_gaussian(rng, 7)});
    const PolyCurve lifted(p0.ambient(), {x, y, z, t});
    ASSERT_TRUE(verify_tangency(lifted, flag.d_forms).tangent);
    EXPECT_TRUE(verify_tangency(project_prolongation(lifted), alpha).tangent);
  }
}
