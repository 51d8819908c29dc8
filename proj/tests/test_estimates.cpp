#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "engel/estimates.hpp"
#include "engel/sampling.hpp"

using namespace engel;

namespace {

GaussianRational q(long a, long b) { return Rational(a, b); }

/// max_k |v_k| / 2^t_k computed in doubles from hard-coded exponents.
double finsler_oracle(const ExactPoint& v, bool model_b, int n) {
  const double t[4] = {std::ldexp(1.0, n + 1), std::ldexp(1.0, n + 1),
                       std::ldexp(1.0, model_b ? 3 * n + 2 : 2 * n + 1),
                       std::ldexp(1.0, model_b ? 2 * n + 1 : n + 1)};
  double best = 0.0;
  for (int k = 0; k < 4; ++k) best = std::max(best, std::abs(v(k).to_complex()) / t[k]);
  return best;
}

/// Max of |u| over a dense circle sample of radius 1.
double circle_max(const UPoly& u) {
  const auto c = float_coeffs(u);
  double m = 0.0;
  for (int k = 0; k < 512; ++k) m = std::max(m, std::abs(horner(c, std::polar(1.0, 2 * std::numbers::pi * k / 512))));
  return m;
}

}  // namespace

TEST(CauchyBound, Examples) {
  for (int n = 0; n <= 20; ++n)
    EXPECT_EQ(cauchy_derivative_bound(std::ldexp(1.0, n), std::ldexp(1.0, -n)), std::ldexp(1.0, 2 * n));
  EXPECT_EQ(cauchy_derivative_bound(0.0, 3.0), 0.0);
  EXPECT_EQ(cauchy_derivative_bound(1.0, 1.0), 1.0);
  EXPECT_THROW(cauchy_derivative_bound(1.0, 0.0), std::domain_error);
  EXPECT_THROW(cauchy_derivative_bound(1.0, -1.0), std::domain_error);
  EXPECT_THROW(cauchy_derivative_bound(-1.0, 1.0), std::domain_error);
}

TEST(MinimalN0, Examples) {
  EXPECT_EQ(minimal_n0(ExactPoint::Zero(4)), 1);
  EXPECT_EQ(minimal_n0(make_point({q(3, 2), 0, 0, 0})), 1);
  EXPECT_EQ(minimal_n0(make_point({0, 2, 0, 0})), 2);
  EXPECT_EQ(minimal_n0(make_point({0, 0, GaussianRational(3, 4), 0})), 3);
  EXPECT_EQ(minimal_n0(make_point({0, 0, 0, 1024})), 11);
}

TEST(MinimalN0, IsLeastAdmissible) {
  Rng rng = stream(11, "minimal-n0");
  for (int t = 0; t < 200; ++t) {
    ExactPoint p = random_point(rng, 4, 50);
    const int n = minimal_n0(p);
    double sup = 0.0;
    for (int k = 0; k < 4; ++k) sup = std::max(sup, std::abs(p(k).to_complex()));
    EXPECT_LT(sup, std::ldexp(1.0, n));
    if (n > 1) EXPECT_GE(sup, std::ldexp(1.0, n - 1));
  }
}

TEST(LemmaThresholds, Values) {
  EXPECT_EQ(lemma_thresholds(LemmaModel::B, 1), (std::array<int, 4>{2, 2, 5, 3}));
  EXPECT_EQ(lemma_thresholds(LemmaModel::A, 1), (std::array<int, 4>{2, 2, 3, 2}));
  EXPECT_EQ(lemma_thresholds(LemmaModel::B, 4), (std::array<int, 4>{5, 5, 14, 9}));
  EXPECT_EQ(lemma_thresholds(LemmaModel::A, 4), (std::array<int, 4>{5, 5, 9, 5}));
}

TEST(FinslerLower, Examples) {
  const ExactPoint zero = ExactPoint::Zero(4);
  FinslerLower b = finsler_lower_bound(zero, make_point({0, 1, 0, 0}), LemmaModel::B);
  EXPECT_EQ(b.n0, 1);
  EXPECT_EQ(b.value_squared, Rational(1, 16));
  ASSERT_TRUE(b.exact.has_value());
  EXPECT_EQ(*b.exact, Rational(1, 4));
  EXPECT_DOUBLE_EQ(b.value(), 0.25);

  FinslerLower a = finsler_lower_bound(zero, make_point({1, 0, 0, 0}), LemmaModel::A);
  ASSERT_TRUE(a.exact.has_value());
  EXPECT_EQ(*a.exact, Rational(1, 4));

  FinslerLower v0 = finsler_lower_bound(make_point({1, 2, 3, 4}), ExactPoint::Zero(4), LemmaModel::B);
  EXPECT_EQ(v0.value_squared, 0);
  EXPECT_EQ(*v0.exact, 0);

  // |1 + i| / 4 is irrational.
  FinslerLower irr = finsler_lower_bound(zero, make_point({GaussianRational(1, 1), 0, 0, 0}), LemmaModel::A);
  EXPECT_FALSE(irr.exact.has_value());
  EXPECT_NEAR(irr.value(), std::sqrt(2.0) / 4, 1e-15);
}

TEST(FinslerLower, Preconditions) {
  const ExactPoint zero = ExactPoint::Zero(4);
  EXPECT_THROW(finsler_lower_bound(zero, make_point({0, 1, 1, 0}), LemmaModel::B), PreconditionError);
  EXPECT_THROW(finsler_lower_bound(make_point({0, 0, 0, 5}), make_point({0, 0, 0, 0}), LemmaModel::B, 2),
               PreconditionError);
  EXPECT_THROW(finsler_lower_bound(zero, zero, LemmaModel::B, 0), PreconditionError);
}

TEST(FinslerLower, MatchesFloatOracle) {
  Rng rng = stream(12, "finsler-oracle");
  for (int t = 0; t < 300; ++t) {
    auto [p, v] = random_d_direction(rng, 40);
    for (LemmaModel m : {LemmaModel::A, LemmaModel::B}) {
      FinslerLower f = finsler_lower_bound(p, v, m);
      const double oracle = finsler_oracle(v, m == LemmaModel::B, minimal_n0(p));
      EXPECT_NEAR(f.value(), oracle, 1e-12 * (1 + oracle));
      EXPECT_EQ(f.value_squared == 0, v == ExactPoint::Zero(4));
    }
  }
}

TEST(FinslerLower, HomogeneousExactly) {
  Rng rng = stream(13, "finsler-homogeneity");
  std::uniform_int_distribution<int> exp(-6, 6);
  const std::array<GaussianRational, 4> phases = {GaussianRational(1), GaussianRational(0, 1),
                                                  GaussianRational(Rational(3, 5), Rational(4, 5)), GaussianRational(-1)};
  for (int t = 0; t < 200; ++t) {
    auto [p, v] = random_d_direction(rng, 30);
    const int e = exp(rng);
    // Unit phases, so |lambda| = 2^e exactly.
    const GaussianRational lambda = phases[static_cast<std::size_t>(t) % phases.size()] * GaussianRational(dyadic(e));
    ExactPoint lv = v;
    for (auto& c : lv) c = c * lambda;
    for (LemmaModel m : {LemmaModel::A, LemmaModel::B}) {
      FinslerLower f = finsler_lower_bound(p, v, m), g = finsler_lower_bound(p, lv, m);
      EXPECT_EQ(g.value_squared, lambda.abs2() * f.value_squared);
      if (f.exact) {
        ASSERT_TRUE(g.exact.has_value());
        EXPECT_EQ(*g.exact, dyadic(e) * *f.exact);
      }
    }
  }
}

TEST(FinslerLower, NonIncreasingInN0) {
  Rng rng = stream(14, "finsler-monotone");
  for (int t = 0; t < 200; ++t) {
    auto [p, v] = random_d_direction(rng, 30);
    for (LemmaModel m : {LemmaModel::A, LemmaModel::B}) {
      Rational prev = finsler_lower_bound(p, v, m).value_squared;
      for (int n = minimal_n0(p) + 1; n <= minimal_n0(p) + 6; ++n) {
        const Rational cur = finsler_lower_bound(p, v, m, n).value_squared;
        EXPECT_LE(cur, prev);
        prev = cur;
      }
    }
  }
}

TEST(LemmaVerdict, RemarkLineSubShell) {
  HorizontalDisc line = remark_line(ExactPoint::Zero(4), make_point({0, q(1, 2), 0, 0}));
  for (LemmaModel m : {LemmaModel::A, LemmaModel::B}) {
    LemmaVerdict v = m == LemmaModel::B ? lemma_B_verdict(line, 1, ShellSet::B()) : lemma_A_verdict(line, 1, ShellSet::A());
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.n0, 1);
    EXPECT_EQ(v.bounds[0].observed, 0.0);
    EXPECT_EQ(v.bounds[1].observed, 0.5);
    EXPECT_EQ(v.bounds[1].coordinate, "x");
    EXPECT_EQ(v.bounds[2].observed, 0.0);
    EXPECT_EQ(v.bounds[3].observed, 0.0);
    for (const auto& b : v.bounds) EXPECT_TRUE(b.pass);
  }
}

TEST(LemmaVerdict, ConstantDiscPasses) {
  PolyCurve c(standard_ambient(), {UPoly({q(1, 3)}), UPoly({q(1, 5)}), UPoly({7}), UPoly({3})});
  HorizontalDisc d = make_disc(c, TangencyModel::DStandard);
  const int n0 = minimal_n0(d.basepoint);
  EXPECT_EQ(n0, 3);
  EXPECT_TRUE(lemma_B_verdict(d, n0, ShellSet::B()).pass);
  EXPECT_TRUE(lemma_A_verdict(d, n0, ShellSet::A()).pass);
}

TEST(LemmaVerdict, BoundaryCaseFailsStrictly) {
  // x' (0) = 2^(N0+1) exactly with N0 = 1.
  HorizontalDisc bx = remark_line(ExactPoint::Zero(4), make_point({0, 4, 0, 0}));
  LemmaVerdict v = lemma_verdict_unchecked(bx, 1, LemmaModel::B);
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(v.bounds[1].pass);
  EXPECT_TRUE(v.bounds[0].pass && v.bounds[2].pass && v.bounds[3].pass);
  // Just below the boundary passes.
  EXPECT_TRUE(lemma_verdict_unchecked(remark_line(ExactPoint::Zero(4), make_point({0, q(399, 100), 0, 0})), 1,
                                      LemmaModel::B).pass);

  // z'(0) = 2^(N0+1) for A at N0 = 1: w0 = 2, v_x = 2 gives v_z = 4.
  HorizontalDisc bz = remark_line(make_point({q(3, 2), 0, 0, 0}), make_point({0, q(8, 3), 0, 4}));
  LemmaVerdict a = lemma_verdict_unchecked(bz, 1, LemmaModel::A);
  EXPECT_FALSE(a.bounds[3].pass);
  EXPECT_FALSE(a.pass);
  EXPECT_TRUE(lemma_verdict_unchecked(bz, 1, LemmaModel::B).bounds[3].pass);
}

TEST(LemmaVerdict, PreconditionsNameTheHypothesis) {
  HorizontalDisc big = remark_line(ExactPoint::Zero(4), make_point({0, 4, 0, 0}));
  try {
    lemma_B_verdict(big, 1, ShellSet::B());
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("not certified to avoid B"), std::string::npos);
  }
  HorizontalDisc line = remark_line(make_point({0, 0, 0, 3}), make_point({0, q(1, 2), q(3, 2), 0}));
  try {
    lemma_B_verdict(line, 1, ShellSet::B());
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("|z(0)|"), std::string::npos);
  }
  EXPECT_THROW(lemma_B_verdict(line, 2, ShellSet::A()), PreconditionError);
  EXPECT_THROW(lemma_A_verdict(line, 2, ShellSet::B()), PreconditionError);

  PolyCurve off(standard_ambient(), {UPoly(), UPoly::zeta(), UPoly::zeta(), UPoly()});
  EXPECT_THROW(lemma_verdict_unchecked(make_disc(off, TangencyModel::DStandard), 1, LemmaModel::B), PreconditionError);
}

TEST(CertifiedInjective, Examples) {
  auto curve = [](UPoly x) { return PolyCurve(standard_ambient(), {UPoly(), std::move(x), UPoly(), UPoly()}); };
  EXPECT_TRUE(certified_injective(curve(UPoly::zeta())));
  EXPECT_FALSE(certified_injective(curve(UPoly({0, 0, 1}))));
  EXPECT_TRUE(certified_injective(curve(UPoly({0, 1, q(1, 4)}))));
  // 1 = 2 * 1/2: the sufficient test is strict.
  EXPECT_FALSE(certified_injective(curve(UPoly({0, 1, q(1, 2)}))));
  EXPECT_FALSE(certified_injective(curve(UPoly({5}))));
}

TEST(CertifiedInjective, NoCollisionsOnGrid) {
  Rng rng = stream(15, "injective");
  int seen = 0;
  for (int t = 0; t < 3000 && seen < 40; ++t) {
    UPoly x = random_upoly(rng, 3, 9);
    PolyCurve c(standard_ambient(), {UPoly(), x, UPoly(), UPoly()});
    if (!certified_injective(c)) continue;
    ++seen;
    // Distinct grid points map to distinct values: |x(a) - x(b)| >= m |a - b| with m > 0.
    const auto fc = float_coeffs(x);
    std::vector<ComplexFloat> pts;
    for (int i = -6; i <= 6; ++i)
      for (int j = -6; j <= 6; ++j)
        if (i * i + j * j <= 36) pts.emplace_back(i / 6.0, j / 6.0);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        EXPECT_GT(std::abs(horner(fc, pts[a]) - horner(fc, pts[b])), 0.0);
  }
  EXPECT_GT(seen, 10);
}

TEST(SampleDisc, RegimesAreCertifiedAndTangent) {
  const auto forms = standard_d_forms();
  for (LemmaModel m : {LemmaModel::A, LemmaModel::B}) {
    Rng rng = stream(16, "sample-" + to_string(m));
    int crossing_reaches_shell = 0;
    for (int t = 0; t < 60; ++t) {
      const DiscRegime regime = t % 2 == 0 ? DiscRegime::SubShell : DiscRegime::Crossing;
      HorizontalDisc d = sample_disc(rng, m, regime, 4);
      EXPECT_TRUE(verify_tangency(d.curve, forms).tangent);
      EXPECT_EQ(disc_avoids(obstacle_for(m), d).status, AvoidStatus::Certified) << to_string(regime);
      double block = std::max(circle_max(d.curve[0]), circle_max(d.curve[1]));
      if (m == LemmaModel::A) block = std::max(block, circle_max(d.curve[3]));
      if (regime == DiscRegime::SubShell) EXPECT_LT(block, 1.0);
      else if (block >= 1.0) ++crossing_reaches_shell;
    }
    EXPECT_GE(crossing_reaches_shell, 20) << to_string(m);
  }
}

TEST(LemmaSuite, NoCounterexamples) {
  for (LemmaModel m : {LemmaModel::A, LemmaModel::B}) {
    LemmaSuiteResult r = run_lemma_suite(m, 200, 0x5eed);
    EXPECT_EQ(r.samples.size(), 200u);
    EXPECT_EQ(r.uncertified, 0);
    EXPECT_EQ(r.counterexamples, 0);
    EXPECT_EQ(r.injective_counterexamples, 0);
    EXPECT_GT(r.injective, 0);
    for (const auto& s : r.samples) EXPECT_EQ(s.verdict.n0, minimal_n0(s.disc.basepoint));
  }
}

TEST(LemmaSuite, Deterministic) {
  LemmaSuiteResult a = run_lemma_suite(LemmaModel::B, 30, 7), b = run_lemma_suite(LemmaModel::B, 30, 7);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].disc.curve, b.samples[i].disc.curve);
    EXPECT_EQ(a.samples[i].attempts, b.samples[i].attempts);
  }
}
