#include <gtest/gtest.h>

#include <cmath>

#include "engel/kobayashi.hpp"

using namespace engel;

namespace {

GaussianRational q(long a, long b) { return Rational(a, b); }

ExactPoint point(GaussianRational w, GaussianRational x, GaussianRational y, GaussianRational z) {
  ExactPoint p(4);
  p << w, x, y, z;
  return p;
}

ExactPoint scaled(const ExactPoint& v, const GaussianRational& c) {
  ExactPoint out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = c * v(k);
  return out;
}

double norm(const ExactPoint& v) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) s += v(k).abs2().get_d();
  return std::sqrt(s);
}

SearchConfig small_config() {
  SearchConfig cfg;
  cfg.restarts = 2;
  cfg.iterations = 40;
  return cfg;
}

const ExactPoint kOrigin = ExactPoint::Zero(4);
const ExactPoint kDx = point(0, 1, 0, 0);

}  // namespace

TEST(SearchConfig, Validation) {
  EXPECT_NO_THROW(SearchConfig{}.validate());
  SearchConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.mu_cap = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(DiscSearch, Preconditions) {
  EXPECT_THROW(extremal_disc_search(kOrigin, kOrigin, ShellSet::B(), small_config()), PreconditionError);
  // dy - z dx does not vanish on d/dy.
  EXPECT_THROW(extremal_disc_search(kOrigin, point(0, 0, 1, 0), ShellSet::B(), small_config()), PreconditionError);
  SearchConfig cfg = small_config();
  cfg.degree = 1;
  EXPECT_THROW(extremal_disc_search(kOrigin, kDx, ShellSet::B(), cfg), std::invalid_argument);
}

TEST(DiscSearch, EmptyObstacleReachesBudget) {
  const SearchConfig cfg = small_config();
  const ExactPoint v = point(q(1, 2), 3, 0, 0);
  const DiscSearchResult r = extremal_disc_search(kOrigin, v, ShellSet::empty(), cfg);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.upper, norm(v) / cfg.mu_cap, 1e-6 * norm(v) / cfg.mu_cap);
  EXPECT_EQ(r.diagnostic, "derivative budget reached");
}

TEST(DiscSearch, WitnessAgainstB) {
  const DiscSearchResult r = extremal_disc_search(kOrigin, kDx, ShellSet::B(), small_config());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GE(r.upper, 0.25);
  EXPECT_TRUE(std::isfinite(r.upper));
  const PolyCurve& f = r.witness->curve;
  EXPECT_EQ(f.basepoint(), kOrigin);
  EXPECT_EQ(f.derivative().basepoint(), scaled(kDx, r.lambda));
  EXPECT_TRUE(verify_tangency(f, standard_d_forms()).tangent);
  EXPECT_EQ(disc_avoids(ShellSet::B(), *r.witness, 1.0, small_config().max_grid).status, AvoidStatus::Certified);
  EXPECT_NEAR(r.upper, 1.0 / std::sqrt(r.lambda.abs2().get_d()), 1e-15);
}

TEST(DiscSearch, Deterministic) {
  const ExactPoint p = point(q(1, 3), q(-1, 2), q(1, 5), q(1, 4));
  const ExactPoint v = point(2, 1, p(3), p(0));
  const DiscSearchResult a = extremal_disc_search(p, v, ShellSet::A(), small_config());
  const DiscSearchResult b = extremal_disc_search(p, v, ShellSet::A(), small_config());
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(DiscSearch, UpperIsHomogeneous) {
  const ExactPoint p = point(q(1, 4), 0, q(-1, 3), q(1, 2));
  const ExactPoint v = point(1, 1, p(3), p(0));
  const double base = extremal_disc_search(p, v, ShellSet::B(), small_config()).upper;
  ASSERT_TRUE(std::isfinite(base));
  for (const GaussianRational& c : {GaussianRational(2), GaussianRational(q(1, 3)), GaussianRational(Rational(3), Rational(-4))}) {
    const double up = extremal_disc_search(p, scaled(v, c), ShellSet::B(), small_config()).upper;
    const double expected = std::sqrt(c.abs2().get_d()) * base;
    EXPECT_NEAR(up, expected, 0.05 * expected);
  }
}

TEST(FinslerReport, LowerAtOriginAgainstB) {
  const FinslerBound b = finsler_report(kOrigin, kDx, ShellSet::B(), small_config());
  ASSERT_TRUE(b.lower.exact.has_value());
  EXPECT_EQ(*b.lower.exact, Rational(1, 4));
  EXPECT_EQ(b.lower.n0, 1);
  EXPECT_LE(b.lower.value(), b.upper);
  EXPECT_THROW(finsler_report(kOrigin, kDx, ShellSet::K3(), small_config()), std::invalid_argument);
}

TEST(PathLength, LowerOnStraightSegment) {
  // gamma(t) = (0, t/2, 0, 0) on [0, 1]: gamma' = (0, 1/2, 0, 0), N0 = 1, so
  // the integrand is (1/2) / 2^2 for both models.
  HorizontalPath path{{PathSegment{PolyCurve(standard_ambient(), {UPoly(), UPoly({0, q(1, 2)}), UPoly(), UPoly()})}},
                      TangencyModel::DStandard};
  EXPECT_DOUBLE_EQ(path_finsler_length(path, Estimator::Lower, ShellSet::B(), 4), 0.125);
  EXPECT_DOUBLE_EQ(path_finsler_length(path, Estimator::Lower, ShellSet::A(), 8), 0.125);
  EXPECT_THROW(path_finsler_length(path, Estimator::Lower, ShellSet::B(), 3), std::invalid_argument);
}

TEST(PathLength, RejectsNonTangentPath) {
  HorizontalPath path{{PathSegment{PolyCurve(standard_ambient(), {UPoly(), UPoly(), UPoly::zeta(), UPoly()})}},
                      TangencyModel::DStandard};
  EXPECT_THROW(path_finsler_length(path, Estimator::Lower, ShellSet::B(), 4), PreconditionError);
}

TEST(DirectedDistance, UpperAlongSteeredPath) {
  const ExactPoint p = point(0, 0, 0, 0);
  const ExactPoint r = point(q(1, 2), q(1, 2), q(1, 8), q(1, 4));
  EXPECT_EQ(directed_distance_upper(p, p, ShellSet::B(), 4, small_config()), 0.0);
  const double forward = directed_distance_upper(p, r, ShellSet::B(), 4, small_config());
  const double backward = directed_distance_upper(r, p, ShellSet::B(), 4, small_config());
  const double lower = path_finsler_length(hermite_steer(p, r), Estimator::Lower, ShellSet::B(), 4);
  EXPECT_TRUE(std::isfinite(forward));
  EXPECT_GT(forward, 0.0);
  EXPECT_GE(forward, lower);
  // The reversed path has the same trace and nodes, so the two estimates agree.
  EXPECT_NEAR(forward, backward, 0.1 * forward);
}
