#include <gtest/gtest.h>

#include "engel/io.hpp"
#include "engel/sampling.hpp"

using namespace engel;

namespace {

const Ambient& A() { return standard_ambient(); }
MultiPoly var(const char* n) { return MultiPoly::variable(A(), n); }

}  // namespace

TEST(Json, PolySchemaExample) {
  const Json j = Json::parse(R"({"ambient":["w","x","y","z"],"terms":[{"exp":[0,1,0,1],"coef":"1/2-3*i"},{"exp":[0,0,0,0],"coef":"-2"}]})");
  const MultiPoly p = poly_from_json(j);
  EXPECT_EQ(p, GaussianRational(Rational(1, 2), Rational(-3)) * var("x") * var("z") + MultiPoly::constant(A(), -2));
  EXPECT_EQ(to_json(p)["terms"].size(), 2u);
}

TEST(Json, RoundTrips) {
  Rng rng = stream(51, "json-roundtrip");
  for (int t = 0; t < 100; ++t) {
    const MultiPoly p = random_multipoly(rng, A(), 3, 5, 9);
    EXPECT_EQ(poly_from_json(Json::parse(to_json(p).dump())), p);
    const VectorField x = random_field(rng, A(), 2, 3, 9);
    EXPECT_EQ(field_from_json(Json::parse(to_json(x).dump())), x);
    const PolyCurve c(A(), {random_upoly(rng, 3, 9), random_upoly(rng, 2, 9), random_upoly(rng, 4, 9), UPoly()});
    EXPECT_EQ(curve_from_json(Json::parse(to_json(c).dump())), c);
    const GaussianRational g = random_gaussian(rng, 50);
    EXPECT_EQ(gaussian_from_json(to_json(g)), g);
  }
}

TEST(Json, ShellSets) {
  for (const ShellSet& s : {ShellSet::empty(), ShellSet::A(), ShellSet::B(), ShellSet::KW(), ShellSet::K3(Rational(1, 4)),
                            ShellSet::Ln(3), ShellSet::CR(Rational(-2, 3))}) {
    const ShellSet r = shellset_from_json(to_json(s));
    EXPECT_EQ(r.kind, s.kind);
    EXPECT_EQ(r.epsilon, s.epsilon);
    EXPECT_EQ(r.n, s.n);
    EXPECT_EQ(r.R, s.R);
  }
  EXPECT_EQ(to_json(ShellSet::B()).dump(), R"({"kind":"B"})");
}

TEST(Json, Shears) {
  const Json j = Json::parse(R"([{"target":"w","term":{"ambient":["w","x","y","z"],"terms":[{"exp":[0,2,0,0],"coef":"1"}]}}])");
  const std::vector<Shear> s = shears_from_json(j, A());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].target, 0u);
  EXPECT_EQ(s[0].term, var("x") * var("x"));
  EXPECT_EQ(to_json(s[0])["target"], "w");
}

TEST(Json, SchemaErrors) {
  EXPECT_THROW(poly_from_json(Json::parse(R"({"terms":[]})")), SchemaError);
  EXPECT_THROW(poly_from_json(Json::parse(R"({"ambient":["x"],"terms":[{"exp":[1,2],"coef":"1"}]})")), SchemaError);
  EXPECT_THROW(poly_from_json(Json::parse(R"({"ambient":["x"],"terms":[{"exp":[-1],"coef":"1"}]})")), SchemaError);
  EXPECT_THROW(poly_from_json(Json::parse(R"({"ambient":["x"],"terms":[{"exp":[1],"coef":"1/0"}]})")), SchemaError);
  EXPECT_THROW(poly_from_json(Json::parse(R"({"ambient":["x"],"terms":[]})"), A()), SchemaError);
  EXPECT_THROW(shellset_from_json(Json::parse(R"({"kind":"Q"})")), SchemaError);
  EXPECT_THROW(shellset_from_json(Json::parse(R"({"kind":"CR","R":"0"})")), SchemaError);
  EXPECT_THROW(shears_from_json(Json::parse(R"([{"target":"x","term":{"ambient":["w","x","y","z"],"terms":[{"exp":[0,1,0,0],"coef":"1"}]}}])"), A()),
               SchemaError);
  EXPECT_THROW(field_from_json(Json::parse(R"({"type":"form"})")), SchemaError);
}
