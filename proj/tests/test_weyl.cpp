#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;
using namespace bsv::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XT{"x", "t"};

WeylOp Op(const std::string& s, const std::vector<std::string>& v = XY) { return parse_op(s, v); }
Poly P(const std::string& s, const std::vector<std::string>& v = XY) { return parse_poly(s, v); }

}  // namespace

TEST(Weyl, ComposeExamples) {
  EXPECT_EQ(compose(Op("dx"), Op("x")), Op("x*dx + 1"));
  EXPECT_EQ(compose(Op("x*dx"), Op("x*dx")), Op("x^2*dx^2 + x*dx"));
  WeylOp s = compose(Op("dt", XT), Op("t", XT)) * Rat(-1);
  EXPECT_EQ(s, Op("-t*dt - 1", XT));
  EXPECT_THROW(compose(WeylOp(2), WeylOp(3)), Error);
}

TEST(Weyl, AdjointExamples) {
  EXPECT_EQ(adjoint(Op("x*dx")), Op("-x*dx - 1"));
  EXPECT_EQ(adjoint(adjoint(Op("x^2*dy"))), Op("x^2*dy"));
  EXPECT_EQ(adjoint(Op("dx*dy")), Op("dx*dy"));
}

TEST(Weyl, ApplyExamples) {
  WeightSystem cusp(XY, {2, 3});
  Poly g = P("x^3 + y^2");
  EXPECT_EQ(apply(euler(cusp), g), g * Rat(6));
  EXPECT_EQ(apply(Op("dx"), P("x^2")), P("2*x"));
  EXPECT_EQ(apply(Op("x*dx"), P("x^3")), P("3*x^3"));
  EXPECT_THROW(apply(Op("dx"), Poly(3)), Error);
}

TEST(Weyl, EulerExamples) {
  EXPECT_EQ(euler(WeightSystem::standard(XY)), Op("x*dx + y*dy"));
  EXPECT_EQ(euler(WeightSystem(XY, {2, 3})), Op("2*x*dx + 3*y*dy"));
  EXPECT_TRUE(apply(euler(WeightSystem(XY, {2, 3})), P("1")).is_zero());
}

TEST(Weyl, EulerScalesEveryHomogeneousPolynomial) {
  WeightSystem w({"x", "y", "z"}, {1, 2, 3});
  for (int i = 0; i < 40; ++i) {
    long d = uniform(0, 8);
    Poly h = random_homogeneous(w, d, 4);
    EXPECT_EQ(apply(euler(w), h), h * Rat(d));
  }
}

TEST(Weyl, PrintsNormalOrder) {
  EXPECT_EQ(to_string(Op("dy^2*x^2 - dx*x + 3/2"), XY), "x^2*dy^2 - x*dx + 1/2");
}

TEST(WeylProperty, AdjointIsInvolutionAndAntiHomomorphism) {
  for (int i = 0; i < 200; ++i) {
    WeylOp p = random_op(2, 3, 3), q = random_op(2, 3, 3);
    EXPECT_EQ(adjoint(adjoint(p)), p);
    EXPECT_EQ(adjoint(compose(p, q)), compose(adjoint(q), adjoint(p)));
  }
}

TEST(WeylProperty, ComposeMatchesSuccessiveApplication) {
  for (int i = 0; i < 200; ++i) {
    WeylOp p = random_op(2, 3, 3), q = random_op(2, 3, 3);
    Poly h = random_poly(2, 5, 4);
    EXPECT_EQ(apply(compose(p, q), h), apply(p, apply(q, h)));
  }
}

TEST(WeylProperty, ComposeIsAssociative) {
  for (int i = 0; i < 60; ++i) {
    WeylOp p = random_op(3, 2, 2), q = random_op(3, 2, 2), r = random_op(3, 2, 2);
    EXPECT_EQ(compose(compose(p, q), r), compose(p, compose(q, r)));
  }
}
