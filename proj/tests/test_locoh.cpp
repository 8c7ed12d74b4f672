#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;
using namespace bsv::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

HyperPtr quadric() { return HyperData::make(parse_poly("x^2+y^2+z^2", XYZ), WeightSystem::standard(XYZ)); }
HyperPtr cusp() { return HyperData::make(parse_poly("x^3+y^2", XY), WeightSystem(XY, {2, 3})); }

LocCohElem E(const std::string& s, const HyperPtr& ctx) { return parse_element(s, ctx); }
WeylOp Op(const std::string& s, const HyperPtr& ctx) { return parse_op(s, ctx->vars()); }
Poly P(const std::string& s, const HyperPtr& ctx) { return parse_poly(s, ctx->vars()); }

NaiveFraction naive(const LocCohElem& m) {
  const Poly& g = m.context()->g();
  NaiveFraction acc{Poly(g.arity()), 0, g};
  for (const auto& [k, h] : m.numerators()) acc = acc + NaiveFraction::of(h, k, g);
  return acc;
}

// Two elements agree when their naive difference is a polynomial.
bool naive_equal(const NaiveFraction& a, const LocCohElem& b) {
  return (a + naive(b) * Rat(-1)).is_zero_mod_polys();
}

}  // namespace

TEST(LocCoh, ReduceExamples) {
  auto q = quadric();
  Poly x = P("x", q), y = P("y", q);
  LocCohElem a = reduce({{2, x * q->g()}}, q);
  EXPECT_EQ(a, LocCohElem::fraction(x, 1, q));
  EXPECT_EQ(a.numerators().size(), 1u);
  EXPECT_TRUE(reduce({{1, q->g()}}, q).is_zero());
  LocCohElem b = reduce({{2, x * q->g() + y}}, q);
  ASSERT_EQ(b.numerators().size(), 2u);
  EXPECT_EQ(b.numerators().at(1), x);
  EXPECT_EQ(b.numerators().at(2), y);
}

TEST(LocCoh, HyperDataValidation) {
  EXPECT_THROW(HyperData::make(Poly(2), WeightSystem(XY, {1, 1})), Error);
  EXPECT_THROW(HyperData::make(parse_poly("x+y^2", XY), WeightSystem(XY, {1, 1})), Error);
  EXPECT_THROW(HyperData::make(parse_poly("x", XY), WeightSystem(XYZ, {1, 1, 1})), Error);
  EXPECT_THROW(HyperData::make(parse_poly("1", XY), WeightSystem(XY, {1, 1})), Error);
}

TEST(LocCoh, ActExamples) {
  auto q = quadric();
  EXPECT_EQ(act(Op("dx^2", q), E("1/g", q)), E("-2/g^2 + 8*x^2/g^3", q));
  WeylOp xdx = Op("x*dx", q);
  EXPECT_EQ(act(compose(xdx, xdx), E("1/g", q)), E("(-4*g*x^2 + 8*x^4)/g^3", q));
  auto c = cusp();
  EXPECT_EQ(act(Op("dy", c), E("x*y/g", c)), E("x/g - 2*x*y^2/g^2", c));
  EXPECT_THROW(act(WeylOp(2), E("1/g", q)), Error);
}

TEST(LocCoh, ActAgreesWithNaiveQuotientRule) {
  auto c = cusp();
  for (int i = 0; i < 60; ++i) {
    Poly h = random_poly(2, 4, 3);
    int k = uniform(1, 3);
    WeylOp op = random_op(2, 2, 2);
    LocCohElem m = LocCohElem::fraction(h, k, c);
    EXPECT_TRUE(naive_equal(NaiveFraction::of(h, k, c->g()).apply(op), act(op, m)));
  }
}

TEST(LocCoh, IsZeroExamples) {
  auto c = cusp();
  LocCohElem lhs = act(Op("x*dx + 1/2", c), E("x/g", c)) + act(Op("dy", c), E("x*y/g", c)) * make_rat(3, 2);
  EXPECT_TRUE(is_zero(lhs));
  EXPECT_FALSE(is_zero(E("1/g", c)));
  EXPECT_TRUE(is_zero(reduce({{2, c->g() * c->g()}}, c)));
}

TEST(LocCoh, WeightBasisExamples) {
  auto q = quadric();
  auto b2 = weight_basis(-2, 1, q);
  ASSERT_EQ(b2.size(), 1u);
  EXPECT_EQ(b2[0], E("1/g", q));
  auto b1 = weight_basis(-1, 1, q);
  ASSERT_EQ(b1.size(), 3u);
  EXPECT_EQ(b1[0], E("x/g", q));
  EXPECT_EQ(b1[1], E("y/g", q));
  EXPECT_EQ(b1[2], E("z/g", q));
  EXPECT_EQ(weight_basis(0, 1, q).size(), 5u);
  EXPECT_THROW(weight_basis(0, 0, q), Error);
}

TEST(LocCoh, WeightBasisDimensionMatchesRankOracle) {
  // Every h_j / g^j with j <= k rewrites over g^k, so the weight-lambda part is
  // S_{lambda + dk} / g^k S_lambda.
  auto q = quadric();
  auto dim_s = [](long deg) { return deg < 0 ? 0L : (deg + 1) * (deg + 2) / 2; };
  for (long lambda = -6; lambda <= 1; ++lambda)
    for (int cap = 1; cap <= 3; ++cap) {
      long expect = dim_s(lambda + 2 * cap) - dim_s(lambda);
      EXPECT_EQ(static_cast<long>(weight_basis(lambda, cap, q).size()), expect)
          << "lambda=" << lambda << " cap=" << cap;
    }
}

TEST(LocCoh, EulerEigenvalueExamples) {
  auto c = cusp();
  EXPECT_EQ(euler_eigenvalue(E("x/g", c)), Rat(-4));
  auto q = quadric();
  EXPECT_EQ(euler_eigenvalue(E("1/g", q)), Rat(-2));
  EXPECT_FALSE(euler_eigenvalue(E("1/g + x/g", q)));
}

TEST(LocCohProperty, MultiplyingByGLowersThePole) {
  auto c = cusp();
  for (int i = 0; i < 40; ++i) {
    Poly h = random_poly(2, 4, 3);
    int k = uniform(1, 4);
    LocCohElem m = LocCohElem::fraction(h, k, c);
    LocCohElem gm = m.times(c->g());
    if (k == 1) {
      EXPECT_TRUE(gm.is_zero());
    } else {
      EXPECT_EQ(gm, reduce({{k - 1, h}}, c));
    }
  }
}

TEST(LocCohProperty, ReduceIsIdempotentAndInvertsReexpansion) {
  auto q = quadric();
  for (int i = 0; i < 40; ++i) {
    LocCohElem::Raw raw;
    for (int k = 1; k <= 3; ++k) raw[k] = random_poly(3, 4, 3);
    LocCohElem m = reduce(raw, q);
    EXPECT_EQ(reduce(m.numerators(), q), m);
    LocCohElem::Raw up;
    for (const auto& [k, h] : m.numerators()) up[k + 1] = h * q->g();
    EXPECT_EQ(reduce(up, q), m);
  }
}

TEST(LocCohProperty, EulerLaw) {
  auto c = cusp();
  auto q = quadric();
  for (int i = 0; i < 100; ++i) {
    const HyperPtr& ctx = i % 2 ? c : q;
    long deg = uniform(0, 7);
    Poly h = random_homogeneous(ctx->weights(), deg, 3);
    int k = uniform(1, 3);
    LocCohElem m = LocCohElem::fraction(h, k, ctx);
    if (m.is_zero()) continue;
    EXPECT_EQ(euler_eigenvalue(m), Rat(deg - ctx->degree() * k));
  }
}

TEST(LocCohProperty, WeightBasisSpansUniquely) {
  auto c = cusp();
  for (long lambda : {-6L, -4L, -1L, 0L, 3L}) {
    auto basis = weight_basis(lambda, 3, c);
    std::vector<LocCohElem::Coordinates> cols;
    for (const auto& b : basis) cols.push_back(b.coordinates());
    // Independence: no basis vector is in the span of the others.
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<LocCohElem::Coordinates> others;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(cols[j]);
      EXPECT_FALSE(solve_combination(others, cols[i]));
    }
    for (int trial = 0; trial < 5; ++trial) {
      LocCohElem::Raw raw;
      for (int k = 1; k <= 3; ++k)
        raw[k] = random_homogeneous(c->weights(), lambda + c->degree() * k, 2);
      LocCohElem m = reduce(raw, c);
      auto coeffs = coordinates_in_basis(m, basis);
      ASSERT_TRUE(coeffs);
      LocCohElem back(c);
      for (std::size_t j = 0; j < basis.size(); ++j) back += basis[j] * (*coeffs)[j];
      EXPECT_EQ(back, m);
    }
  }
}
