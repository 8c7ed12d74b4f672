#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;
using namespace bsv::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

HyperPtr quadric3() { return HyperData::make(parse_poly("x^2+y^2+z^2", XYZ), WeightSystem::standard(XYZ)); }
HyperPtr cusp() { return HyperData::make(parse_poly("x^3+y^2", XY), WeightSystem(XY, {2, 3})); }

std::vector<std::string> xs(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

HyperPtr quadric(int n) {
  auto v = xs(n);
  std::string g;
  for (const auto& x : v) g += (g.empty() ? "" : " + ") + x + "^2";
  return HyperData::make(parse_poly(g, v), WeightSystem::standard(v));
}

using Side = std::vector<std::pair<WeylOp, LocCohElem>>;

Side side(const HyperPtr& ctx, std::initializer_list<std::pair<const char*, const char*>> items) {
  Side out;
  for (const auto& [op, el] : items) out.emplace_back(parse_op(op, ctx->vars()), parse_element(el, ctx));
  return out;
}

BFunction T(std::map<Rat, int> roots) { return BFunction::from_roots(roots, BVar::theta); }

MembershipProblem<LocCohElem> direct(std::vector<LocCohElem> gens, std::size_t var) {
  MembershipProblem<LocCohElem> p;
  p.generators = std::move(gens);
  p.mode = DirectMode{var};
  return p;
}

// Independent check of one certificate line: sum of words applied through the
// naive quotient rule, minus b(theta) applied the same way.
bool naive_replay(const Certificate<LocCohElem>& cert, const MembershipProblem<LocCohElem>& prob) {
  const Poly& g = prob.generators.front().context()->g();
  auto naive = [&](const LocCohElem& m) {
    NaiveFraction acc{Poly(g.arity()), 0, g};
    for (const auto& [k, h] : m.numerators()) acc = acc + NaiveFraction::of(h, k, g);
    return acc;
  };
  WeylOp b = cert.b_theta.as_operator(theta_operator(g.arity(), prob.mode));
  for (std::size_t i = 0; i < cert.targets.size(); ++i) {
    NaiveFraction acc = naive(prob.generators[cert.targets[i]]).apply(b) * Rat(-1);
    for (const auto& w : cert.combinations[i]) acc = acc + naive(prob.generators[w.generator]).apply(w.as_operator(prob.mode));
    if (!acc.is_zero_mod_polys()) return false;
  }
  return true;
}

}  // namespace

TEST(Verify, QuadricIdentities) {
  auto q = quadric3();
  auto first = verify_identity(side(q, {{"x*dx*x*dx", "1/g"}}), side(q, {{"1", "(-4*g*x^2 + 8*x^4)/g^3"}}));
  EXPECT_TRUE(first.holds);
  auto combined = verify_identity(side(q, {{"x*dx*x*dx", "1/g"}}), side(q, {{"-x*(dy^2 + dz^2)", "x/g"}}));
  EXPECT_TRUE(combined.holds);
  // The corrected middle identity holds; the printed sign does not.
  EXPECT_TRUE(verify_identity(side(q, {{"dy^2 + dz^2", "1/g"}}), side(q, {{"1", "(4*g - 8*x^2)/g^3"}})).holds);
  auto literal = verify_identity(side(q, {{"dy^2 + dz^2", "1/g"}}), side(q, {{"1", "(-4*g + 8*x^2)/g^3"}}));
  EXPECT_FALSE(literal.holds);
  EXPECT_EQ(literal.residual, parse_element("8*(g - 2*x^2)/g^3", q));
}

TEST(Verify, FalseIdentityReportsResidual) {
  auto q = quadric3();
  auto r = verify_identity(side(q, {{"x*dx", "1/g"}}), side(q, {{"1", "1/g"}}));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.residual, parse_element("-2*x^2/g^2 - 1/g", q));
}

TEST(Verify, CuspIdentities) {
  auto c = cusp();
  EXPECT_TRUE(verify_identity(side(c, {{"x*dx + 1/2", "x/g"}}), side(c, {{"-3/2*dy", "x*y/g"}})).holds);
  EXPECT_TRUE(verify_identity(side(c, {{"x*dx", "y/g"}}), side(c, {{"3/2*x*dy", "x^2/g"}})).holds);
  EXPECT_TRUE(verify_identity(side(c, {{"y*dy + 1/3", "y/g"}}), side(c, {{"-2/3*dx", "x*y/g"}})).holds);
  EXPECT_TRUE(verify_identity(side(c, {{"y*dy + 1/3", "y/g"}}), side(c, {{"1", "4/3*y/g - 2*y^3/g^2"}})).holds);
}

TEST(Verify, ContextMismatchThrows) {
  EXPECT_THROW(verify_identity(side(cusp(), {{"1", "1/g"}}), side(quadric3(), {{"1", "1/g"}})), Error);
}

TEST(Verify, GeneralQuadric) {
  for (int n = 3; n <= 6; ++n) {
    auto h = quadric(n);
    std::string rest;
    for (int j = 2; j <= n; ++j) rest += (rest.empty() ? "" : " + ") + std::string("dx") + std::to_string(j) + "^2";
    std::string lhs = "x1*dx1*(x1*dx1 - " + std::to_string(n - 3) + ")";
    EXPECT_TRUE(verify_identity(side(h, {{lhs.c_str(), "1/g"}}),
                                side(h, {{("-x1*(" + rest + ")").c_str(), "x1/g"}}))
                    .holds)
        << "n=" << n;
  }
}

TEST(Verify, TauIdentitiesInOriginalCoordinates) {
  for (int n = 3; n <= 4; ++n) {
    auto h = quadric(n);
    std::string rest;
    for (int j = 3; j <= n; ++j) rest += (rest.empty() ? "" : " + ") + std::string("dx") + std::to_string(j) + "^2";
    std::string lambda = std::to_string(3 - n);
    std::string tau = "(x1 - x2)*dx1";
    std::string first_op = tau + "*(" + tau + " + " + lambda + ")";
    std::string target = "-2*(x1 - x2)/g^2*((2 + " + lambda + ")*x1 - x2) + 8*x1^2*(x1 - x2)^2/g^3";
    EXPECT_TRUE(verify_identity(side(h, {{first_op.c_str(), "1/g"}}), side(h, {{"1", target.c_str()}})).holds);
    std::string p = std::to_string(n - 6) + "/2*(dx1 + dx2) - 1/2*(x1 + x2)*(dx1 + dx2)^2 - 1/2*(3*x1 + x2)*(" + rest + ")";
    std::string target2 = "-2*(x1 - x2)/g^2*((5 - " + std::to_string(n) + ")*x1 - x2) + 8*x1^2*(x1 - x2)^2/g^3";
    EXPECT_TRUE(verify_identity(side(h, {{p.c_str(), "(x1 - x2)/g"}}), side(h, {{"1", target2.c_str()}})).holds);
    // The printed operator with dx1^2 + dx2^2 does not give the same element.
    std::string literal = std::to_string(n - 6) + "/2*(dx1 + dx2) - 1/2*(x1 + x2)*(dx1^2 + dx2^2) - 1/2*(3*x1 + x2)*(" + rest + ")";
    EXPECT_FALSE(verify_identity(side(h, {{literal.c_str(), "(x1 - x2)/g"}}), side(h, {{"1", target2.c_str()}})).holds);
  }
}

TEST(Certify, QuadricThetaSquared) {
  auto q = quadric3();
  auto prob = direct({parse_element("1/g", q)}, 0);
  auto r = certify_divides(T({{0, 2}}), prob);
  ASSERT_TRUE(std::holds_alternative<Certificate<LocCohElem>>(r));
  const auto& cert = std::get<Certificate<LocCohElem>>(r);
  EXPECT_TRUE(replay(cert, prob));
  EXPECT_TRUE(naive_replay(cert, prob));
  EXPECT_EQ(cert.caps.pole, 1 + 2 + 1);
  EXPECT_EQ(cert.caps.dop, 4);
  EXPECT_EQ(to_bs_polynomial(cert.b_theta), BFunction::from_roots({{Rat(1), 2}}));
}

TEST(Certify, CuspThetaThetaPlusHalf) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 0);
  auto r = certify_divides(T({{0, 1}, {make_rat(1, 2), 1}}), prob);
  ASSERT_TRUE(std::holds_alternative<Certificate<LocCohElem>>(r));
  EXPECT_TRUE(naive_replay(std::get<Certificate<LocCohElem>>(r), prob));
}

TEST(Certify, CuspThetaAloneNotFoundAtTightCaps) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 0);
  prob.caps = {3, 3, 6};
  auto r = certify_divides(T({{0, 1}}), prob);
  ASSERT_TRUE(std::holds_alternative<NotFoundAtCaps>(r));
  const auto& nf = std::get<NotFoundAtCaps>(r);
  EXPECT_EQ(nf.caps.pole, 3);
  EXPECT_EQ(nf.caps.dop, 3);
  EXPECT_EQ(nf.caps.coeff_deg, 6);
}

TEST(Certify, RestrictedSetStillCertifiesTheCusp) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 0);
  prob.set = MembershipSet::restricted;
  auto r = certify_divides(T({{0, 1}, {make_rat(1, 2), 1}}), prob);
  ASSERT_TRUE(std::holds_alternative<Certificate<LocCohElem>>(r));
  for (const auto& comb : std::get<Certificate<LocCohElem>>(r).combinations)
    for (const auto& w : comb) {
      EXPECT_EQ(w.theta_power, 0);
      EXPECT_EQ(w.d[0], 0);
      EXPECT_GE(w.x[0], 1);
    }
}

TEST(Certify, Validation) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c)}, 0);
  EXPECT_THROW(certify_divides(BFunction::from_roots({{Rat(0), 1}}, BVar::s), prob), Error);
  auto zero = direct({LocCohElem(c)}, 0);
  EXPECT_THROW(certify_divides(T({{0, 1}}), zero), Error);
  auto mixed = direct({parse_element("1/g + x/g", c)}, 0);
  EXPECT_THROW(certify_divides(T({{0, 1}}), mixed), Error);
  auto bad_cap = prob;
  bad_cap.caps.pole = 0;
  EXPECT_THROW(certify_divides(T({{0, 1}}), bad_cap), Error);
  auto overflow = prob;
  overflow.caps.pole = 1;
  EXPECT_THROW(certify_divides(T({{0, 2}}), overflow), CapOverflow);
  auto graph_mode = prob;
  graph_mode.mode = GraphMode{2};
  EXPECT_THROW(certify_divides(T({{0, 1}}), graph_mode), Error);
}

TEST(Search, CuspFindsThetaThetaPlusHalf) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 0);
  auto r = search_minimal_b(prob, theta_lattice(2, Rat(0), Rat(2)), 3);
  ASSERT_EQ(r.index(), 0u);
  const auto& found = std::get<0>(r);
  EXPECT_EQ(found.b_theta, T({{0, 1}, {make_rat(1, 2), 1}}));
  EXPECT_EQ(found.b_theta.degree(), 2);
  BFunction bs = to_bs_polynomial(found.b_theta);
  EXPECT_EQ(to_string(bs), "(s + 1/2)*(s + 1)");
  EXPECT_EQ(lct_report(bs).min_positive_shift, make_rat(1, 2));
  EXPECT_TRUE(validate_b(bs).clean());
}

TEST(Search, QuadricFindsThetaSquared) {
  auto q = quadric3();
  auto prob = direct({parse_element("1/g", q)}, 0);
  auto r = search_minimal_b(prob, theta_lattice(1, Rat(0), Rat(3)), 2);
  ASSERT_EQ(r.index(), 0u);
  EXPECT_EQ(std::get<0>(r).b_theta, T({{0, 2}}));
}

TEST(Search, DeltaAlongACoordinateGivesS) {
  std::vector<std::string> v{"x"};
  auto h = HyperData::make(parse_poly("x", v), WeightSystem::standard(v));
  auto prob = direct({parse_element("1/g", h)}, 0);
  auto r = search_minimal_b(prob, theta_lattice(1, Rat(-1), Rat(1)), 2);
  ASSERT_EQ(r.index(), 0u);
  EXPECT_EQ(std::get<0>(r).b_theta, T({{1, 1}}));
  EXPECT_EQ(to_bs_polynomial(std::get<0>(r).b_theta), BFunction::from_roots({{Rat(0), 1}}));
}

TEST(Search, NotFoundWhenTheWindowMissesTheRoots) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 0);
  auto r = search_minimal_b(prob, {Rat(3), Rat(4)}, 2);
  ASSERT_EQ(r.index(), 1u);
  EXPECT_EQ(std::get<1>(r).candidates_tried, 5);
  EXPECT_THROW(search_minimal_b(prob, {}, 2), Error);
}

TEST(Search, ResultDividesOtherCertifiedCandidates) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 0);
  auto found = std::get<0>(search_minimal_b(prob, theta_lattice(2, Rat(0), Rat(2)), 2)).b_theta;
  for (const BFunction& other : {T({{0, 2}, {make_rat(1, 2), 1}}), T({{0, 1}, {make_rat(1, 2), 1}, {Rat(-1), 1}}),
                                 T({{0, 1}, {make_rat(1, 2), 2}})}) {
    ASSERT_TRUE(std::holds_alternative<Certificate<LocCohElem>>(certify_divides(other, prob)));
    BFunction l = lcm_b(found, other);
    EXPECT_EQ(l, other);
    for (const auto& [g, m] : found.shifts()) EXPECT_LE(m, other.multiplicity(g));
  }
}

TEST(Search, CuspAlongYPerGenerator) {
  auto c = cusp();
  auto prob = direct({parse_element("x/g", c), parse_element("y/g", c)}, 1);
  prob.targets = {1};
  auto y = search_minimal_b(prob, theta_lattice(3, Rat(0), Rat(2)), 3);
  ASSERT_EQ(y.index(), 0u);
  EXPECT_EQ(std::get<0>(y).b_theta, T({{make_rat(1, 3), 1}}));
  prob.targets = {0};
  auto x = search_minimal_b(prob, theta_lattice(3, Rat(0), Rat(2)), 3);
  ASSERT_EQ(x.index(), 0u);
  const auto& found = std::get<0>(x);
  EXPECT_EQ(found.b_theta, T({{0, 1}, {make_rat(2, 3), 1}}));
  EXPECT_TRUE(naive_replay(found.certificate, prob));
}

TEST(Search, GraphModeAgreesWithDirectModeForACoordinate) {
  auto c = cusp();
  auto ctx = GraphContext::make(c, parse_poly("x", XY));
  MembershipProblem<GraphElem> prob;
  prob.generators = {GraphElem::single(parse_element("x/g", c), 0, ctx),
                     GraphElem::single(parse_element("y/g", c), 0, ctx)};
  prob.mode = GraphMode{ctx->t_index()};
  auto r = search_minimal_b(prob, theta_lattice(ctx->df(), Rat(0), Rat(2)), 2);
  ASSERT_EQ(r.index(), 0u);
  EXPECT_EQ(std::get<0>(r).b_theta, T({{0, 1}, {make_rat(1, 2), 1}}));
  EXPECT_TRUE(replay(std::get<0>(r).certificate, prob));
}

TEST(Certify, GeneralQuadricUpperBound) {
  for (int n = 3; n <= 6; ++n) {
    auto h = quadric(n);
    auto prob = direct({parse_element("1/g", h)}, 0);
    BFunction b(BVar::theta);
    b.add_factor(Rat(0));
    b.add_factor(Rat(3 - n));
    auto r = certify_divides(b, prob);
    ASSERT_TRUE(std::holds_alternative<Certificate<LocCohElem>>(r)) << "n=" << n;
    BFunction expect = BFunction::from_roots({{Rat(1), 1}}, BVar::s);
    expect.add_factor(Rat(n - 2));
    EXPECT_EQ(to_bs_polynomial(b), expect);
  }
}
