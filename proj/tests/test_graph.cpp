#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;
using namespace bsv::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

HyperPtr cusp() { return HyperData::make(parse_poly("x^3+y^2", XY), WeightSystem(XY, {2, 3})); }
HyperPtr quadric() { return HyperData::make(parse_poly("x^2+y^2+z^2", XYZ), WeightSystem::standard(XYZ)); }

GraphElem delta(const LocCohElem& m, int k, const GraphPtr& ctx) { return GraphElem::single(m, k, ctx); }

GraphElem random_graph_elem(const GraphPtr& ctx) {
  const HyperPtr& h = ctx->hyper();
  GraphElem e(ctx);
  int layers = uniform(1, 2);
  for (int i = 0; i < layers; ++i)
    e.add_layer(uniform(0, 2), LocCohElem::fraction(random_poly(h->arity(), 3, 2), uniform(1, 2), h));
  return e;
}

}  // namespace

TEST(Graph, ActionExamples) {
  auto c = cusp();
  auto ctx = GraphContext::make(c, parse_poly("x", XY));
  LocCohElem m = parse_element("1/g", c);
  LocCohElem fm = m.times(ctx->f());
  EXPECT_EQ(act_graph(GraphSymbol::t(), delta(m, 0, ctx)), delta(fm, 0, ctx));
  GraphElem expect = delta(fm, 1, ctx) - delta(m, 0, ctx);
  EXPECT_EQ(act_graph(GraphSymbol::t(), delta(m, 1, ctx)), expect);
  // t*dt on delta: dt first, then t, giving f dt delta - delta.
  EXPECT_EQ(act_graph(GraphSymbol::theta_t(), delta(m, 0, ctx)), expect);
  // dt*t on delta gives f dt delta.
  EXPECT_EQ(act_graph(GraphSymbol::dt(), act_graph(GraphSymbol::t(), delta(m, 0, ctx))), delta(fm, 1, ctx));
}

TEST(Graph, ContextValidation) {
  auto c = cusp();
  EXPECT_THROW(GraphContext::make(c, parse_poly("x + y", XY)), Error);
  EXPECT_THROW(GraphContext::make(c, Poly(2)), Error);
  EXPECT_THROW(GraphElem::single(parse_element("1/g", c), -1, GraphContext::make(c, parse_poly("x", XY))),
               Error);
}

TEST(Graph, WeylRelations) {
  auto c = cusp();
  auto ctx = GraphContext::make(c, parse_poly("x*y", XY));
  for (int i = 0; i < 200; ++i) {
    GraphElem e = random_graph_elem(ctx);
    GraphElem dtt = act_graph(GraphSymbol::dt(), act_graph(GraphSymbol::t(), e));
    GraphElem tdt = act_graph(GraphSymbol::t(), act_graph(GraphSymbol::dt(), e));
    EXPECT_EQ(dtt - tdt, e);
    std::size_t v = static_cast<std::size_t>(uniform(0, 1));
    GraphElem dxx = act_graph(GraphSymbol::dx(v), act_graph(GraphSymbol::x(v), e));
    GraphElem xdx = act_graph(GraphSymbol::x(v), act_graph(GraphSymbol::dx(v), e));
    EXPECT_EQ(dxx - xdx, e);
    // d_x and t commute.
    EXPECT_EQ(act_graph(GraphSymbol::dx(v), act_graph(GraphSymbol::t(), e)),
              act_graph(GraphSymbol::t(), act_graph(GraphSymbol::dx(v), e)));
    GraphElem s = act_graph(GraphSymbol::s(), e);
    GraphElem th = act_graph(GraphSymbol::theta_t(), e);
    EXPECT_EQ(s, th * Rat(-1) - e);
  }
}

TEST(Graph, OperatorActionMatchesSymbols) {
  auto c = cusp();
  auto ctx = GraphContext::make(c, parse_poly("x", XY));
  auto vars = ctx->operator_vars();
  for (int i = 0; i < 40; ++i) {
    GraphElem e = random_graph_elem(ctx);
    WeylOp p = random_op(3, 2, 2), q = random_op(3, 2, 2);
    EXPECT_EQ(act(compose(p, q), e), act(p, act(q, e)));
  }
  GraphElem e = random_graph_elem(ctx);
  EXPECT_EQ(act(parse_op("-dt*t", vars), e), act_graph(GraphSymbol::s(), e));
  EXPECT_EQ(act(parse_op("t*dt", vars), e), act_graph(GraphSymbol::theta_t(), e));
}

TEST(Graph, EulerEigenvalueExamples) {
  auto c = cusp();
  auto fx = GraphContext::make(c, parse_poly("x", XY));
  GraphElem e = delta(parse_element("x/g", c), 0, fx);
  EXPECT_EQ(graph_euler_eigenvalue(e, Rat(0)), Rat(-4));
  EXPECT_TRUE(graph_euler_residual(e).is_zero());
  auto q = quadric();
  auto fq = GraphContext::make(q, parse_poly("x", XYZ));
  GraphElem e2 = delta(parse_element("1/g", q), 1, fq);
  EXPECT_EQ(graph_euler_eigenvalue(e2, Rat(0)), Rat(-3));
  EXPECT_TRUE(graph_euler_residual(e2).is_zero());
  GraphElem mixed = e2 + delta(parse_element("1/g", q), 0, fq);
  EXPECT_FALSE(graph_euler_eigenvalue(mixed, Rat(0)));
}

TEST(Graph, VDegreeExamples) {
  std::vector<std::string> xyt{"x", "y", "t"};
  EXPECT_EQ(v_degree(parse_op("x^2*dy", xyt), DirectMode{0}), 2);
  EXPECT_EQ(v_degree(parse_op("t*dt", xyt), GraphMode{2}), 0);
  // dt^2*t normal-orders to t*dt^2 + 2*dt; both terms have V-degree -1.
  EXPECT_EQ(v_degree(parse_op("t*dt^2", xyt), GraphMode{2}), -1);
  EXPECT_EQ(min_v_degree(parse_op("dt^2*t", xyt), GraphMode{2}), -1);
  EXPECT_THROW(v_degree(parse_op("x + y", xyt), DirectMode{0}), Error);
  EXPECT_EQ(min_v_degree(parse_op("x*dy + x^2", xyt), DirectMode{0}), 1);
}

TEST(Delta, VPieceExamples) {
  DeltaModule d(1, 1);
  EXPECT_EQ(delta_v_piece(d, Rat(0)).dimension, 1);
  EXPECT_EQ(delta_v_piece(d, Rat(-1)).dimension, 2);
  EXPECT_EQ(delta_v_piece(DeltaModule(4, 3), make_rat(1, 2)).dimension, 0);
  EXPECT_THROW(DeltaModule(0, 1), Error);
  EXPECT_THROW(DeltaModule(1, 0), Error);
}

TEST(Delta, BFunctionIsS) {
  EXPECT_EQ(to_string(delta_bfunction(DeltaModule(1, 1))), "s");
  EXPECT_EQ(to_string(delta_bfunction(DeltaModule(7, 3))), "s");
  EXPECT_EQ(delta_bfunction(DeltaModule(2, 2)).shifts(), (std::map<Rat, int>{{Rat(0), 1}}));
}

TEST(DeltaProperty, GradedPiecesSumToClosedForm) {
  auto binom = [](long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int c = 1; c <= 3; ++c)
    for (long base = 1; base <= 3; ++base)
      for (int N = 0; N <= 5; ++N) {
        DeltaModule d(base, c);
        long total = 0;
        for (int j = 0; j <= N; ++j) total += delta_gr_dimension(d, Rat(-j));
        // #{alpha in N^c : |alpha| <= N} = C(N + c, c).
        EXPECT_EQ(total, base * binom(N + c, c));
        EXPECT_EQ(delta_v_piece(d, Rat(-N)).dimension, base * binom(N + c, c));
        EXPECT_EQ(delta_gr_dimension(d, make_rat(-2 * N - 1, 2)), 0);
        // One more normal coordinate: piece sizes become C(N + c + 1, c + 1).
        EXPECT_EQ(delta_v_piece(d.pushforward(), Rat(-N)).dimension, base * binom(N + c + 1, c + 1));
        EXPECT_EQ(delta_bfunction(d.pushforward()), delta_bfunction(d));
      }
}
