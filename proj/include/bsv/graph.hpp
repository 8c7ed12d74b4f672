#ifndef BSV_GRAPH_HPP
#define BSV_GRAPH_HPP

// Graph embedding modules  (+)_k M d_t^k delta_f  over M = H^1_g(S), delta
// modules with their Kashiwara V-filtration, and V-degrees of operators.

#include <map>
#include <memory>
#include <optional>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

#include "bsv/bfunction.hpp"
#include "bsv/locoh.hpp"

namespace bsv {

/// The module data for a graph embedding along f.
class GraphContext {
 public:
  GraphContext(HyperPtr hyper, Poly f) : hyper_(std::move(hyper)), f_(std::move(f)) {
    if (f_.arity() != hyper_->arity()) throw Error("graph embedding: arity of f does not match");
    WDeg d = wdeg(f_, hyper_->weights());
    if (!d.is_finite()) throw Error("graph embedding: f must be nonzero and weighted homogeneous");
    df_ = d.value();
  }

  static std::shared_ptr<const GraphContext> make(HyperPtr hyper, Poly f) {
    return std::make_shared<const GraphContext>(std::move(hyper), std::move(f));
  }

  const HyperPtr& hyper() const { return hyper_; }
  const Poly& f() const { return f_; }
  long df() const { return df_; }
  /// Index of t when operators carry the variables x_1..x_n, t.
  std::size_t t_index() const { return hyper_->arity(); }
  std::vector<std::string> operator_vars() const {
    auto v = hyper_->vars();
    v.push_back("t");
    return v;
  }

 private:
  HyperPtr hyper_;
  Poly f_;
  long df_ = 0;
};

using GraphPtr = std::shared_ptr<const GraphContext>;

struct GraphKey {
  int layer;
  int pole;
  Exponent mono;
};

struct GraphKeyLess {
  TermOrder order;
  bool operator()(const GraphKey& a, const GraphKey& b) const {
    if (a.layer != b.layer) return a.layer < b.layer;
    if (a.pole != b.pole) return a.pole < b.pole;
    return order.less(a.mono, b.mono);
  }
};

/// sum_k m_k d_t^k delta_f with canonical layers.
class GraphElem {
 public:
  explicit GraphElem(GraphPtr ctx) : ctx_(std::move(ctx)) {}

  /// m d_t^k delta_f.
  static GraphElem single(const LocCohElem& m, int k, GraphPtr ctx) {
    GraphElem e(std::move(ctx));
    e.add_layer(k, m);
    return e;
  }

  const GraphPtr& context() const { return ctx_; }
  const std::map<int, LocCohElem>& layers() const { return layers_; }
  bool is_zero() const { return layers_.empty(); }

  void add_layer(int k, const LocCohElem& m) {
    if (k < 0) throw Error("graph element: negative d_t power");
    if (m.is_zero()) return;
    auto [it, ins] = layers_.try_emplace(k, m);
    if (!ins) {
      it->second += m;
      if (it->second.is_zero()) layers_.erase(it);
    }
  }

  GraphElem& operator+=(const GraphElem& o) {
    for (const auto& [k, m] : o.layers_) add_layer(k, m);
    return *this;
  }
  GraphElem& operator-=(const GraphElem& o) {
    for (const auto& [k, m] : o.layers_) add_layer(k, m * Rat(-1));
    return *this;
  }
  GraphElem& operator*=(const Rat& c) {
    if (c == 0) {
      layers_.clear();
    } else {
      for (auto& [k, m] : layers_) m *= c;
    }
    return *this;
  }
  friend GraphElem operator+(GraphElem a, const GraphElem& b) { return a += b; }
  friend GraphElem operator-(GraphElem a, const GraphElem& b) { return a -= b; }
  friend GraphElem operator*(GraphElem a, const Rat& c) { return a *= c; }
  friend GraphElem operator*(const Rat& c, GraphElem a) { return a *= c; }

  /// Total weight: weight(m_k) - d_f * k when common to all layers.
  std::optional<long> weight() const {
    std::optional<long> w;
    for (const auto& [k, m] : layers_) {
      auto mw = m.weight();
      if (!mw) return std::nullopt;
      long v = *mw - ctx_->df() * k;
      if (w && *w != v) return std::nullopt;
      w = v;
    }
    return w;
  }

  int pole_order() const {
    int p = 0;
    for (const auto& [k, m] : layers_) p = std::max(p, m.pole_order());
    return p;
  }

  using Coordinates = SparseVec<GraphKey, GraphKeyLess>;
  Coordinates coordinates() const {
    Coordinates out(GraphKeyLess{ctx_->hyper()->order()});
    for (const auto& [k, m] : layers_)
      for (const auto& [pk, c] : m.coordinates()) out.emplace(GraphKey{k, pk.pole, pk.mono}, c);
    return out;
  }

  bool operator==(const GraphElem& o) const { return layers_ == o.layers_; }

 private:
  GraphPtr ctx_;
  std::map<int, LocCohElem> layers_;
};

/// Generators of the graph module action.
struct GraphSymbol {
  enum class Kind { t, dt, x, dx, s, theta_t };
  Kind kind;
  std::size_t var = 0;  // for x / dx

  static GraphSymbol t() { return {Kind::t}; }
  static GraphSymbol dt() { return {Kind::dt}; }
  static GraphSymbol x(std::size_t i) { return {Kind::x, i}; }
  static GraphSymbol dx(std::size_t i) { return {Kind::dx, i}; }
  static GraphSymbol s() { return {Kind::s}; }
  static GraphSymbol theta_t() { return {Kind::theta_t}; }
};

/// Action of one generator:
///   t (m d_t^k delta)    = f m d_t^k delta - k m d_t^(k-1) delta
///   d_t                  raises k
///   d_x_i (m d_t^k delta) = (d_i m) d_t^k delta - (d_i f) m d_t^(k+1) delta
///   s = -d_t t,  theta_t = t d_t = -s - 1.
inline GraphElem act_graph(const GraphSymbol& sym, const GraphElem& e) {
  const GraphPtr& ctx = e.context();
  GraphElem out(ctx);
  switch (sym.kind) {
    case GraphSymbol::Kind::t:
      for (const auto& [k, m] : e.layers()) {
        out.add_layer(k, m.times(ctx->f()));
        if (k > 0) out.add_layer(k - 1, m * Rat(-k));
      }
      break;
    case GraphSymbol::Kind::dt:
      for (const auto& [k, m] : e.layers()) out.add_layer(k + 1, m);
      break;
    case GraphSymbol::Kind::x: {
      Poly xi = Poly::variable(ctx->hyper()->arity(), sym.var);
      for (const auto& [k, m] : e.layers()) out.add_layer(k, m.times(xi));
      break;
    }
    case GraphSymbol::Kind::dx: {
      Poly dfi = ctx->f().derivative(sym.var);
      for (const auto& [k, m] : e.layers()) {
        out.add_layer(k, m.derivative(sym.var));
        if (!dfi.is_zero()) out.add_layer(k + 1, m.times(dfi) * Rat(-1));
      }
      break;
    }
    case GraphSymbol::Kind::s:
      out = act_graph(GraphSymbol::dt(), act_graph(GraphSymbol::t(), e)) * Rat(-1);
      break;
    case GraphSymbol::Kind::theta_t:
      out = act_graph(GraphSymbol::t(), act_graph(GraphSymbol::dt(), e));
      break;
  }
  return out;
}

/// Action of an operator in the variables x_1..x_n, t (t last).
inline GraphElem act(const WeylOp& p, const GraphElem& e) {
  const GraphPtr& ctx = e.context();
  const std::size_t n = ctx->hyper()->arity();
  if (p.arity() != n + 1) throw Error("graph operator must have the module variables plus t");
  std::map<Exponent, GraphElem> derived;
  derived.emplace(zero_exponent(n + 1), e);
  auto get = [&](auto&& self, const Exponent& alpha) -> const GraphElem& {
    if (auto it = derived.find(alpha); it != derived.end()) return it->second;
    std::size_t i = 0;
    while (alpha[i] == 0) ++i;
    Exponent lower(alpha);
    --lower[i];
    const GraphElem& base = self(self, lower);
    GraphElem d = act_graph(i == n ? GraphSymbol::dt() : GraphSymbol::dx(i), base);
    return derived.emplace(alpha, std::move(d)).first->second;
  };
  GraphElem out(ctx);
  for (const auto& [alpha, h] : p.terms()) {
    const GraphElem& d = get(get, alpha);
    for (const auto& [a, c] : h.terms()) {
      GraphElem term = d;
      for (int j = 0; j < a[n]; ++j) term = act_graph(GraphSymbol::t(), term);
      Exponent ax(a.begin(), a.begin() + static_cast<long>(n));
      GraphElem scaled(ctx);
      for (const auto& [k, m] : term.layers()) scaled.add_layer(k, m.times(Poly::monomial(ax, c)));
      out += scaled;
    }
  }
  return out;
}

inline std::string to_string(const GraphElem& e, const std::string& gname = "g") {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, m] : e.layers()) {
    if (!first) out += " + ";
    first = false;
    std::string dt = k == 0 ? "" : (k == 1 ? "*dt" : "*dt^" + std::to_string(k));
    out += "[" + to_string(m, gname) + "]" + dt + "*delta";
  }
  return out;
}

/// Scalar deg(h) - d*k_pole + d_f*(lambda_s - k) of the Euler action on a
/// single-layer, weight-homogeneous element; nullopt otherwise.
inline std::optional<Rat> graph_euler_eigenvalue(const GraphElem& e, const Rat& lambda_s) {
  if (e.layers().size() != 1) return std::nullopt;
  const auto& [k, m] = *e.layers().begin();
  auto w = m.weight();
  if (!w) return std::nullopt;
  return Rat(*w) + Rat(e.context()->df()) * (lambda_s - Rat(k));
}

/// theta_w(e) - d_f * s(e) - (deg(h) - d*pole - d_f*k) e, computed through the
/// module action. Zero for every homogeneous single-layer element.
inline GraphElem graph_euler_residual(const GraphElem& e) {
  const GraphPtr& ctx = e.context();
  const std::size_t n = ctx->hyper()->arity();
  GraphElem theta(ctx);
  for (std::size_t i = 0; i < n; ++i) {
    GraphElem d = act_graph(GraphSymbol::x(i), act_graph(GraphSymbol::dx(i), e));
    theta += d * Rat(ctx->hyper()->weights().weight(i));
  }
  GraphElem r = theta - act_graph(GraphSymbol::s(), e) * Rat(ctx->df());
  for (const auto& [k, m] : e.layers()) {
    auto w = m.weight();
    if (!w) throw Error("graph_euler_residual: layer is not weight homogeneous");
    r.add_layer(k, m * Rat(-(*w - ctx->df() * k)));
  }
  return r;
}

/// Filtration mode: along a coordinate of the ambient space (direct), or
/// along t of the graph embedding.
struct DirectMode {
  std::size_t var;
};
struct GraphMode {
  std::size_t t_index;
};
using VMode = std::variant<DirectMode, GraphMode>;

/// V-degree of an operator monomial: deg_v - deg_dv along the filtration
/// variable. Rejects anything that is not a single monomial term.
inline long v_degree(const WeylOp& mono, const VMode& mode) {
  if (mono.terms().size() != 1 || mono.terms().begin()->second.size() != 1)
    throw Error("v_degree: operator is not a monomial");
  const auto& [alpha, h] = *mono.terms().begin();
  const Exponent& a = h.terms().begin()->first;
  std::size_t v = std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DirectMode>) {
          return m.var;
        } else {
          return m.t_index;
        }
      },
      mode);
  if (v >= a.size()) throw Error("v_degree: filtration variable out of range");
  return static_cast<long>(a[v]) - alpha[v];
}

/// The minimum V-degree over all terms (an operator lies in V^j iff this is >= j).
inline long min_v_degree(const WeylOp& op, const VMode& mode) {
  long best = 0;
  bool first = true;
  for (const auto& [alpha, h] : op.terms())
    for (const auto& [a, c] : h.terms()) {
      long d = v_degree(WeylOp::monomial(a, alpha, c), mode);
      best = first ? d : std::min(best, d);
      first = false;
    }
  return best;
}

/// i_+ M_0 = (+)_{alpha in N^c} M_0 d^alpha for a finite-dimensional M_0.
struct DeltaModule {
  long base_dim;
  int codim;

  DeltaModule(long base, int c) : base_dim(base), codim(c) {
    if (base_dim < 1) throw Error("delta module: base dimension must be >= 1");
    if (codim < 1) throw Error("delta module: codimension must be >= 1");
  }

  /// Pushforward along one more normal coordinate.
  DeltaModule pushforward() const { return DeltaModule(base_dim, codim + 1); }
};

struct VPiece {
  long dimension;
  std::vector<Exponent> alphas;  // M_0 d^alpha summands in the piece
};

/// V^lambda = (+)_{|alpha| <= -lambda} M_0 d^alpha.
inline VPiece delta_v_piece(const DeltaModule& d, const Rat& lambda) {
  VPiece out{0, {}};
  Rat neg = -lambda;
  if (neg < 0) return out;
  long bound = floor_of(neg).get_si();
  Exponent cur(static_cast<std::size_t>(d.codim), 0);
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i == cur.size()) {
      out.alphas.push_back(cur);
      return;
    }
    for (long k = 0; k <= left; ++k) {
      cur[i] = static_cast<int>(k);
      self(self, i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(rec, 0, bound);
  out.dimension = d.base_dim * static_cast<long>(out.alphas.size());
  return out;
}

/// dim Gr_V^lambda: nonzero only at integers lambda <= 0.
inline long delta_gr_dimension(const DeltaModule& d, const Rat& lambda) {
  if (lambda > 0 || !is_integer(lambda)) return 0;
  return delta_v_piece(d, lambda).dimension - delta_v_piece(d, lambda + 1).dimension;
}

/// The b-function of a delta module along its support is s.
inline BFunction delta_bfunction(const DeltaModule&) {
  return BFunction::from_roots({{Rat(0), 1}}, BVar::s);
}

}  // namespace bsv

#endif  // BSV_GRAPH_HPP
