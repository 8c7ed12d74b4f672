#ifndef BSV_LOCOH_HPP
#define BSV_LOCOH_HPP

// The local cohomology module H^1_g(S) = S[1/g]/S of a weighted homogeneous
// hypersurface, with canonical forms and the Weyl algebra action.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bsv/linear_solve.hpp"
#include "bsv/poly.hpp"
#include "bsv/weyl.hpp"

namespace bsv {

/// Hypersurface data: g, its weights and weighted degree d.
///
/// Only a single equation (codimension one) is supported. Weighted degree
/// d == 1 is accepted alongside d >= 2 so that H^1_v(S) for a coordinate v
/// can model a delta module along {v = 0}.
class HyperData {
 public:
  HyperData(Poly g, WeightSystem weights)
      : g_(std::move(g)), weights_(std::move(weights)), order_(weights_) {
    if (g_.arity() != weights_.size()) throw Error("hypersurface: arity of g does not match the weights");
    if (g_.is_zero()) throw Error("hypersurface: g must be nonzero");
    WDeg d = wdeg(g_, weights_);
    if (!d.is_finite()) throw Error("hypersurface: g is not weighted homogeneous");
    if (d.value() < 1) throw Error("hypersurface: g must have positive weighted degree");
    degree_ = d.value();
    powers_.push_back(Poly::constant(g_.arity(), 1));
  }

  static std::shared_ptr<const HyperData> make(Poly g, WeightSystem weights) {
    return std::make_shared<const HyperData>(std::move(g), std::move(weights));
  }

  const Poly& g() const { return g_; }
  const WeightSystem& weights() const { return weights_; }
  const TermOrder& order() const { return order_; }
  long degree() const { return degree_; }
  std::size_t arity() const { return g_.arity(); }
  const std::vector<std::string>& vars() const { return weights_.vars(); }

  /// g^k, memoized. Safe for concurrent callers.
  Poly g_power(int k) const {
    std::lock_guard lock(mutex_);
    while (static_cast<int>(powers_.size()) <= k) powers_.push_back(powers_.back() * g_);
    return powers_[static_cast<std::size_t>(k)];
  }

 private:
  Poly g_;
  WeightSystem weights_;
  TermOrder order_;
  long degree_ = 0;
  mutable std::mutex mutex_;
  mutable std::vector<Poly> powers_;
};

using HyperPtr = std::shared_ptr<const HyperData>;

/// Coordinate key of an element: (pole order, monomial) ordered by pole order
/// first, then the term order of the hypersurface.
struct PoleKey {
  int pole;
  Exponent mono;
};

struct PoleKeyLess {
  TermOrder order;
  bool operator()(const PoleKey& a, const PoleKey& b) const {
    if (a.pole != b.pole) return a.pole < b.pole;
    return order.less(a.mono, b.mono);
  }
};

/// Element sum_k h_k / g^k of S[1/g]/S in canonical form: every numerator is
/// the normal form of itself modulo (g) under the term order, so two
/// elements are equal iff their numerator maps are equal.
class LocCohElem {
 public:
  using Raw = std::map<int, Poly>;

  explicit LocCohElem(HyperPtr ctx) : ctx_(std::move(ctx)) {}

  /// Canonical representative of sum raw[k]/g^k modulo S. Entries with
  /// k <= 0 are polynomials and vanish.
  static LocCohElem reduce(const Raw& raw, HyperPtr ctx) {
    LocCohElem out(ctx);
    if (raw.empty()) return out;
    const std::size_t n = ctx->arity();
    Poly carry(n);
    int top = raw.rbegin()->first;
    for (int k = top; k >= 1; --k) {
      Poly h = carry;
      if (auto it = raw.find(k); it != raw.end()) {
        if (it->second.arity() != n) throw Error("numerator arity mismatch");
        h += it->second;
      }
      if (h.is_zero()) {
        carry = Poly(n);
        continue;
      }
      Division d = divide(h, ctx->g(), ctx->order());
      if (!d.remainder.is_zero()) out.num_.emplace(k, std::move(d.remainder));
      carry = std::move(d.quotient);
    }
    return out;
  }

  /// h / g^k.
  static LocCohElem fraction(const Poly& h, int k, HyperPtr ctx) {
    return reduce(Raw{{k, h}}, std::move(ctx));
  }

  const HyperPtr& context() const { return ctx_; }
  const std::map<int, Poly>& numerators() const { return num_; }
  bool is_zero() const { return num_.empty(); }
  int pole_order() const { return num_.empty() ? 0 : num_.rbegin()->first; }

  LocCohElem& operator+=(const LocCohElem& o) {
    check_context(o);
    Raw raw = num_;
    for (const auto& [k, h] : o.num_) {
      auto [it, ins] = raw.try_emplace(k, h);
      if (!ins) it->second += h;
    }
    // Sums of normal forms are normal forms; only drop cancelled entries.
    num_.clear();
    for (auto& [k, h] : raw)
      if (!h.is_zero()) num_.emplace(k, std::move(h));
    return *this;
  }
  LocCohElem& operator-=(const LocCohElem& o) { return *this += o * Rat(-1); }
  LocCohElem& operator*=(const Rat& c) {
    if (c == 0) {
      num_.clear();
    } else {
      for (auto& [k, h] : num_) h *= c;
    }
    return *this;
  }
  friend LocCohElem operator+(LocCohElem a, const LocCohElem& b) { return a += b; }
  friend LocCohElem operator-(LocCohElem a, const LocCohElem& b) { return a -= b; }
  friend LocCohElem operator*(LocCohElem a, const Rat& c) { return a *= c; }
  friend LocCohElem operator*(const Rat& c, LocCohElem a) { return a *= c; }

  /// Multiplication by a polynomial.
  LocCohElem times(const Poly& p) const {
    Raw raw;
    for (const auto& [k, h] : num_) raw.emplace(k, h * p);
    return reduce(raw, ctx_);
  }

  /// d/dx_i by the quotient rule: d(h/g^k) = (d h)/g^k - k h (d g)/g^(k+1).
  LocCohElem derivative(std::size_t i) const {
    Raw raw;
    Poly dg = ctx_->g().derivative(i);
    for (const auto& [k, h] : num_) {
      Poly dh = h.derivative(i);
      if (!dh.is_zero()) {
        auto [it, ins] = raw.try_emplace(k, dh);
        if (!ins) it->second += dh;
      }
      Poly t = h * dg * Rat(-k);
      if (!t.is_zero()) {
        auto [it, ins] = raw.try_emplace(k + 1, t);
        if (!ins) it->second += t;
      }
    }
    return reduce(raw, ctx_);
  }

  /// Weight under the weighted Euler operator when every term has the same
  /// value wdeg(h) - d*k; nullopt otherwise (and for zero).
  std::optional<long> weight() const {
    std::optional<long> w;
    for (const auto& [k, h] : num_)
      for (const auto& [e, c] : h.terms()) {
        long v = ctx_->weights().degree(e) - ctx_->degree() * k;
        if (w && *w != v) return std::nullopt;
        w = v;
      }
    return w;
  }

  using Coordinates = SparseVec<PoleKey, PoleKeyLess>;

  Coordinates coordinates() const {
    Coordinates out(PoleKeyLess{ctx_->order()});
    for (const auto& [k, h] : num_)
      for (const auto& [e, c] : h.terms()) out.emplace(PoleKey{k, e}, c);
    return out;
  }

  static LocCohElem from_coordinates(const Coordinates& coords, HyperPtr ctx) {
    Raw raw;
    for (const auto& [key, c] : coords) {
      auto [it, ins] = raw.try_emplace(key.pole, Poly(ctx->arity()));
      it->second.add_term(key.mono, c);
    }
    return reduce(raw, std::move(ctx));
  }

  bool operator==(const LocCohElem& o) const {
    return same_context(o) && num_ == o.num_;
  }

  bool same_context(const LocCohElem& o) const {
    return ctx_ == o.ctx_ || (ctx_->g() == o.ctx_->g() && ctx_->weights() == o.ctx_->weights());
  }
  void check_context(const LocCohElem& o) const {
    if (!same_context(o)) throw Error("local cohomology elements from different modules");
  }

 private:
  HyperPtr ctx_;
  std::map<int, Poly> num_;
};

inline LocCohElem reduce(const LocCohElem::Raw& raw, HyperPtr ctx) {
  return LocCohElem::reduce(raw, std::move(ctx));
}

inline bool is_zero(const LocCohElem& m) { return m.is_zero(); }

/// Action of a differential operator, followed by canonical reduction.
inline LocCohElem act(const WeylOp& p, const LocCohElem& m) {
  const auto& ctx = m.context();
  if (p.arity() != ctx->arity()) throw Error("operator/module arity mismatch");
  std::map<Exponent, LocCohElem> derived;
  derived.emplace(zero_exponent(ctx->arity()), m);
  // d^alpha m, built from d^(alpha - e_i) m.
  auto get = [&](auto&& self, const Exponent& alpha) -> const LocCohElem& {
    if (auto it = derived.find(alpha); it != derived.end()) return it->second;
    std::size_t i = 0;
    while (alpha[i] == 0) ++i;
    Exponent lower(alpha);
    --lower[i];
    LocCohElem d = self(self, lower).derivative(i);
    return derived.emplace(alpha, std::move(d)).first->second;
  };
  LocCohElem::Raw raw;
  for (const auto& [alpha, h] : p.terms()) {
    const LocCohElem& d = get(get, alpha);
    for (const auto& [k, num] : d.numerators()) {
      Poly t = num * h;
      auto [it, ins] = raw.try_emplace(k, t);
      if (!ins) it->second += t;
    }
  }
  return LocCohElem::reduce(raw, ctx);
}

/// Weight-lambda eigenvalue of the weighted Euler operator, checked through
/// the actual action; nullopt when m is not an eigenvector (or is zero).
inline std::optional<Rat> euler_eigenvalue(const LocCohElem& m) {
  if (m.is_zero()) return std::nullopt;
  LocCohElem image = act(euler(m.context()->weights()), m);
  const auto& [k, h] = *m.numerators().begin();
  const auto& [e, c] = *h.terms().begin();
  auto it = image.numerators().find(k);
  Rat lambda = it == image.numerators().end() ? Rat(0) : it->second.coeff(e) / c;
  if (!(image == m * lambda)) return std::nullopt;
  return lambda;
}

/// Basis of the weight-lambda part of span{h/g^k : k <= pole_cap}, in
/// reduced echelon form (descending pivots). That span equals
/// {H/g^pole_cap : H in S of degree lambda + d*pole_cap}.
inline std::vector<LocCohElem> weight_basis(long lambda, int pole_cap, const HyperPtr& ctx) {
  if (pole_cap < 1) throw Error("weight_basis: pole cap must be >= 1");
  long degree = lambda + ctx->degree() * pole_cap;
  std::vector<LocCohElem::Coordinates> spanning;
  for (const Exponent& e : monomials_of_degree(ctx->weights(), degree)) {
    LocCohElem m = LocCohElem::fraction(Poly::monomial(e), pole_cap, ctx);
    if (!m.is_zero()) spanning.push_back(m.coordinates());
  }
  std::vector<LocCohElem> basis;
  for (const auto& row : echelon_basis(spanning))
    basis.push_back(LocCohElem::from_coordinates(row, ctx));
  return basis;
}

/// Coefficients of m in a basis (as produced by weight_basis); nullopt when
/// m is outside the span.
inline std::optional<std::vector<Rat>> coordinates_in_basis(const LocCohElem& m,
                                                            const std::vector<LocCohElem>& basis) {
  std::vector<LocCohElem::Coordinates> cols;
  for (const auto& b : basis) cols.push_back(b.coordinates());
  return solve_combination(cols, m.coordinates());
}

/// "x/g - 2*x*y^2/g^2" style text; `gname` names the denominator.
inline std::string to_string(const LocCohElem& m, const std::string& gname = "g") {
  if (m.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, h] : m.numerators()) {
    std::string den = gname + (k > 1 ? "^" + std::to_string(k) : "");
    std::string num = to_string(h, m.context()->vars(), m.context()->order());
    bool single = h.size() == 1;
    if (single) {
      bool neg = num[0] == '-';
      std::string body = neg ? num.substr(1) : num;
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      out += body + "/" + den;
    } else {
      out += first ? "" : " + ";
      out += "(" + num + ")/" + den;
    }
    first = false;
  }
  return out;
}

}  // namespace bsv

#endif  // BSV_LOCOH_HPP
