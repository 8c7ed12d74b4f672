#ifndef BSV_POLY_HPP
#define BSV_POLY_HPP

// Sparse multivariate polynomials over Q with weighted gradings.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bsv/rational.hpp"

namespace bsv {

/// Exponent vector, one entry per variable.
using Exponent = std::vector<int>;

inline Exponent zero_exponent(std::size_t n) { return Exponent(n, 0); }

inline Exponent unit_exponent(std::size_t n, std::size_t i, int power = 1) {
  Exponent e(n, 0);
  e[i] = power;
  return e;
}

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline int total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

/// Variable names with positive integer weights.
class WeightSystem {
 public:
  WeightSystem() = default;
  WeightSystem(std::vector<std::string> vars, std::vector<int> weights)
      : vars_(std::move(vars)), weights_(std::move(weights)) {
    if (vars_.size() != weights_.size())
      throw Error("weight system: " + std::to_string(vars_.size()) + " variables but " +
                  std::to_string(weights_.size()) + " weights");
    for (int w : weights_)
      if (w < 1) throw Error("weight system: weights must be >= 1");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[i] == vars_[j]) throw Error("weight system: duplicate variable " + vars_[i]);
  }

  static WeightSystem standard(std::vector<std::string> vars) {
    std::vector<int> w(vars.size(), 1);
    return WeightSystem(std::move(vars), std::move(w));
  }

  std::size_t size() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(std::size_t i) const { return weights_[i]; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  long degree(const Exponent& e) const {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(weights_[i]) * e[i];
    return d;
  }

  bool operator==(const WeightSystem&) const = default;

 private:
  std::vector<std::string> vars_;
  std::vector<int> weights_;
};

/// Weighted graded lexicographic order: weighted degree first, ties broken
/// lexicographically (first variable most significant).
class TermOrder {
 public:
  TermOrder() = default;
  explicit TermOrder(std::vector<int> weights) : weights_(std::move(weights)) {}
  explicit TermOrder(const WeightSystem& w) : weights_(w.weights()) {}

  long degree(const Exponent& e) const {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      d += static_cast<long>(i < weights_.size() ? weights_[i] : 1) * e[i];
    return d;
  }

  /// Strict "a < b".
  bool less(const Exponent& a, const Exponent& b) const {
    long da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a < b;
  }

  bool operator()(const Exponent& a, const Exponent& b) const { return less(a, b); }

 private:
  std::vector<int> weights_;
};

class Poly {
 public:
  using Terms = std::map<Exponent, Rat>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    p.add_term(zero_exponent(nvars), c);
    return p;
  }
  static Poly monomial(const Exponent& e, const Rat& c = 1) {
    Poly p(e.size());
    p.add_term(e, c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    return monomial(unit_exponent(nvars, i));
  }

  std::size_t arity() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Rat coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Exponent& e, const Rat& c) {
    if (e.size() != nvars_) throw Error("polynomial arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rat& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [e, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  Poly operator-() const {
    Poly r(*this);
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }

  static Poly mul(const Poly& a, const Poly& b) {
    a.check_arity(b);
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  /// Multiplies by the monomial c*x^e.
  Poly times_monomial(const Exponent& e, const Rat& c = 1) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [ea, ca] : terms_) r.terms_.emplace(ea + e, ca * c);
    return r;
  }

  Poly derivative(std::size_t i) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d(e);
      --d[i];
      r.add_term(d, c * e[i]);
    }
    return r;
  }

  /// Largest term under the given order; the polynomial must be nonzero.
  std::pair<Exponent, Rat> leading_term(const TermOrder& order) const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (order.less(best->first, it->first)) best = it;
    return *best;
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  void check_arity(const Poly& o) const {
    if (o.nvars_ != nvars_)
      throw Error("polynomial arity mismatch (" + std::to_string(nvars_) + " vs " +
                  std::to_string(o.nvars_) + ")");
  }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

inline Poly mul(const Poly& p, const Poly& q) { return Poly::mul(p, q); }

/// Quotient and remainder of multivariate division by a single divisor.
struct Division {
  Poly quotient;
  Poly remainder;
};

/// Division by one polynomial: no term of the remainder is divisible by the
/// leading monomial of q. Since {q} is a Groebner basis of (q), the remainder
/// is the unique normal form of p modulo (q) for the order.
inline Division divide(const Poly& p, const Poly& q, const TermOrder& order = {}) {
  p.check_arity(q);
  if (q.is_zero()) throw Error("division by the zero polynomial");
  const auto [lead_exp, lead_coeff] = q.leading_term(order);
  std::map<Exponent, Rat, TermOrder> work(order);
  for (const auto& [e, c] : p.terms()) work.emplace(e, c);
  Division out{Poly(p.arity()), Poly(p.arity())};
  Exponent shift(p.arity());
  while (!work.empty()) {
    auto top = std::prev(work.end());
    Exponent e = top->first;
    Rat c = top->second;
    work.erase(top);
    if (!divides(lead_exp, e)) {
      out.remainder.add_term(e, c);
      continue;
    }
    for (std::size_t i = 0; i < e.size(); ++i) shift[i] = e[i] - lead_exp[i];
    Rat factor = c / lead_coeff;
    out.quotient.add_term(shift, factor);
    for (const auto& [qe, qc] : q.terms()) {
      if (qe == lead_exp) continue;
      Exponent t = qe + shift;
      auto [it, inserted] = work.try_emplace(t, -factor * qc);
      if (!inserted) {
        it->second -= factor * qc;
        if (it->second == 0) work.erase(it);
      }
    }
  }
  return out;
}

/// r with q*r = p, or nullopt when q does not divide p.
inline std::optional<Poly> exact_div(const Poly& p, const Poly& q, const TermOrder& order = {}) {
  Division d = divide(p, q, order);
  if (!d.remainder.is_zero()) return std::nullopt;
  return std::move(d.quotient);
}

/// Weighted degree: a finite value, Bottom for the zero polynomial, or
/// NotHomogeneous. Bottom absorbs sums: bottom + d = bottom.
class WDeg {
 public:
  enum class Kind { finite, bottom, not_homogeneous };

  static WDeg finite(long v) { return WDeg(Kind::finite, v); }
  static WDeg bottom() { return WDeg(Kind::bottom, 0); }
  static WDeg not_homogeneous() { return WDeg(Kind::not_homogeneous, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_bottom() const { return kind_ == Kind::bottom; }
  bool is_homogeneous() const { return kind_ != Kind::not_homogeneous; }
  long value() const {
    if (kind_ != Kind::finite) throw Error("weighted degree is not a finite value");
    return value_;
  }

  friend WDeg operator+(const WDeg& a, const WDeg& b) {
    if (!a.is_homogeneous() || !b.is_homogeneous()) return not_homogeneous();
    if (a.is_bottom() || b.is_bottom()) return bottom();
    return finite(a.value_ + b.value_);
  }
  bool operator==(const WDeg&) const = default;

 private:
  WDeg(Kind k, long v) : kind_(k), value_(v) {}
  Kind kind_;
  long value_;
};

inline WDeg wdeg(const Poly& p, const WeightSystem& w) {
  if (p.arity() != w.size()) throw Error("weighted degree: arity mismatch");
  if (p.is_zero()) return WDeg::bottom();
  long d = w.degree(p.terms().begin()->first);
  for (const auto& [e, c] : p.terms())
    if (w.degree(e) != d) return WDeg::not_homogeneous();
  return WDeg::finite(d);
}

/// Components by weighted degree, strictly increasing.
inline std::vector<std::pair<long, Poly>> homogeneous_components(const Poly& p,
                                                                 const WeightSystem& w) {
  std::map<long, Poly> parts;
  for (const auto& [e, c] : p.terms()) {
    auto [it, _] = parts.try_emplace(w.degree(e), Poly(p.arity()));
    it->second.add_term(e, c);
  }
  return {std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end())};
}

/// All exponent vectors of the given weighted degree, ascending in the order.
inline std::vector<Exponent> monomials_of_degree(const WeightSystem& w, long degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  Exponent cur(w.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i + 1 == w.size()) {
      if (left % w.weight(i) == 0) {
        cur[i] = static_cast<int>(left / w.weight(i));
        out.push_back(cur);
      }
      return;
    }
    for (long k = 0; k * w.weight(i) <= left; ++k) {
      cur[i] = static_cast<int>(k);
      self(self, i + 1, left - k * w.weight(i));
    }
    cur[i] = 0;
  };
  if (w.size() == 0) {
    if (degree == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), TermOrder(w));
  return out;
}

inline std::string monomial_string(const Exponent& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

/// Prints terms in descending term order, e.g. "x^3 - 1/2*x*y + 2".
inline std::string to_string(const Poly& p, const std::vector<std::string>& vars,
                             const TermOrder& order = {}) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponent, Rat>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return order.less(b.first, a.first); });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rat mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_string(e, vars);
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace bsv

#endif  // BSV_POLY_HPP
