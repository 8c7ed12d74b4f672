#ifndef BSV_WEYL_HPP
#define BSV_WEYL_HPP

// Differential operators with polynomial coefficients, stored in normal
// order: sum of h_a * d^a with every coefficient to the left.

#include <map>
#include <string>
#include <vector>

#include "bsv/poly.hpp"

namespace bsv {

namespace detail {

inline BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Calls fn(gamma, C(alpha, gamma)) for every gamma <= alpha componentwise.
template <class Fn>
void for_each_sub_exponent(const Exponent& alpha, Fn&& fn) {
  Exponent gamma(alpha.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, const BigInt& coeff) -> void {
    if (i == alpha.size()) {
      fn(gamma, coeff);
      return;
    }
    for (int k = 0; k <= alpha[i]; ++k) {
      gamma[i] = k;
      self(self, i + 1, coeff * binomial(alpha[i], k));
    }
    gamma[i] = 0;
  };
  rec(rec, 0, BigInt(1));
}

inline Poly partial_power(const Poly& p, const Exponent& gamma) {
  Poly r = p;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (int k = 0; k < gamma[i] && !r.is_zero(); ++k) r = r.derivative(i);
  return r;
}

}  // namespace detail

class WeylOp {
 public:
  using Terms = std::map<Exponent, Poly>;

  WeylOp() = default;
  explicit WeylOp(std::size_t nvars) : nvars_(nvars) {}

  static WeylOp from_poly(const Poly& h) {
    WeylOp op(h.arity());
    op.add_term(zero_exponent(h.arity()), h);
    return op;
  }
  static WeylOp scalar(std::size_t nvars, const Rat& c) {
    return from_poly(Poly::constant(nvars, c));
  }
  static WeylOp identity(std::size_t nvars) { return scalar(nvars, 1); }
  static WeylOp variable(std::size_t nvars, std::size_t i) {
    return from_poly(Poly::variable(nvars, i));
  }
  static WeylOp partial(std::size_t nvars, std::size_t i, int power = 1) {
    WeylOp op(nvars);
    op.add_term(unit_exponent(nvars, i, power), Poly::constant(nvars, 1));
    return op;
  }
  /// The single term c * x^a * d^b.
  static WeylOp monomial(const Exponent& a, const Exponent& b, const Rat& c = 1) {
    WeylOp op(a.size());
    op.add_term(b, Poly::monomial(a, c));
    return op;
  }

  std::size_t arity() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  void add_term(const Exponent& alpha, const Poly& h) {
    if (alpha.size() != nvars_ || h.arity() != nvars_) throw Error("operator arity mismatch");
    if (h.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, h);
    if (!inserted) {
      it->second += h;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Highest total order of d appearing.
  int order() const {
    int o = 0;
    for (const auto& [alpha, h] : terms_) o = std::max(o, total_degree(alpha));
    return o;
  }

  WeylOp& operator+=(const WeylOp& o) {
    check_arity(o);
    for (const auto& [a, h] : o.terms_) add_term(a, h);
    return *this;
  }
  WeylOp& operator-=(const WeylOp& o) {
    check_arity(o);
    for (const auto& [a, h] : o.terms_) add_term(a, -h);
    return *this;
  }
  WeylOp& operator*=(const Rat& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, h] : terms_) h *= c;
    return *this;
  }
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  friend WeylOp operator*(const Rat& c, WeylOp a) { return a *= c; }
  friend WeylOp operator*(WeylOp a, const Rat& c) { return a *= c; }
  WeylOp operator-() const { return *this * Rat(-1); }

  /// Composition: (*this) applied after o.
  friend WeylOp operator*(const WeylOp& p, const WeylOp& q) { return compose(p, q); }

  static WeylOp compose(const WeylOp& p, const WeylOp& q) {
    p.check_arity(q);
    WeylOp r(p.nvars_);
    for (const auto& [alpha, h] : p.terms_)
      for (const auto& [beta, k] : q.terms_)
        detail::for_each_sub_exponent(alpha, [&](const Exponent& gamma, const BigInt& c) {
          Poly dk = detail::partial_power(k, gamma);
          if (dk.is_zero()) return;
          Exponent rest(alpha.size());
          for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = alpha[i] - gamma[i] + beta[i];
          r.add_term(rest, (h * dk) * Rat(c));
        });
    return r;
  }

  bool operator==(const WeylOp& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  void check_arity(const WeylOp& o) const {
    if (o.nvars_ != nvars_) throw Error("operator arity mismatch");
  }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

inline WeylOp compose(const WeylOp& p, const WeylOp& q) { return WeylOp::compose(p, q); }

inline WeylOp power(const WeylOp& p, int k) {
  WeylOp r = WeylOp::identity(p.arity());
  for (int i = 0; i < k; ++i) r = compose(p, r);
  return r;
}

/// Classical adjoint: sum h_a d^a  ->  sum (-d)^a h_a, normal ordered.
inline WeylOp adjoint(const WeylOp& p) {
  WeylOp r(p.arity());
  for (const auto& [alpha, h] : p.terms()) {
    Rat sign = total_degree(alpha) % 2 == 0 ? Rat(1) : Rat(-1);
    detail::for_each_sub_exponent(alpha, [&](const Exponent& gamma, const BigInt& c) {
      Poly dh = detail::partial_power(h, gamma);
      if (dh.is_zero()) return;
      Exponent rest(alpha.size());
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = alpha[i] - gamma[i];
      r.add_term(rest, dh * (sign * Rat(c)));
    });
  }
  return r;
}

/// Action on S by the Leibniz rule.
inline Poly apply(const WeylOp& p, const Poly& h) {
  if (p.arity() != h.arity()) throw Error("operator/polynomial arity mismatch");
  Poly r(h.arity());
  for (const auto& [alpha, coeff] : p.terms()) r += coeff * detail::partial_power(h, alpha);
  return r;
}

/// Weighted Euler operator sum w_i x_i d_i.
inline WeylOp euler(const WeightSystem& w) {
  const std::size_t n = w.size();
  WeylOp op(n);
  for (std::size_t i = 0; i < n; ++i)
    op.add_term(unit_exponent(n, i), Poly::monomial(unit_exponent(n, i), w.weight(i)));
  return op;
}

/// Expanded monomial form, e.g. "x^2*dy^2 - x*dx + 1/2". Reparses with the
/// expression grammar when d<var> is read as the derivative in var.
inline std::string to_string(const WeylOp& op, const std::vector<std::string>& vars,
                             const TermOrder& order = {}) {
  if (op.is_zero()) return "0";
  struct Item {
    Exponent alpha, a;
    Rat c;
  };
  std::vector<Item> items;
  for (const auto& [alpha, h] : op.terms())
    for (const auto& [a, c] : h.terms()) items.push_back({alpha, a, c});
  std::sort(items.begin(), items.end(), [&](const Item& l, const Item& r) {
    long ol = total_degree(l.alpha), orr = total_degree(r.alpha);
    if (ol != orr) return ol > orr;
    if (l.alpha != r.alpha) return l.alpha > r.alpha;
    return order.less(r.a, l.a);
  });
  std::vector<std::string> dvars;
  for (const auto& v : vars) dvars.push_back("d" + v);
  std::string out;
  bool first = true;
  for (const auto& it : items) {
    Rat mag = abs(it.c);
    out += first ? (it.c < 0 ? "-" : "") : (it.c < 0 ? " - " : " + ");
    first = false;
    std::string mono = monomial_string(it.a, vars);
    std::string dmono = monomial_string(it.alpha, dvars);
    std::string body = mono.empty() ? dmono : (dmono.empty() ? mono : mono + "*" + dmono);
    if (body.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += body;
    } else {
      out += to_string(mag) + "*" + body;
    }
  }
  return out;
}

}  // namespace bsv

#endif  // BSV_WEYL_HPP
