#ifndef BSV_PARSE_HPP
#define BSV_PARSE_HPP

// Recursive-descent reader for polynomials, operators and local cohomology
// elements.
//
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' integer]
//   primary := integer | identifier | '(' expr ')'
//
// An identifier is a declared variable, d<variable> for a derivative, or the
// hypersurface name (elements only). Factors need an explicit '*'; "2x" and
// "x y" are rejected. Division is allowed by nonzero constants and, inside
// elements, by powers of the hypersurface name.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsv/bfunction.hpp"
#include "bsv/locoh.hpp"
#include "bsv/poly.hpp"
#include "bsv/rational.hpp"
#include "bsv/weyl.hpp"

namespace bsv {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

namespace detail {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') throw ParseError("decimal numbers are not allowed; use p/q", i);
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      default: throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
    }
    out.push_back({k, std::string(1, s[i]), start});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

/// A parsed value: sum over pole orders k of P_k / g^k, where P_k is an
/// operator (a polynomial when it has no derivatives).
struct Value {
  std::map<int, WeylOp> parts;
  std::optional<int> g_power;  // set when the value is literally g^k
  std::size_t arity = 0;

  static Value of(WeylOp op) {
    Value v;
    v.arity = op.arity();
    if (!op.is_zero()) v.parts.emplace(0, std::move(op));
    return v;
  }
  bool has_poles() const {
    for (const auto& [k, p] : parts)
      if (k > 0) return true;
    return false;
  }
  bool has_derivatives() const {
    for (const auto& [k, p] : parts)
      for (const auto& [alpha, h] : p.terms())
        if (total_degree(alpha) > 0) return true;
    return false;
  }
  std::optional<Rat> constant() const {
    if (parts.empty()) return Rat(0);
    if (parts.size() != 1 || parts.begin()->first != 0) return std::nullopt;
    const WeylOp& p = parts.begin()->second;
    if (p.terms().size() != 1) return std::nullopt;
    const auto& [alpha, h] = *p.terms().begin();
    if (total_degree(alpha) != 0 || h.terms().size() != 1) return std::nullopt;
    const auto& [e, c] = *h.terms().begin();
    if (total_degree(e) != 0) return std::nullopt;
    return c;
  }
};

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string> vars, bool allow_d,
         std::optional<std::pair<std::string, Poly>> hyper)
      : toks_(tokenize(text)), vars_(std::move(vars)), allow_d_(allow_d), hyper_(std::move(hyper)) {}

  Value parse() {
    if (peek().kind == Tok::end) throw ParseError("empty expression", peek().pos);
    Value v = expr();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  std::size_t n() const { return vars_.size(); }

  Value add(Value a, const Value& b, const Rat& sign) {
    for (const auto& [k, p] : b.parts) {
      auto it = a.parts.find(k);
      WeylOp q = p * sign;
      if (it == a.parts.end()) {
        a.parts.emplace(k, std::move(q));
      } else {
        it->second = it->second + q;
        if (it->second.is_zero()) a.parts.erase(it);
      }
    }
    a.g_power.reset();
    return a;
  }

  Value mul(const Value& a, const Value& b, std::size_t at) {
    Value out;
    out.arity = n();
    bool poles = a.has_poles() || b.has_poles();
    if (poles && (a.has_derivatives() || b.has_derivatives()))
      throw ParseError("operators cannot be multiplied with fractions", at);
    for (const auto& [ka, pa] : a.parts)
      for (const auto& [kb, pb] : b.parts) {
        WeylOp prod = compose(pa, pb);
        auto it = out.parts.find(ka + kb);
        if (it == out.parts.end()) {
          if (!prod.is_zero()) out.parts.emplace(ka + kb, std::move(prod));
        } else {
          it->second = it->second + prod;
          if (it->second.is_zero()) out.parts.erase(it);
        }
      }
    if (a.g_power && b.g_power) out.g_power = *a.g_power + *b.g_power;
    return out;
  }

  Value expr() {
    Value v;
    v.arity = n();
    bool neg = false;
    if (peek().kind == Tok::minus) {
      next();
      neg = true;
    } else if (peek().kind == Tok::plus) {
      next();
    }
    v = add(v, term(), neg ? Rat(-1) : Rat(1));
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      Rat sign = next().kind == Tok::plus ? Rat(1) : Rat(-1);
      v = add(v, term(), sign);
    }
    return v;
  }

  Value term() {
    Value v = unary();
    while (true) {
      Tok k = peek().kind;
      if (k == Tok::star) {
        std::size_t at = next().pos;
        v = mul(v, unary(), at);
      } else if (k == Tok::slash) {
        std::size_t at = next().pos;
        Value d = unary();
        if (d.g_power) {
          Value shifted;
          shifted.arity = n();
          if (v.has_derivatives()) throw ParseError("cannot divide an operator by " + hyper_->first, at);
          for (auto& [kk, p] : v.parts) shifted.parts.emplace(kk + *d.g_power, p);
          v = std::move(shifted);
        } else if (auto c = d.constant()) {
          if (*c == 0) throw ParseError("division by zero", at);
          Value scaled;
          scaled.arity = n();
          for (auto& [kk, p] : v.parts) scaled.parts.emplace(kk, p * (Rat(1) / *c));
          v = std::move(scaled);
        } else {
          throw ParseError(hyper_ ? "can only divide by constants or powers of " + hyper_->first
                                  : "can only divide by constants",
                           at);
        }
      } else if (k == Tok::number || k == Tok::ident || k == Tok::lparen) {
        throw ParseError("missing '*' between factors", peek().pos);
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (peek().kind == Tok::minus) {
      std::size_t at = next().pos;
      Value v = unary();
      return mul(Value::of(WeylOp::scalar(n(), -1)), v, at);
    }
    return power();
  }

  Value power() {
    Value base = primary();
    if (peek().kind != Tok::caret) return base;
    std::size_t at = next().pos;
    if (peek().kind == Tok::minus) throw ParseError("negative exponent", peek().pos);
    if (peek().kind != Tok::number) throw ParseError("exponent must be a nonnegative integer", peek().pos);
    const Token& t = next();
    if (t.text.size() > 6) throw ParseError("exponent too large", t.pos);
    int e = std::stoi(t.text);
    Value r = Value::of(WeylOp::identity(n()));
    for (int i = 0; i < e; ++i) r = mul(r, base, at);
    r.g_power.reset();
    if (base.g_power && e > 0) r.g_power = *base.g_power * e;
    return r;
  }

  Value primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        next();
        return Value::of(WeylOp::scalar(n(), Rat(BigInt(t.text))));
      }
      case Tok::lparen: {
        next();
        Value v = expr();
        if (peek().kind != Tok::rparen) throw ParseError("expected ')'", peek().pos);
        next();
        return v;
      }
      case Tok::ident: {
        next();
        for (std::size_t i = 0; i < n(); ++i)
          if (vars_[i] == t.text) return Value::of(WeylOp::variable(n(), i));
        if (hyper_ && t.text == hyper_->first) {
          Value v = Value::of(WeylOp::from_poly(hyper_->second));
          v.g_power = 1;
          return v;
        }
        if (t.text.size() > 1 && t.text[0] == 'd') {
          std::string rest = t.text.substr(1);
          for (std::size_t i = 0; i < n(); ++i)
            if (vars_[i] == rest) {
              if (!allow_d_) throw ParseError("derivative '" + t.text + "' not allowed here", t.pos);
              return Value::of(WeylOp::partial(n(), i));
            }
        }
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
      }
      case Tok::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
  bool allow_d_;
  std::optional<std::pair<std::string, Poly>> hyper_;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  detail::Value v = detail::Parser(text, vars, false, std::nullopt).parse();
  Poly out(vars.size());
  for (const auto& [k, p] : v.parts) out = out + p.terms().begin()->second;
  return out;
}

inline WeylOp parse_op(std::string_view text, const std::vector<std::string>& vars) {
  detail::Value v = detail::Parser(text, vars, true, std::nullopt).parse();
  if (v.parts.empty()) return WeylOp(vars.size());
  return v.parts.begin()->second;
}

/// Parses a sum of h / g^k into H^1_g(S); polynomial parts vanish.
inline LocCohElem parse_element(std::string_view text, const HyperPtr& ctx,
                                const std::string& gname = "g") {
  for (const auto& v : ctx->vars())
    if (v == gname) throw Error("hypersurface name '" + gname + "' clashes with a variable");
  detail::Value v =
      detail::Parser(text, ctx->vars(), false, std::make_pair(gname, ctx->g())).parse();
  LocCohElem::Raw raw;
  for (const auto& [k, p] : v.parts)
    if (k > 0) raw.emplace(k, p.terms().begin()->second);
  return LocCohElem::reduce(raw, ctx);
}


namespace detail {

inline std::vector<BigInt> positive_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace detail

/// Reads a polynomial in one variable ("s" or "theta") that splits into
/// rational linear factors, e.g. "(s + 1)*(s + 1/2)" or "theta^2".
inline BFunction parse_bfunction(std::string_view text, BVar var) {
  const std::string name = var == BVar::s ? "s" : "theta";
  Poly p = parse_poly(text, {name});
  if (p.is_zero()) throw Error("b-function is zero");
  // Dense coefficients, index = degree.
  int deg = 0;
  for (const auto& [e, v] : p.terms()) deg = std::max(deg, e[0]);
  std::vector<Rat> c(static_cast<std::size_t>(deg) + 1, Rat(0));
  for (const auto& [e, v] : p.terms()) c[static_cast<std::size_t>(e[0])] = v;

  BFunction b(var);
  auto divide_root = [&](const Rat& r) {
    // Synthetic division of the rational coefficients by (v - r).
    std::vector<Rat> q(c.size() - 1, Rat(0));
    Rat carry = 0;
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = c[i] + carry * r;
      q[i - 1] = carry;
    }
    if (c[0] + carry * r != 0) return false;
    c = std::move(q);
    return true;
  };
  while (c.size() > 1 && c[0] == 0) {
    c.erase(c.begin());
    b.add_factor(Rat(0));
  }
  while (c.size() > 1) {
    // Rational root test on the integer-scaled quotient.
    BigInt den = 1;
    for (const auto& v : c) den = lcm(den, BigInt(v.get_den()));
    BigInt lead = BigInt(c.back() * Rat(den));
    BigInt tail = BigInt(c.front() * Rat(den));
    bool found = false;
    for (const BigInt& num : detail::positive_divisors(tail)) {
      for (const BigInt& q : detail::positive_divisors(lead)) {
        for (int sign : {1, -1}) {
          Rat r(num * sign, q);
          r.canonicalize();
          if (divide_root(r)) {
            b.add_factor(-r);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) throw Error("b-function '" + std::string(text) + "' does not split into rational linear factors");
  }
  return b;
}

}  // namespace bsv

#endif  // BSV_PARSE_HPP
