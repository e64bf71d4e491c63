#ifndef HOLOCT_IO_PARSER_HPP
#define HOLOCT_IO_PARSER_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "holoct/weyl/operator.hpp"

namespace holoct {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Recursive-descent parser for operator expressions:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*        divisors must be scalars
//                                             a/c means a*(1/c)
//   unary  := ('-'|'+') unary | power
//   power  := atom ('^' nat)*
//   atom   := nat | 't' | var | 'd'var | 'e'nat | '(' expr ')'
// Products are expanded non-commutatively from left to right.
template <class K>
class OperatorParser {
 public:
  using Op = WeylOperator<K>;

  explicit OperatorParser(RingPtr<K> ring) : ring_(std::move(ring)), scalar_(ring_->with_rank(1)) {}

  Op parse(std::string_view text) const {
    State s{text, 0};
    Op v = expr(s);
    skip_space(s);
    if (s.pos != text.size()) throw ParseError("unexpected '" + std::string(1, text[s.pos]) + "'", s.pos);
    return to_vector(v, 0);
  }

 private:
  struct State {
    std::string_view text;
    std::size_t pos;
  };

  static void skip_space(State& s) {
    while (s.pos < s.text.size() && std::isspace(static_cast<unsigned char>(s.text[s.pos]))) ++s.pos;
  }
  static bool accept(State& s, char c) {
    skip_space(s);
    if (s.pos < s.text.size() && s.text[s.pos] == c) {
      ++s.pos;
      return true;
    }
    return false;
  }

  Op to_vector(const Op& v, std::size_t pos) const {
    if (v.ring()->rank() == ring_->rank()) return Op(ring_, v.terms());
    if (ring_->rank() > 1 && v.is_zero()) return Op(ring_);
    throw ParseError("expression must name a basis vector e1..e" + std::to_string(ring_->rank()), pos);
  }

  Op add(const Op& a, const Op& b, bool subtract, std::size_t pos) const {
    if (a.ring()->rank() != b.ring()->rank()) {
      if (a.is_zero()) return subtract ? -b : b;
      if (b.is_zero()) return a;
      throw ParseError("cannot add scalar and vector", pos);
    }
    return subtract ? a - b : a + b;
  }

  Op expr(State& s) const {
    Op v = term(s);
    for (;;) {
      std::size_t pos = s.pos;
      if (accept(s, '+'))
        v = add(v, term(s), false, pos);
      else if (accept(s, '-'))
        v = add(v, term(s), true, pos);
      else
        return v;
    }
  }

  Op term(State& s) const {
    Op v = unary(s);
    for (;;) {
      std::size_t pos = s.pos;
      if (accept(s, '*')) {
        Op w = unary(s);
        if (v.ring()->rank() > 1 && w.ring()->rank() > 1) throw ParseError("product of two vectors", pos);
        v = mul(v, w);
      } else if (accept(s, '/')) {
        Op w = unary(s);
        if (w.ring()->rank() > 1 || w.size() != 1 || !w.lm().is_one())
          throw ParseError("divisor must be a nonzero scalar", pos);
        v = mul(v, Op::constant(scalar_, ring_->field().inv(w.lc())));
      } else {
        return v;
      }
    }
  }

  Op unary(State& s) const {
    if (accept(s, '-')) return -unary(s);
    if (accept(s, '+')) return unary(s);
    return power(s);
  }

  Op power(State& s) const {
    Op v = atom(s);
    while (accept(s, '^')) {
      skip_space(s);
      std::size_t pos = s.pos;
      unsigned long e = natural(s);
      if (v.ring()->rank() > 1 && e != 1) throw ParseError("power of a vector", pos);
      Op r = Op::one(scalar_);
      if (v.ring()->rank() > 1) r = v;
      else
        for (unsigned long i = 0; i < e; ++i) r = mul(r, v);
      v = r;
    }
    return v;
  }

  unsigned long natural(State& s) const {
    std::size_t start = s.pos;
    while (s.pos < s.text.size() && std::isdigit(static_cast<unsigned char>(s.text[s.pos]))) ++s.pos;
    if (start == s.pos) throw ParseError("expected a natural number", start);
    std::string digits(s.text.substr(start, s.pos - start));
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    return std::stoul(digits);
  }

  Op atom(State& s) const {
    skip_space(s);
    std::size_t start = s.pos;
    if (s.pos >= s.text.size()) throw ParseError("unexpected end of input", s.pos);
    char c = s.text[s.pos];
    if (c == '(') {
      ++s.pos;
      Op v = expr(s);
      if (!accept(s, ')')) throw ParseError("expected ')'", s.pos);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (s.pos < s.text.size() && std::isdigit(static_cast<unsigned char>(s.text[s.pos]))) ++s.pos;
      Rational q(std::string(s.text.substr(start, s.pos - start)));
      return Op::constant(scalar_, ring_->field().from_rational(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (s.pos < s.text.size() &&
             (std::isalnum(static_cast<unsigned char>(s.text[s.pos])) || s.text[s.pos] == '_'))
        ++s.pos;
      return identifier(std::string(s.text.substr(start, s.pos - start)), start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", start);
  }

  Op identifier(const std::string& id, std::size_t pos) const {
    const auto& names = ring_->names();
    const int first = ring_->twisted() ? 1 : 0;
    for (int i = first; i < static_cast<int>(names.size()); ++i)
      if (names[i] == id) return Op::var_x(scalar_, i);
    if (id.size() > 1 && id[0] == 'd') {
      std::string rest = id.substr(1);
      for (int i = 0; i < static_cast<int>(names.size()); ++i)
        if (names[i] == rest) return Op::var_d(scalar_, i);
    }
    if (id == "t") {
      if constexpr (K::kHasParameter) return Op::constant(scalar_, ring_->field().variable());
      throw ParseError("'t' needs a parametric coefficient field", pos);
    }
    if (id.size() > 1 && id[0] == 'e' &&
        id.find_first_not_of("0123456789", 1) == std::string::npos) {
      int j = std::stoi(id.substr(1));
      if (j < 1 || j > ring_->rank()) throw ParseError("basis vector " + id + " out of range", pos);
      if (ring_->rank() == 1) return Op::one(scalar_);
      return Op::basis(ring_, j - 1);
    }
    throw ParseError("unknown symbol '" + id + "'", pos);
  }

  RingPtr<K> ring_;
  RingPtr<K> scalar_;
};

template <class K>
WeylOperator<K> parse_operator(std::string_view text, const RingPtr<K>& ring) {
  return OperatorParser<K>(ring).parse(text);
}

// Monomial as "x1^2*dx1*e2"; "1" for the unit of component 0 in rank 1.
template <class K>
std::string format_monomial(const Monomial& m, const WeylRing<K>& ring) {
  std::string out;
  auto factor = [&](const std::string& name, unsigned e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  };
  const auto& names = ring.names();
  for (int i = 0; i < ring.arity(); ++i) factor(names[i], m.x[i]);
  for (int i = 0; i < ring.arity(); ++i) factor("d" + names[i], m.d[i]);
  if (ring.rank() > 1) factor("e" + std::to_string(m.component + 1), 1);
  return out.empty() ? "1" : out;
}

// Canonical text: terms in descending order, e.g. "x1*dx1 + 1".
template <class K>
std::string print_operator(const WeylOperator<K>& p) {
  if (p.is_zero()) return "0";
  const K& k = p.field();
  std::string out;
  for (const auto& t : p.terms()) {
    auto c = t.c;
    bool negative = k.is_negative(c);
    if (negative) c = k.neg(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono = format_monomial(t.m, *p.ring());
    std::string cs = k.format(c);
    if (k.is_compound(c)) cs = "(" + cs + ")";
    if (mono == "1")
      out += cs;
    else if (k.is_one(c))
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

}  // namespace holoct

#endif
