#ifndef HOLOCT_ARITH_RATIONAL_FUNCTION_HPP
#define HOLOCT_ARITH_RATIONAL_FUNCTION_HPP

#include <string>
#include <utility>

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational.hpp"
#include "holoct/arith/upoly.hpp"

namespace holoct {

// num/den with gcd(num, den) = 1 and den monic.
template <class E>
struct RatFun {
  std::vector<E> num;
  std::vector<E> den;
};

// The field Base(t) of rational functions in the parameter t.
template <class Base>
class RationalFunctions {
 public:
  using BaseElement = typename Base::Element;
  using Poly = upoly::Poly<Base>;
  using Element = RatFun<BaseElement>;
  static constexpr bool kHasParameter = true;

  RationalFunctions() = default;
  explicit RationalFunctions(Base base) : base_(std::move(base)) {}

  const Base& base() const { return base_; }

  Element zero() const { return {{}, {base_.one()}}; }
  Element one() const { return {{base_.one()}, {base_.one()}}; }
  Element from_int(long v) const { return constant(base_.from_int(v)); }
  Element from_rational(const Rational& q) const { return constant(base_.from_rational(q)); }
  Element constant(const BaseElement& c) const {
    return {upoly::constant(base_, c), {base_.one()}};
  }
  Element variable() const { return {{base_.zero(), base_.one()}, {base_.one()}}; }
  Element from_poly(Poly p) const {
    upoly::trim(base_, p);
    return {std::move(p), {base_.one()}};
  }
  Element make(Poly num, Poly den) const {
    upoly::trim(base_, num);
    upoly::trim(base_, den);
    return normalize({std::move(num), std::move(den)});
  }

  bool is_zero(const Element& a) const { return a.num.empty(); }
  bool is_one(const Element& a) const {
    return upoly::is_one(base_, a.num) && upoly::is_one(base_, a.den);
  }
  bool is_constant(const Element& a) const { return a.num.size() <= 1 && a.den.size() == 1; }
  bool is_polynomial(const Element& a) const { return a.den.size() == 1; }
  bool equal(const Element& a, const Element& b) const {
    return upoly::equal(base_, a.num, b.num) && upoly::equal(base_, a.den, b.den);
  }

  Element add(const Element& a, const Element& b) const {
    if (a.num.empty()) return b;
    if (b.num.empty()) return a;
    if (upoly::equal(base_, a.den, b.den)) {
      Element r{upoly::add(base_, a.num, b.num), a.den};
      if (r.den.size() == 1) return r;
      return normalize(std::move(r));
    }
    return normalize({upoly::add(base_, upoly::mul(base_, a.num, b.den), upoly::mul(base_, b.num, a.den)),
                      upoly::mul(base_, a.den, b.den)});
  }
  Element neg(const Element& a) const { return {upoly::neg(base_, a.num), a.den}; }
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  Element mul(const Element& a, const Element& b) const {
    if (a.num.empty() || b.num.empty()) return zero();
    if (a.den.size() == 1 && b.den.size() == 1) return {upoly::mul(base_, a.num, b.num), a.den};
    if (a.num.size() == 1 && a.den.size() == 1) return {upoly::scale(base_, b.num, a.num[0]), b.den};
    if (b.num.size() == 1 && b.den.size() == 1) return {upoly::scale(base_, a.num, b.num[0]), a.den};
    return normalize({upoly::mul(base_, a.num, b.num), upoly::mul(base_, a.den, b.den)});
  }
  Element inv(const Element& a) const {
    if (a.num.empty()) throw std::domain_error("division by zero in K(t)");
    return normalize({a.den, a.num});
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  void add_to(Element& a, const Element& b) const { a = add(a, b); }
  void sub_mul_to(Element& a, const Element& b, const Element& c) const { a = sub(a, mul(b, c)); }

  Element derivative(const Element& a) const {
    if (a.den.size() == 1) return {upoly::derivative(base_, a.num), a.den};
    auto n = upoly::sub(base_, upoly::mul(base_, upoly::derivative(base_, a.num), a.den),
                        upoly::mul(base_, a.num, upoly::derivative(base_, a.den)));
    return normalize({std::move(n), upoly::mul(base_, a.den, a.den)});
  }

  // Value at t = x; raises UnluckyPoint at a pole.
  BaseElement evaluate(const Element& a, const BaseElement& x) const {
    auto d = upoly::evaluate(base_, a.den, x);
    if (base_.is_zero(d)) throw UnluckyPoint("pole at evaluation point");
    return base_.div(upoly::evaluate(base_, a.num, x), d);
  }

  bool is_negative(const Element& a) const {
    return a.den.size() == 1 && a.num.size() >= 1 && base_.is_negative(a.num.back()) &&
           count_terms(a.num) == 1;
  }
  bool is_compound(const Element& a) const { return a.den.size() > 1 || count_terms(a.num) > 1; }
  std::string format(const Element& a) const {
    std::string n = upoly::format(base_, a.num);
    if (a.den.size() == 1) return n;
    if (count_terms(a.num) > 1) n = "(" + n + ")";
    return n + "/(" + upoly::format(base_, a.den) + ")";
  }
  std::string name() const { return base_.name() + "(t)"; }

  bool operator==(const RationalFunctions& o) const { return base_ == o.base_; }

  Element normalize(Element a) const {
    if (a.den.empty()) throw std::domain_error("zero denominator in K(t)");
    if (a.num.empty()) return zero();
    if (a.den.size() > 1) {
      Poly g = upoly::gcd(base_, a.num, a.den);
      if (g.size() > 1) {
        a.num = upoly::exact_quotient(base_, a.num, g);
        a.den = upoly::exact_quotient(base_, a.den, g);
      }
    }
    if (!base_.is_one(a.den.back())) {
      auto c = base_.inv(a.den.back());
      a.num = upoly::scale(base_, a.num, c);
      a.den = upoly::scale(base_, a.den, c);
    }
    return a;
  }

 private:
  int count_terms(const Poly& p) const {
    int c = 0;
    for (const auto& x : p)
      if (!base_.is_zero(x)) ++c;
    return c;
  }

  Base base_;
};

using QT = RationalFunctions<Rationals>;
using FpT = RationalFunctions<PrimeField>;

}  // namespace holoct

#endif
