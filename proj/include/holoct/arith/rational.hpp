#ifndef HOLOCT_ARITH_RATIONAL_HPP
#define HOLOCT_ARITH_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace holoct {

using Integer = mpz_class;
using Rational = mpq_class;

// The field of rational numbers. Elements are kept canonical by GMP.
class Rationals {
 public:
  using Element = Rational;
  static constexpr bool kHasParameter = false;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long v) const { return Element(v); }
  Element from_rational(const Rational& q) const { return q; }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const;

  void add_to(Element& a, const Element& b) const { a += b; }
  // a -= b * c
  void sub_mul_to(Element& a, const Element& b, const Element& c) const { a -= b * c; }

  Element derivative(const Element&) const { return zero(); }
  std::string format(const Element& a) const { return a.get_str(); }
  bool is_negative(const Element& a) const { return sgn(a) < 0; }
  // Whether format() of this element needs parentheses as a factor.
  bool is_compound(const Element&) const { return false; }
  std::string name() const { return "Q"; }

  bool operator==(const Rationals&) const { return true; }
};

// Exact binomial and factorial helpers used by the commutation kernel.
Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

}  // namespace holoct

#endif
