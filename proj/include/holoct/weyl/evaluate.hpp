#ifndef HOLOCT_WEYL_EVALUATE_HPP
#define HOLOCT_WEYL_EVALUATE_HPP

#include <cstdint>
#include <optional>

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational_function.hpp"
#include "holoct/weyl/operator.hpp"

namespace holoct {

// Target of a modular reduction: a prime and optionally a value for t.
struct ModularImage {
  std::uint32_t prime;
  std::optional<std::uint32_t> point;
};

inline PrimeField::Element reduce_coefficient(const PrimeField& fp, const Rational& c) { return fp.from_rational(c); }

inline upoly::Poly<PrimeField> reduce_poly(const PrimeField& fp, const upoly::Poly<Rationals>& p) {
  upoly::Poly<PrimeField> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = fp.from_rational(p[i]);
  upoly::trim(fp, r);
  return r;
}

// Value of c at t = a modulo p.
inline PrimeField::Element evaluate_coefficient(const PrimeField& fp, const QT::Element& c, std::uint32_t a) {
  auto den = upoly::evaluate(fp, reduce_poly(fp, c.den), a);
  if (den == 0) throw UnluckyPoint("denominator vanishes at the evaluation point");
  return fp.div(upoly::evaluate(fp, reduce_poly(fp, c.num), a), den);
}

// c modulo p as an element of F_p(t).
inline FpT::Element reduce_coefficient(const FpT& fpt, const QT::Element& c) {
  const PrimeField& fp = fpt.base();
  auto den = reduce_poly(fp, c.den);
  if (den.size() != c.den.size()) throw UnluckyPoint("denominator degree drops modulo p");
  return fpt.make(reduce_poly(fp, c.num), std::move(den));
}

// Coefficient-wise t := a followed by reduction modulo p.
inline WeylOperator<PrimeField> evaluate_and_reduce(const WeylOperator<QT>& p, const RingPtr<PrimeField>& target,
                                                    std::uint32_t a) {
  const PrimeField& fp = target->field();
  return map_coefficients(p, target, [&](const QT::Element& c) { return evaluate_coefficient(fp, c, a); });
}

inline WeylOperator<PrimeField> evaluate_and_reduce(const WeylOperator<Rationals>& p,
                                                    const RingPtr<PrimeField>& target) {
  const PrimeField& fp = target->field();
  return map_coefficients(p, target, [&](const Rational& c) { return fp.from_rational(c); });
}

inline WeylOperator<FpT> evaluate_and_reduce(const WeylOperator<QT>& p, const RingPtr<FpT>& target) {
  const FpT& fpt = target->field();
  return map_coefficients(p, target, [&](const QT::Element& c) { return reduce_coefficient(fpt, c); });
}

}  // namespace holoct

#endif
