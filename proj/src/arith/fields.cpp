#include <stdexcept>

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational.hpp"

namespace holoct {

Rational Rationals::inv(const Rational& a) const {
  if (sgn(a) == 0) throw std::domain_error("division by zero in Q");
  return Rational(1) / a;
}

Rational Rationals::div(const Rational& a, const Rational& b) const {
  if (sgn(b) == 0) throw std::domain_error("division by zero in Q");
  return a / b;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("modulus must be an odd prime below 2^31");
  }
}

PrimeField::Element PrimeField::from_integer(const Integer& z) const {
  return static_cast<Element>(mpz_fdiv_ui(z.get_mpz_t(), p_));
}

PrimeField::Element PrimeField::from_rational(const Rational& q) const {
  Element den = from_integer(q.get_den());
  if (den == 0) throw UnluckyPoint("denominator vanishes modulo p");
  return div(from_integer(q.get_num()), den);
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("division by zero in F_p");
  std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (s0 < 0) s0 += p_;
  return static_cast<Element>(s0);
}

bool is_prime(std::uint64_t n) {
  Integer z(std::to_string(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

std::uint32_t random_prime(Rng& rng) {
  for (;;) {
    auto c = static_cast<std::uint32_t>(rng.below(1u << 30, 1u << 31)) | 1u;
    if (is_prime(c)) return c;
  }
}

}  // namespace holoct
