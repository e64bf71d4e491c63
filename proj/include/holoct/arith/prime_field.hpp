#ifndef HOLOCT_ARITH_PRIME_FIELD_HPP
#define HOLOCT_ARITH_PRIME_FIELD_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "holoct/arith/rational.hpp"
#include "holoct/errors.hpp"

namespace holoct {

// Prime field F_p with p an odd prime below 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;
  static constexpr bool kHasParameter = false;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_integer(const Integer& z) const;
  Element from_rational(const Rational& q) const;

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  void add_to(Element& a, Element b) const { a = add(a, b); }
  void sub_mul_to(Element& a, Element b, Element c) const { a = sub(a, mul(b, c)); }

  Element derivative(Element) const { return 0; }
  std::string format(Element a) const { return std::to_string(a); }
  bool is_negative(Element) const { return false; }
  bool is_compound(Element) const { return false; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// Deterministic generator shared by all randomized components. Values are
// derived from raw engine output so that streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform-ish integer in [lo, hi).
  std::uint64_t below(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

// Odd prime drawn from [2^30, 2^31).
std::uint32_t random_prime(Rng& rng);

}  // namespace holoct

#endif
