#include <set>

#include "doctest.h"
#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational_function.hpp"
#include "holoct/arith/reconstruct.hpp"

using namespace holoct;

namespace {

Integer brute_crt(const std::vector<std::pair<int, int>>& rs) {
  int n = 1;
  for (auto [v, m] : rs) n *= m;
  for (int x = 0; x < n; ++x) {
    bool ok = true;
    for (auto [v, m] : rs) ok = ok && x % m == v;
    if (ok) return x;
  }
  return -1;
}

// Smallest-denominator p/q with |p|, q <= bound and q*u = p (mod n), by search.
std::optional<Rational> brute_reconstruct(const Integer& u, const Integer& n) {
  Integer bound;
  Integer half = n / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  for (Integer q = 1; q <= bound; ++q) {
    Integer p = (q * u) % n;
    if (p > n / 2) p -= n;
    if (abs(p) <= bound) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      if (g == 1) {
        Rational r(p, q);
        r.canonicalize();
        return r;
      }
    }
  }
  return std::nullopt;
}

FpRatFun random_ratfun(const PrimeField& k, Rng& rng, int dn, int dd) {
  FpT f(k);
  FpPoly num(static_cast<std::size_t>(dn + 1)), den(static_cast<std::size_t>(dd + 1));
  for (auto& c : num) c = static_cast<std::uint32_t>(rng.below(0, k.modulus()));
  for (auto& c : den) c = static_cast<std::uint32_t>(rng.below(0, k.modulus()));
  if (upoly::trim(k, den), den.empty()) den = {1};
  return f.make(num, den);
}

QT::Element random_qt(Rng& rng) {
  QT f;
  upoly::Poly<Rationals> num, den;
  int dn = static_cast<int>(rng.below(0, 4)), dd = static_cast<int>(rng.below(0, 3));
  for (int i = 0; i <= dn; ++i) {
    Rational c(static_cast<long>(rng.below(0, 11)) - 5, 1 + rng.below(0, 3));
    c.canonicalize();
    num.push_back(c);
  }
  for (int i = 0; i <= dd; ++i) den.push_back(Rational(static_cast<long>(rng.below(0, 11)) - 5, 1));
  upoly::trim(Rationals{}, den);
  if (den.empty()) den = {Rational(1)};
  return f.make(num, den);
}

}  // namespace

TEST_CASE("crt_combine matches brute force search") {
  auto r = crt_combine({{2, 3}, {3, 5}});
  CHECK(r.modulus == 15);
  CHECK(r.value == brute_crt({{2, 3}, {3, 5}}));
  CHECK(r.value == 8);
  CHECK(crt_combine({{0, 5}, {0, 7}}).value == 0);
  auto ones = crt_combine({{1, 3}, {1, 5}, {1, 7}});
  CHECK(ones.value == 1);
  CHECK(ones.modulus == 105);
  CHECK_THROWS_AS(crt_combine({{1, 7}, {2, 7}}), std::invalid_argument);
}

TEST_CASE("rational_reconstruct small cases") {
  auto q = rational_reconstruct(65, 97);
  REQUIRE(q);
  CHECK((3 * 65) % 97 == 1);
  CHECK(*q == Rational(1, 3));
  auto five = rational_reconstruct(5, 97);
  REQUIRE(five);
  CHECK(*five == 5);
}

TEST_CASE("rational_reconstruct agrees with exhaustive search, including failures") {
  const Integer n(2147483629);  // prime below 2^31
  REQUIRE(is_prime(2147483629u));
  Rng rng(7);
  int failures = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // Residue of a pseudo-random 30-digit numerator.
    Integer big(std::to_string(rng.next()) + std::to_string(rng.next()));
    big = big % Integer("1000000000000000000000000000000");
    Integer u = big % n;
    auto fast = rational_reconstruct(u, n);
    auto slow = brute_reconstruct(u, n);
    CHECK(fast.has_value() == slow.has_value());
    if (fast && slow) CHECK(*fast == *slow);
    if (!slow) ++failures;
  }
  CHECK(failures > 0);
}

TEST_CASE("cauchy_interpolate examples") {
  PrimeField k(101);
  auto c = cauchy_interpolate(k, {{1, 4}, {2, 4}, {3, 4}}, 0, 0);
  REQUIRE(c);
  CHECK(c->num == FpPoly{4});
  CHECK(c->den == FpPoly{1});

  PrimeField k7(7);
  // 1/(t-1) at t = 0, 2, 3, 4 over F_7.
  std::vector<PointValue> pts;
  for (std::uint32_t a : {0u, 2u, 3u, 4u}) pts.push_back({a, k7.inv(k7.sub(a, 1))});
  auto f = cauchy_interpolate(k7, pts, 0, 1);
  REQUIRE(f);
  for (auto p : pts)
    CHECK(k7.div(upoly::evaluate(k7, f->num, p.point), upoly::evaluate(k7, f->den, p.point)) == p.value);
  CHECK(f->num == FpPoly{1});
  CHECK(f->den == FpPoly{6, 1});

  std::vector<PointValue> sq{{1, 1}, {2, 4}, {3, 9}};
  CHECK_FALSE(cauchy_interpolate(k, sq, 1, 0));
  CHECK_THROWS_AS(cauchy_interpolate(k, {{1, 1}, {1, 2}}, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(cauchy_interpolate(k, {{1, 1}}, 1, 0), std::invalid_argument);
}

TEST_CASE("cauchy_interpolate inverts evaluation on random inputs") {
  PrimeField k(1000003);
  FpT field(k);
  Rng rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    int dn = static_cast<int>(rng.below(0, 6)), dd = static_cast<int>(rng.below(0, 6));
    auto f = random_ratfun(k, rng, dn, dd);
    std::vector<PointValue> pts;
    std::set<std::uint32_t> used;
    while (pts.size() < 12) {
      auto a = static_cast<std::uint32_t>(rng.below(0, k.modulus()));
      if (!used.insert(a).second || upoly::evaluate(k, f.den, a) == 0) continue;
      pts.push_back({a, field.evaluate(f, a)});
    }
    auto g = cauchy_interpolate(k, pts, 5, 5);
    REQUIRE(g);
    CHECK(field.equal(*g, f));
  }
}

TEST_CASE("CRT then rational reconstruction recovers small fractions") {
  Rng rng(3);
  std::vector<std::uint32_t> primes;
  while (primes.size() < 3) {
    auto p = random_prime(rng);
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  }
  for (int trial = 0; trial < 150; ++trial) {
    long num = static_cast<long>(rng.below(0, 1 << 16)) - (1 << 15);
    long den = static_cast<long>(rng.below(1, 1 << 15));
    Rational q(num, den);
    q.canonicalize();
    std::vector<Residue> rs;
    for (auto p : primes) {
      PrimeField k(p);
      rs.push_back({Integer(k.from_rational(q)), Integer(p)});
    }
    auto c = crt_combine(rs);
    auto back = rational_reconstruct(c.value, c.modulus);
    REQUIRE(back);
    CHECK(*back == q);
  }
}

TEST_CASE("rational functions satisfy field axioms") {
  QT f;
  Rng rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    auto a = random_qt(rng), b = random_qt(rng), c = random_qt(rng);
    CHECK(f.equal(f.add(a, f.add(b, c)), f.add(f.add(a, b), c)));
    CHECK(f.equal(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c)));
    CHECK(f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    CHECK(f.equal(f.add(a, b), f.add(b, a)));
    CHECK(f.equal(f.sub(a, a), f.zero()));
    if (!f.is_zero(a)) CHECK(f.is_one(f.mul(a, f.inv(a))));
    CHECK(f.equal(f.normalize(a), a));
    CHECK(a.den.back() == 1);
  }
  PrimeField k(101);
  FpT g(k);
  for (int trial = 0; trial < 120; ++trial) {
    auto a = random_ratfun(k, rng, 3, 2), b = random_ratfun(k, rng, 2, 3), c = random_ratfun(k, rng, 1, 1);
    CHECK(g.equal(g.mul(a, g.add(b, c)), g.add(g.mul(a, b), g.mul(a, c))));
    CHECK(g.equal(g.derivative(g.mul(a, b)), g.add(g.mul(g.derivative(a), b), g.mul(a, g.derivative(b)))));
    if (!g.is_zero(a)) CHECK(g.is_one(g.mul(a, g.inv(a))));
  }
}

TEST_CASE("adaptive_reconstruct") {
  PrimeField k(101);
  FpT field(k);
  auto target = field.make({1, 0, 3}, {k.neg(2), 0, 0, 1});
  std::uint32_t next = 0;
  int corrupt_at = -1;
  int produced = 0;
  BatchSampler sampler = [&](std::size_t count) {
    std::vector<Sample> out;
    while (out.size() < count) {
      std::uint32_t a = next++;
      if (upoly::evaluate(k, target.den, a) == 0) continue;
      auto v = field.evaluate(target, a);
      if (produced++ == corrupt_at) v = k.add(v, 1);
      out.push_back({a, {v, 0}});
    }
    return out;
  };
  auto r = adaptive_reconstruct(k, 2, sampler);
  CHECK(field.equal(r.functions[0], target));
  CHECK(field.is_zero(r.functions[1]));
  int clean_rounds = r.rounds;

  // One corrupted value in the round that would otherwise succeed.
  next = 0;
  produced = 0;
  corrupt_at = static_cast<int>(r.points_used) - 2;
  auto r2 = adaptive_reconstruct(k, 2, sampler);
  CHECK(field.equal(r2.functions[0], target));
  CHECK(r2.rounds > clean_rounds);

  // A corrupted check value alone is rejected by cauchy_interpolate.
  std::vector<PointValue> pts;
  for (std::uint32_t a = 10; a < 18; ++a) pts.push_back({a, field.evaluate(target, a)});
  CHECK(cauchy_interpolate(k, pts, 2, 3));
  pts.back().value = k.add(pts.back().value, 1);
  CHECK_FALSE(cauchy_interpolate(k, pts, 2, 3));

  AdaptiveOptions tight;
  tight.max_points = 5;
  next = 0;
  corrupt_at = -1;
  CHECK_THROWS_AS(adaptive_reconstruct(k, 2, sampler, tight), ReconstructionExhausted);
}
