#include "doctest.h"
#include "helpers.hpp"
#include "holoct/weyl/action.hpp"
#include "holoct/weyl/evaluate.hpp"

using namespace holoct;
using namespace holoct::testing;

namespace {

using QOp = WeylOperator<Rationals>;

CommPoly<Rationals> random_poly(Rng& rng, int n, unsigned degree) {
  CommPoly<Rationals> q;
  for (int i = 0; i < 4; ++i) {
    Exponents e{};
    for (unsigned s = rng.below(0, degree + 1); s > 0; --s) ++e[rng.below(0, static_cast<std::uint64_t>(n))];
    auto c = small_rational(rng);
    if (c != 0) q[e] += c;
  }
  for (auto it = q.begin(); it != q.end();)
    it = it->second == 0 ? q.erase(it) : std::next(it);
  return q;
}

std::vector<MonomialOrder> all_orders(int n) {
  std::vector<int> seq;
  for (int i = 0; i < 2 * n; ++i) seq.push_back(i);
  std::vector<int> weights;
  for (int i = 0; i < 2 * n; ++i) weights.push_back(i % 3 + 1);
  return {MonomialOrder::grevlex(n), MonomialOrder::block(n), MonomialOrder::lex(n, seq),
          MonomialOrder::weight(n, weights),
          MonomialOrder::grevlex(n).with_tiebreak(TieBreak::PositionOverTerm)};
}

}  // namespace

TEST_CASE("Weyl relation and commuting generators") {
  auto R = q_ring(2, MonomialOrder::grevlex(2));
  auto d1 = QOp::var_d(R, 0), x1 = QOp::var_x(R, 0), x2 = QOp::var_x(R, 1);
  CHECK(print_operator(d1 * x1) == "x1*dx1 + 1");
  CHECK(x1 * x2 == x2 * x1);
  CHECK(print_operator(x1 * x2) == "x1*x2");
}

TEST_CASE("d1^2 x1^2 agrees with its action on test polynomials") {
  auto R = q_ring(1, MonomialOrder::grevlex(1));
  auto lhs = parse_operator("dx1^2 * x1^2", R);
  auto rhs = parse_operator("x1^2*dx1^2 + 4*x1*dx1 + 2", R);
  CHECK(lhs == rhs);
  for (unsigned deg = 0; deg <= 4; ++deg) {
    CommPoly<Rationals> q{{Exponents{static_cast<std::uint16_t>(deg)}, Rational(1)}};
    // d^2 (x^2 x^deg) computed by hand: (deg+2)(deg+1) x^deg.
    auto direct = apply_to_polynomial(lhs, q);
    REQUIRE(direct.size() == 1);
    CHECK(direct.begin()->second == Rational((deg + 2) * (deg + 1)));
    CHECK(apply_to_polynomial(rhs, q) == direct);
  }
}

TEST_CASE("leading data") {
  for (const auto& ord : {MonomialOrder::grevlex(1), MonomialOrder::block(1)}) {
    auto R = q_ring(1, ord);
    auto p = parse_operator("dx1*x1", R);
    Monomial m;
    m.x[0] = 1;
    m.d[0] = 1;
    CHECK(leading_data(p).lm == m);
  }
  auto R = q_ring(1, MonomialOrder::grevlex(1));
  auto five = parse_operator("5", R);
  CHECK(leading_data(five).lm.is_one());
  CHECK(leading_data(five).lc == 5);
  CHECK_THROWS(leading_data(QOp(R)));

  auto A = airy_ring();
  auto g5 = parse_operator(airy_reference_basis()[4], A);
  CHECK(format_monomial(g5.lm(), *A) == "y*dz");
}

TEST_CASE("compare examples") {
  auto g = MonomialOrder::grevlex(2);
  Monomial a, b;
  a.x[0] = 2;
  b.x[0] = 1;
  b.x[1] = 1;
  CHECK(compare(a, b, g) > 0);
  auto blk = MonomialOrder::block(3);
  Monomial ydz, z2;
  ydz.x[1] = 1;
  ydz.d[2] = 1;
  z2.x[2] = 2;
  CHECK(compare(ydz, z2, blk) < 0);
  CHECK(compare(ydz, ydz, blk) == 0);
}

TEST_CASE("apply_to_polynomial examples") {
  auto R = q_ring(1, MonomialOrder::grevlex(1));
  CommPoly<Rationals> x3{{Exponents{3}, Rational(1)}};
  CHECK(apply_to_polynomial(parse_operator("x1*dx1", R), x3) == CommPoly<Rationals>{{Exponents{3}, Rational(3)}});
  CHECK(apply_to_polynomial(parse_operator("dx1*x1", R), x3) == CommPoly<Rationals>{{Exponents{3}, Rational(4)}});
  CHECK(apply_to_polynomial(parse_operator("1", R), x3) == x3);
}

TEST_CASE("coefficientwise_dt") {
  auto A = airy_ring();
  CHECK(print_operator(coefficientwise_dt(parse_operator("t^2*x", A))) == "2*t*x");
  CHECK(coefficientwise_dt(parse_operator("1/(t-1)*dx", A)) == parse_operator("-1/(t-1)^2*dx", A));
  CHECK(coefficientwise_dt(parse_operator("x*dy + 3", A)).is_zero());
  auto Q = q_ring(1, MonomialOrder::grevlex(1));
  CHECK_THROWS_AS(coefficientwise_dt(parse_operator("x1", Q)), std::invalid_argument);
}

TEST_CASE("evaluate_and_reduce") {
  auto R = make_ring(QT{}, {"x1"}, 1, MonomialOrder::grevlex(1));
  auto P = R->with_field(PrimeField(7));
  auto img = evaluate_and_reduce(parse_operator("(t+1)*x1", R), P, 2);
  CHECK(print_operator(img) == "3*x1");
  CHECK_THROWS_AS(evaluate_and_reduce(parse_operator("1/(t-2)*dx1", R), P, 2), UnluckyPoint);

  auto A = airy_ring();
  auto A101 = A->with_field(PrimeField(101));
  auto g2 = parse_operator(airy_reference_basis()[1], A);
  auto g2img = evaluate_and_reduce(g2, A101, 5);
  REQUIRE(g2img.size() == g2.size());
  PrimeField k(101);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    const auto& c = g2.terms()[i].c;
    // Term-by-term substitution t = 5 with the coefficient polynomial.
    std::uint32_t expect = 0;
    for (std::size_t e = c.num.size(); e-- > 0;) expect = k.add(k.mul(expect, 5), k.from_rational(c.num[e]));
    CHECK(g2img.coefficient(g2.terms()[i].m) == expect);
  }
}

TEST_CASE("associativity, action homomorphism and degree additivity on random operators") {
  Rng rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    int n = static_cast<int>(rng.below(1, 4));
    auto R = q_ring(n, MonomialOrder::grevlex(n));
    auto P = random_operator(rng, R, 3, 4), Q = random_operator(rng, R, 3, 4), S = random_operator(rng, R, 3, 4);
    CHECK((P * Q) * S == P * (Q * S));
    auto q = random_poly(rng, n, 4);
    CHECK(apply_to_polynomial(P * Q, q) == apply_to_polynomial(P, apply_to_polynomial(Q, q)));
    if (!P.is_zero() && !Q.is_zero()) CHECK((P * Q).degree() == P.degree() + Q.degree());
  }
}

TEST_CASE("leading monomial of q*g is the product of leading monomials") {
  Rng rng(19);
  for (int trial = 0; trial < 120; ++trial) {
    int n = static_cast<int>(rng.below(1, 4));
    for (const auto& ord : all_orders(n)) {
      auto R = q_ring(n, ord, 2);
      auto g = random_operator(rng, R, 4, 4);
      if (g.is_zero()) continue;
      Monomial q = random_monomial(rng, n, 3);
      auto prod = monomial_times(q, Rational(1), g);
      Monomial expect = g.lm();
      for (int i = 0; i < n; ++i) {
        expect.x[i] = static_cast<std::uint16_t>(expect.x[i] + q.x[i]);
        expect.d[i] = static_cast<std::uint16_t>(expect.d[i] + q.d[i]);
      }
      REQUIRE(!prod.empty());
      CHECK(prod.front().m == expect);
    }
  }
}

TEST_CASE("monomial orders are strict total orders with 1 as minimum") {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    int n = static_cast<int>(rng.below(1, 4));
    for (const auto& ord : all_orders(n)) {
      Monomial a = random_monomial(rng, n, 5, 2), b = random_monomial(rng, n, 5, 2),
               c = random_monomial(rng, n, 5, 2);
      int ab = ord.compare(a, b), ba = ord.compare(b, a);
      CHECK(ab == -ba);
      CHECK((ab == 0) == (a == b));
      if (ord.compare(a, b) < 0 && ord.compare(b, c) < 0) CHECK(ord.compare(a, c) < 0);
      Monomial one;
      one.component = a.component;
      if (!(a == one) && ord.tiebreak() == TieBreak::TermOverPosition) CHECK(ord.compare(one, a) < 0);
      // Multiplicativity.
      Monomial s = random_monomial(rng, n, 2);
      Monomial as = a, bs = b;
      for (int i = 0; i < n; ++i) {
        as.x[i] = static_cast<std::uint16_t>(as.x[i] + s.x[i]);
        bs.x[i] = static_cast<std::uint16_t>(bs.x[i] + s.x[i]);
        as.d[i] = static_cast<std::uint16_t>(as.d[i] + s.d[i]);
        bs.d[i] = static_cast<std::uint16_t>(bs.d[i] + s.d[i]);
      }
      CHECK(ord.compare(as, bs) == ab);
    }
  }
}

TEST_CASE("largest monomial of a degree: closed forms match scanning") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& ord : all_orders(n))
      for (unsigned s = 0; s <= 4; ++s)
        for (int r = 1; r <= 2; ++r) CHECK(ord.largest_of_degree(s, r) == ord.largest_of_degree_by_scan(s, r));
  Monomial x2;
  x2.x[0] = 2;
  CHECK(MonomialOrder::block(3).largest_of_degree(2, 1) == x2);
}

TEST_CASE("finiteness hypothesis flag") {
  CHECK(MonomialOrder::grevlex(2).hypothesis_finiteness(1));
  CHECK(MonomialOrder::block(3).hypothesis_finiteness(2));
  CHECK_FALSE(MonomialOrder::lex(2, {0, 1, 2, 3}).hypothesis_finiteness(1));
  CHECK(MonomialOrder::lex(1, {0, 1}).hypothesis_finiteness(1));
  CHECK_FALSE(MonomialOrder::lex(1, {1, 0}).hypothesis_finiteness(1));
  CHECK_FALSE(MonomialOrder::grevlex(1).with_tiebreak(TieBreak::PositionOverTerm).hypothesis_finiteness(2));
  CHECK(MonomialOrder::weight(1, {1, 0}).hypothesis_finiteness(1));
  CHECK_FALSE(MonomialOrder::weight(1, {0, 1}).hypothesis_finiteness(1));
}

TEST_CASE("twisted ring: d_t passes coefficients with a derivative") {
  auto R = make_ring(QT{}, {"t", "x"}, 1, MonomialOrder::grevlex(2), true);
  CHECK(print_operator(parse_operator("dt*t", R)) == "t*dt + 1");
  CHECK(parse_operator("dt^2*t^2", R) == parse_operator("t^2*dt^2 + 4*t*dt + 2", R));
  CHECK(parse_operator("dt*1/(t-1)", R) == parse_operator("1/(t-1)*dt - 1/(t-1)^2", R));
}
