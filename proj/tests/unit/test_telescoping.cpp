#include <algorithm>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "holoct/kregular/kregular.hpp"
#include "holoct/telescoping/telescoping.hpp"

using namespace holoct;
using namespace holoct::testing;

namespace {

using AOp = WeylOperator<QT>;

const DerivedPresentation<QT>& airy() {
  static const DerivedPresentation<QT> pres = airy_presentation();
  return pres;
}

const DerivedPresentation<QT>& kreg(int k) {
  static std::map<int, DerivedPresentation<QT>> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, kregular_presentation(k)).first;
  return it->second;
}

DerivedPresentation<QT> with_integrand(const DerivedPresentation<QT>& pres, AOp f) {
  return DerivedPresentation<QT>{pres.ctx, pres.L, std::move(f)};
}

std::string text(const std::vector<Monomial>& B, const RingPtr<QT>& ring) {
  std::string s;
  for (const auto& m : B) s += (s.empty() ? "" : ",") + format_monomial(m, *ring);
  return s;
}

Telescoper<Rationals> parse_telescoper(const std::vector<std::string>& coeffs) {
  // Coefficients c_0..c_N as polynomials in t written in the operator grammar.
  auto ring = make_ring(QT{}, {"u"}, 1, MonomialOrder::grevlex(1));
  std::vector<upoly::Poly<Rationals>> c;
  for (const auto& s : coeffs) {
    auto op = parse_operator(s, ring);
    c.push_back(op.is_zero() ? upoly::Poly<Rationals>{} : op.lc().num);
  }
  return normalize_telescoper(std::move(c));
}

const Telescoper<Rationals>& k3_reference() {
  static const Telescoper<Rationals> P = parse_telescoper({
      "-(t^3)*(t^4 + 2*t^2 - 2)^2",
      "3*(t^10 + 6*t^8 + 3*t^6 - 6*t^4 - 26*t^2 + 8)",
      "9*t^3*(t^4 + 2*t^2 - 2)",
  });
  return P;
}

QT::Element qt(const std::string& s) {
  auto ring = make_ring(QT{}, {"u"}, 1, MonomialOrder::grevlex(1));
  auto op = parse_operator(s, ring);
  return op.is_zero() ? QT{}.zero() : op.lc();
}

}  // namespace

TEST_CASE("confine: Airy with rho = 1 restarts once and stops at x^2") {
  const auto& pres = airy();
  auto conf = confine(pres, 1);
  CHECK(format_monomial(conf.eta, *pres.ctx.ring()) == "x^2");
  CHECK(text(conf.B, pres.ctx.ring()) == "1,y");
  CHECK(conf.trace == std::vector<unsigned>{1, 2});
  CHECK(conf.rho == 1);
}

TEST_CASE("confine: zero integrand gives the degree-rho monomial and an empty set") {
  const auto& pres = airy();
  for (unsigned rho : {1u, 2u, 3u}) {
    auto conf = confine(with_integrand(pres, AOp(pres.ctx.ring())), rho);
    CHECK(conf.B.empty());
    CHECK(conf.eta == pres.ctx.order().largest_of_degree(rho, 1));
  }
}

TEST_CASE("confine: 2-regular presentation") {
  const auto& pres = kreg(2);
  auto conf = confine(pres, 1);
  CHECK(format_monomial(conf.eta, *pres.ctx.ring()) == "p1");
  CHECK(text(conf.B, pres.ctx.ring()) == "1");
}

TEST_CASE("confine: degree ceiling turns into a budget error") {
  ConfineOptions opts;
  opts.degree_ceiling = 1;
  CHECK_THROWS_AS(confine(airy(), 1, opts), BudgetExhausted);
}

TEST_CASE("derivative sequence: Airy first step and zero") {
  const auto& pres = airy();
  auto conf = confine(pres, 1);
  QT k;
  CoefficientVector<QT> zero(conf.B.size(), k.zero());
  auto z = derivative_sequence_step(zero, conf, k);
  for (const auto& c : z) CHECK(k.is_zero(c));
  auto g1 = derivative_sequence_step(conf.g0, conf, k);
  auto op = from_vector(pres.ctx.ring(), g1, conf.B);
  REQUIRE(op.size() == 1);
  CHECK(format_monomial(op.lm(), *pres.ctx.ring()) == "y");
  CHECK_THROWS_AS(derivative_sequence_step(CoefficientVector<QT>{}, conf, k), std::invalid_argument);
}

TEST_CASE("derivative sequence: memo path equals direct reduction on random vectors") {
  Rng rng(31);
  for (const auto* pres : {&airy(), &kreg(3), &kreg(4)}) {
    auto conf = confine(*pres, 1);
    QT k;
    for (int trial = 0; trial < 40; ++trial) {
      CoefficientVector<QT> g;
      for (std::size_t i = 0; i < conf.B.size(); ++i) {
        auto c = k.add(k.from_rational(small_rational(rng)), k.mul(k.from_rational(small_rational(rng)), k.variable()));
        g.push_back(c);
      }
      auto memo = derivative_sequence_step(g, conf, k);
      auto op = from_vector(pres->ctx.ring(), g, conf.B);
      auto direct = coefficientwise_dt(op) + reduce_eta(apply_L(*pres, op), pres->ctx, conf.eta_basis);
      CHECK(from_vector(pres->ctx.ring(), memo, conf.B) == direct);
    }
  }
}

TEST_CASE("relation search: small examples") {
  QT k;
  auto t = k.variable();
  CoefficientVector<QT> v{k.from_int(1), k.from_int(3)};
  CoefficientVector<QT> v2{k.from_int(2), k.from_int(6)};
  auto rel = relation_search(k, {v, v2});
  REQUIRE(rel);
  REQUIRE(rel->size() == 2);
  // 2 g0 - g1 = 0 up to scaling.
  CHECK(k.equal(k.div(k.from_poly((*rel)[0]), k.from_poly((*rel)[1])), k.from_int(-2)));

  CHECK_FALSE(relation_search(k, {{k.one(), k.zero()}, {k.zero(), k.one()}}));

  auto rel3 = relation_search(k, {{k.one(), t}, {t, k.mul(t, t)}, {k.zero(), k.one()}});
  REQUIRE(rel3);
  REQUIRE(rel3->size() == 2);
  CHECK(k.equal(k.div(k.from_poly((*rel3)[0]), k.from_poly((*rel3)[1])), k.neg(t)));

  auto first = relation_search(k, {{k.zero(), k.zero()}});
  REQUIRE(first);
  CHECK(first->size() == 1);
}

TEST_CASE("relation search: rational-function multiples of a vector") {
  Rng rng(8);
  QT k;
  for (int trial = 0; trial < 100; ++trial) {
    CoefficientVector<QT> v;
    for (int i = 0; i < 3; ++i) v.push_back(qt(std::to_string(trial % 5 + i) + "*t^" + std::to_string(i) + " + 1"));
    auto num = k.add(k.from_rational(small_rational(rng)), k.variable());
    auto den = k.add(k.from_int(static_cast<long>(rng.below(1, 9))), k.mul(k.variable(), k.variable()));
    auto r = k.div(num, den);
    CoefficientVector<QT> w;
    for (const auto& c : v) w.push_back(k.mul(r, c));
    auto rel = relation_search(k, {v, w});
    REQUIRE(rel);
    REQUIRE(rel->size() == 2);
    CHECK(k.equal(k.div(k.from_poly((*rel)[0]), k.from_poly((*rel)[1])), k.neg(r)));
  }
}

TEST_CASE("normalization: scaling by rational functions does not change the canonical form") {
  Rng rng(12);
  QT k;
  const auto& P = k3_reference();
  for (int trial = 0; trial < 100; ++trial) {
    auto s = k.mul(k.from_rational(small_rational(rng) + Rational(10)),
                   k.add(k.variable(), k.from_int(static_cast<long>(rng.below(0, 5)))));
    std::vector<upoly::Poly<Rationals>> scaled;
    for (const auto& c : P.coefficients) scaled.push_back(k.mul(s, k.from_poly(c)).num);
    CHECK(normalize_telescoper(scaled) == P);
  }
  CHECK(P.coefficients.back().back() > 0);
}

TEST_CASE("telescope_direct: Airy gives 7 dt^2 - t with a valid certificate chain") {
  DirectOptions opts;
  opts.certificates = true;
  auto res = telescope_direct(airy(), 1, opts);
  CHECK(format_telescoper(res.telescoper) == "7*dt^2 - t");
  CHECK(verify_telescoper_certificate(airy(), res));
}

TEST_CASE("telescope_direct: 3-regular graphs") {
  DirectOptions opts;
  opts.certificates = true;
  auto res = telescope_direct(kreg(3), 1, opts);
  CHECK(res.telescoper == k3_reference());
  CHECK(res.telescoper.order() == 2);
  CHECK(res.telescoper.degree() == 11);
  CHECK(verify_telescoper_certificate(kreg(3), res));
}

TEST_CASE("telescope_direct: integrand in S gives P = 1") {
  const auto& pres = airy();
  for (const char* g : {"2*x + y + dz", "y^2 - z - dy - t", "(x + t)*(2*x + y + dz)"}) {
    auto res = telescope_direct(with_integrand(pres, parse_operator(g, pres.ctx.ring())), 1);
    CHECK(format_telescoper(res.telescoper) == "1");
    CHECK(res.telescoper.order() == 0);
  }
}

TEST_CASE("telescope_direct: larger rho never lowers the order") {
  for (const auto* pres : {&airy(), &kreg(2), &kreg(3)}) {
    int previous = -1;
    for (unsigned rho = 1; rho <= 3; ++rho) {
      auto res = telescope_direct(*pres, rho);
      CHECK(res.telescoper.order() >= previous);
      previous = res.telescoper.order();
    }
  }
}

TEST_CASE("confine: effective confinement and certified telescopers for random Airy integrands") {
  Rng rng(2024);
  const auto& pres = airy();
  auto ring = pres.ctx.ring();
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_operator(rng, ring, 3, 2);
    auto fp = with_integrand(pres, f);
    DirectOptions opts;
    opts.certificates = true;
    auto res = telescope_direct(fp, 1, opts);
    const auto& conf = res.confinement;
    auto contained = [&](const AOp& a) {
      for (const auto& t : a.terms())
        if (std::find(conf.B.begin(), conf.B.end(), t.m) == conf.B.end()) return false;
      return true;
    };
    CHECK(contained(reduce_eta(f, pres.ctx, conf.eta_basis)));
    for (const auto& m : conf.B)
      CHECK(contained(reduce_eta(apply_L(pres, AOp::monomial(ring, m, QT{}.one())), pres.ctx, conf.eta_basis)));
    CHECK(verify_telescoper_certificate(fp, res));
    CHECK(res.telescoper.order() <= 2);
  }
}

TEST_CASE("telescope_modular: agrees with the direct path on Airy and 3-regular graphs") {
  for (const auto* pres : {&airy(), &kreg(3)}) {
    auto direct = telescope_direct(*pres, 1).telescoper;
    ModularOptions opts;
    opts.seed = 77;
    auto mod = telescope_modular(*pres, opts);
    CHECK(mod.telescoper == direct);
    CHECK(mod.primes_used >= 2);
  }
}

TEST_CASE("telescope_modular: worker count does not change transcript or result") {
  for (const auto* pres : {&airy(), &kreg(3)}) {
    ModularOptions one;
    one.seed = 5;
    one.workers = 1;
    ModularOptions eight = one;
    eight.workers = 8;
    auto a = telescope_modular(*pres, one);
    auto b = telescope_modular(*pres, eight);
    CHECK(a.telescoper == b.telescoper);
    CHECK(a.transcript == b.transcript);
    CHECK(a.points_used == b.points_used);
  }
}

TEST_CASE("telescope_modular: injected faults leave the result unchanged") {
  for (const auto* pres : {&airy(), &kreg(3)}) {
    auto reference = telescope_direct(*pres, 1).telescoper;
    for (int which = 0; which < 3; ++which) {
      ModularOptions opts;
      opts.seed = 9;
      opts.faults.corrupt_tracer = which;
      CHECK(telescope_modular(*pres, opts).telescoper == reference);
    }
    for (std::size_t sample : {0u, 3u, 17u}) {
      ModularOptions opts;
      opts.seed = 9;
      opts.faults.corrupt_sample = sample;
      CHECK(telescope_modular(*pres, opts).telescoper == reference);
    }
  }
}

TEST_CASE("telescope_modular: zero integrand") {
  auto pres = with_integrand(airy(), AOp(airy().ctx.ring()));
  auto rep = telescope_modular(pres);
  CHECK(format_telescoper(rep.telescoper) == "1");
}

TEST_CASE("make_presentation: rejects an unstable derivation") {
  const auto& pres = airy();
  auto bad = parse_operator("x", pres.ctx.basis().scalar_ring());
  CHECK_THROWS_AS(make_presentation(pres.ctx, {{bad}}, pres.f), std::invalid_argument);
  CHECK_THROWS_AS(make_presentation(pres.ctx, {}, pres.f), std::invalid_argument);
}
