#ifndef HOLOCT_TESTS_HELPERS_HPP
#define HOLOCT_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational_function.hpp"
#include "holoct/io/parser.hpp"
#include "holoct/telescoping/telescoping.hpp"
#include "holoct/weyl/operator.hpp"

namespace holoct::testing {

inline Rational small_rational(Rng& rng) {
  Rational q(static_cast<long>(rng.below(0, 19)) - 9, static_cast<long>(rng.below(1, 4)));
  q.canonicalize();
  return q;
}

inline Monomial random_monomial(Rng& rng, int n, unsigned max_degree, int rank = 1) {
  Monomial m;
  unsigned budget = static_cast<unsigned>(rng.below(0, max_degree + 1));
  for (unsigned s = 0; s < budget; ++s) {
    int v = static_cast<int>(rng.below(0, static_cast<std::uint64_t>(2 * n)));
    if (v < n)
      ++m.x[v];
    else
      ++m.d[v - n];
  }
  m.component = static_cast<std::uint16_t>(rng.below(0, static_cast<std::uint64_t>(rank)));
  return m;
}

template <class K>
WeylOperator<K> random_operator(Rng& rng, const RingPtr<K>& ring, int terms, unsigned max_degree) {
  std::vector<Term<K>> ts;
  for (int i = 0; i < terms; ++i) {
    auto c = ring->field().from_rational(small_rational(rng));
    ts.push_back({random_monomial(rng, ring->arity(), max_degree, ring->rank()), c});
  }
  return WeylOperator<K>(ring, std::move(ts));
}

inline RingPtr<Rationals> q_ring(int n, MonomialOrder ord, int rank = 1) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return make_ring(Rationals{}, names, rank, std::move(ord));
}

inline RingPtr<QT> airy_ring() {
  return make_ring(QT{}, {"x", "y", "z"}, 1, MonomialOrder::block(3));
}

template <class K>
std::vector<WeylOperator<K>> parse_all(const RingPtr<K>& ring, const std::vector<std::string>& texts) {
  std::vector<WeylOperator<K>> out;
  for (const auto& t : texts) out.push_back(parse_operator(t, ring));
  return out;
}

inline std::vector<std::string> airy_generators() {
  return {"dx - (x^2 - t - 2*z)", "dy - (y^2 - t - z)", "dz - (-2*x - y)"};
}

// Reduced basis printed in the reference normalization.
inline std::vector<std::string> airy_reference_basis() {
  return {
      "y^2 - z - dy - t",
      "14*y*z + 8*y*dx - 2*y*dy + 6*t*y - 11*z*dz + dz^3 - 4*dx*dz - 3*dy*dz - 7*t*dz - 11",
      "49*z^2 + 14*y - 18*z*dz^2 + 56*z*dx - 14*z*dy + 42*t*z + dz^4 - 8*dx*dz^2 - 2*dy*dz^2 + 16*dx^2"
      " - 8*dx*dy + dy^2 - 10*t*dz^2 + 24*t*dx - 6*t*dy - 20*dz + 9*t^2",
      "2*x + y + dz",
      "2*y*dz - 7*z + dz^2 - 4*dx + dy - 3*t",
  };
}

// The Airy integrand exp(q) with q = (x^3+y^3)/3 - x(t+2z) - y(t+z): S is
// generated by d - dq/dx etc. and L(a) = a * dq/dt.
inline DerivedPresentation<QT> airy_presentation() {
  auto ring = airy_ring();
  auto G = buchberger(parse_all(ring, airy_generators()));
  auto lam = parse_operator("-x - y", G.scalar_ring());
  return make_presentation(ReductionContext<QT>(std::move(G)), {{lam}}, WeylOperator<QT>::one(ring));
}

// Taylor coefficients of a solution of 7u'' = t u from u(0) = a0, u'(0) = a1,
// via a_{m+3} = a_m (m+1) / (7 (m+3)(m+2)(m+1)) with a_2 = 0.
inline std::vector<Rational> airy_series(const Rational& a0, const Rational& a1, int T) {
  std::vector<Rational> a(static_cast<std::size_t>(T + 1), Rational(0));
  if (T >= 0) a[0] = a0;
  if (T >= 1) a[1] = a1;
  for (int m = 0; m + 3 <= T; ++m) a[m + 3] = a[m] * (m + 1) / Rational(7 * (m + 3) * (m + 2) * (m + 1));
  return a;
}

}  // namespace holoct::testing

#endif
