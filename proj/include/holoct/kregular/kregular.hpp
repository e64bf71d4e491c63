#ifndef HOLOCT_KREGULAR_KREGULAR_HPP
#define HOLOCT_KREGULAR_KREGULAR_HPP

#include <utility>
#include <vector>

#include "holoct/arith/rational.hpp"
#include "holoct/arith/rational_function.hpp"
#include "holoct/telescoping/telescoping.hpp"
#include "holoct/weyl/action.hpp"
#include "holoct/weyl/operator.hpp"

namespace holoct {

using PPoly = CommPoly<Rationals>;

// f and g of the scalar product <e^f, e^{tg}> counting loopless simple
// k-regular graphs.
std::pair<PPoly, PPoly> model_polynomials(int k);

// h(p_1, 2 p_2, ..., k p_k).
PPoly scale_by_index(const PPoly& h, int k);

PPoly partial_derivative(const PPoly& h, int i);

struct ScalarProductInput {
  int k = 0;
  PPoly f;
  PPoly g;
  PPoly g_tilde;
  RingPtr<QT> ring;
  std::vector<WeylOperator<QT>> u;  // u_j = df/dp_j - d_j
};

// Builds the u_j in W_p(t) with variables p1..pk under the order given
// (block by default) and checks that they commute pairwise.
ScalarProductInput make_scalar_product_input(int k, PPoly f, PPoly g);
ScalarProductInput make_scalar_product_input(int k, PPoly f, PPoly g, const MonomialOrder& order);

// h(u_1, ..., u_k), monomial by monomial.
WeylOperator<QT> evaluate_at_u(const ScalarProductInput& in, const PPoly& h);

// p_i - t * (d g~/dX_i)(u), i = 1..k.
std::vector<WeylOperator<QT>> build_ideal(const ScalarProductInput& in);

// Lambda = g~(u); the derivation acts by a -> da/dt + a * Lambda.
WeylOperator<QT> derivation_L(const ScalarProductInput& in);

// Groebner basis of S, L(a) = a * Lambda and the integrand 1.
DerivedPresentation<QT> scalar_product_presentation(const ScalarProductInput& in);
DerivedPresentation<QT> kregular_presentation(int k);

// Coefficients a_0..a_N of <e^f, e^{tg}> mod t^{N+1}. The pairing is
// <p^r, p^s> = z_r delta_{r,s} with z_r = prod r_i! i^{r_i}.
std::vector<Rational> scalar_product_series(const PPoly& f, const PPoly& g, int k, int N);

// Labeled simple loopless graphs on n vertices, all of degree k.
Integer count_regular_graphs(int k, int n);

// Applies sum c_i (d/dt)^i to a_0 + ... + a_T t^T and checks the
// coefficients of t^0..t^{T-N}, which the truncation determines. Fewer than
// `margin` determined coefficients is an error, not a verdict.
bool verify_ode_on_series(const Telescoper<Rationals>& P, const std::vector<Rational>& series, unsigned margin = 4);

}  // namespace holoct

#endif
