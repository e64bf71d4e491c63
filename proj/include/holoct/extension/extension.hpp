#ifndef HOLOCT_EXTENSION_EXTENSION_HPP
#define HOLOCT_EXTENSION_EXTENSION_HPP

#include <vector>

#include "holoct/groebner/groebner.hpp"
#include "holoct/telescoping/telescoping.hpp"

namespace holoct {

// W_{t,x}(t)^s / J in a twisted ring: variable 0 is t, its d-exponent the
// power of d_t. The order must eliminate d_t.
struct ParametricPresentation {
  RingPtr<QT> ring;
  std::vector<WeylOperator<QT>> J_generators;
};

struct ExtensionResult {
  unsigned ell = 0;
  int r = 0;
  GroebnerBasis<QT> G;                      // J(t) under the d_t-eliminating order
  RingPtr<QT> target;                       // W_x(t)^r
  std::vector<WeylOperator<QT>> S_generators;
  std::vector<std::vector<WeylOperator<QT>>> L_matrix;  // r x r, row convention
};

// Largest d_t exponent; 0 for the zero operator.
unsigned index(const WeylOperator<QT>& a);

unsigned index_mod(const WeylOperator<QT>& a, const GroebnerBasis<QT>& G);

// Smallest l with index_mod(d_t^{l+1} e_i) <= l for all i.
unsigned compute_ell(const GroebnerBasis<QT>& G, unsigned ceiling = 20);

// d_t^h x^a d^b e_i -> x^a d^b e_{h s + i} in the target ring; requires
// index(a) <= l.
WeylOperator<QT> flatten(const WeylOperator<QT>& a, const RingPtr<QT>& target, int s);

// The target order defaults to the block order on x.
ExtensionResult build_extension(const ParametricPresentation& p, unsigned ceiling = 20);
ExtensionResult build_extension(const ParametricPresentation& p, const MonomialOrder& target_order,
                                unsigned ceiling = 20);

// Groebner basis of S, L and the integrand e_1 packaged for telescoping.
DerivedPresentation<QT> derived_presentation(const ExtensionResult& ext);

}  // namespace holoct

#endif
