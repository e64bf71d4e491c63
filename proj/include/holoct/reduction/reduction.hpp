#ifndef HOLOCT_REDUCTION_REDUCTION_HPP
#define HOLOCT_REDUCTION_REDUCTION_HPP

#include <optional>
#include <vector>

#include "holoct/arith/rational.hpp"
#include "holoct/errors.hpp"
#include "holoct/groebner/groebner.hpp"
#include "holoct/weyl/action.hpp"

namespace holoct {

// A Groebner basis of S together with an order for which every set
// {alpha : x^alpha m <= eta} is finite.
template <class K>
class ReductionContext {
 public:
  explicit ReductionContext(GroebnerBasis<K> basis);

  const GroebnerBasis<K>& basis() const { return basis_; }
  const RingPtr<K>& ring() const { return basis_.ring(); }
  const MonomialOrder& order() const { return basis_.order(); }
  const K& field() const { return basis_.ring()->field(); }

 private:
  GroebnerBasis<K> basis_;
};

// Alternating right and left reduction until no monomial is reducible by
// either rule.
template <class K>
WeylOperator<K> reduced_form(const WeylOperator<K>& a, const ReductionContext<K>& ctx);

// Same, with a = remainder + S-part + d-part re-expandable exactly.
template <class K>
DivisionCertificate<K> reduced_form_certified(const WeylOperator<K>& a, const ReductionContext<K>& ctx);

// Candidates of an eta-basis computation whose reduced forms added nothing.
struct EtaTracer {
  std::vector<Monomial> candidates;
  std::vector<Monomial> idle;

  bool operator==(const EtaTracer&) const = default;
};

// A replayed tracer disagrees with what the current image computes.
class TracerMismatch : public UnluckyPoint {
 public:
  using UnluckyPoint::UnluckyPoint;
};

// Reduced echelon basis of the irreducible elements of S + dW up to eta.
template <class K>
struct EtaBasis {
  Monomial eta;
  std::vector<WeylOperator<K>> rows;  // descending leading monomials, monic
  // rows[i] = sum q_g g + sum d_j w_j, present when requested.
  std::vector<DivisionCertificate<K>> certificates;
  EtaTracer tracer;
};

struct EtaOptions {
  const EtaTracer* replay = nullptr;
  bool certificates = false;
};

// Candidate monomials x^gamma lm(g) <= eta with d in lm(g), minus those of
// the form lm(d_i m g); ascending.
template <class K>
std::vector<Monomial> eta_candidates(const ReductionContext<K>& ctx, const Monomial& eta);

template <class K>
EtaBasis<K> compute_eta_basis(const ReductionContext<K>& ctx, const Monomial& eta, const EtaOptions& opts = {});

// Subtracts rows at their pivots; rows in reduced echelon form.
template <class K>
WeylOperator<K> reduce_by_rows(const WeylOperator<K>& a, const std::vector<WeylOperator<K>>& rows);

template <class K>
WeylOperator<K> reduce_eta(const WeylOperator<K>& a, const ReductionContext<K>& ctx, const EtaBasis<K>& B);

// Needs B built with certificates.
template <class K>
DivisionCertificate<K> reduce_eta_certified(const WeylOperator<K>& a, const ReductionContext<K>& ctx,
                                            const EtaBasis<K>& B);

// Certificate arithmetic: into += c * b.
template <class K>
void add_scaled_certificate(DivisionCertificate<K>& into, const DivisionCertificate<K>& b,
                            const typename K::Element& c);

// Commutative Groebner basis of the Jacobian ideal of a homogeneous f under
// grevlex, and the standard monomials of degree <= degree_cap.
struct GdOracle {
  std::vector<CommPoly<Rationals>> basis;
  std::vector<Exponents> standard;
};

GdOracle gd_irreducibility_oracle(const CommPoly<Rationals>& f, int n, unsigned degree_cap);

}  // namespace holoct

#endif
