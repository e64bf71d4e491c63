#ifndef HOLOCT_GROEBNER_GROEBNER_HPP
#define HOLOCT_GROEBNER_GROEBNER_HPP

#include <cstddef>
#include <vector>

#include "holoct/weyl/operator.hpp"

namespace holoct {

// a = remainder + sum_g quotients[g] * g + sum_i d_i * d_parts[i].
// Quotients live in the rank-one ring, d-parts in the ambient ring.
template <class K>
struct DivisionCertificate {
  std::vector<WeylOperator<K>> quotients;
  std::vector<WeylOperator<K>> d_parts;
  WeylOperator<K> remainder;
};

// Reduced monic left Groebner basis of a submodule of W^r.
template <class K>
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr<K> ring, std::vector<WeylOperator<K>> generators, std::vector<WeylOperator<K>> original)
      : ring_(std::move(ring)), scalar_ring_(ring_->with_rank(1)), generators_(std::move(generators)),
        original_(std::move(original)) {}

  const RingPtr<K>& ring() const { return ring_; }
  const RingPtr<K>& scalar_ring() const { return scalar_ring_; }
  const MonomialOrder& order() const { return ring_->order(); }
  const std::vector<WeylOperator<K>>& generators() const { return generators_; }
  const std::vector<WeylOperator<K>>& original_generators() const { return original_; }
  std::size_t size() const { return generators_.size(); }

  // Index of the first generator whose leading monomial divides m, or -1.
  int find_reducer(const Monomial& m) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i].lm().divides(m)) return static_cast<int>(i);
    return -1;
  }
  bool is_reducible(const Monomial& m) const { return find_reducer(m) >= 0; }

 private:
  RingPtr<K> ring_;
  RingPtr<K> scalar_ring_;
  std::vector<WeylOperator<K>> generators_;
  std::vector<WeylOperator<K>> original_;
};

struct BuchbergerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_skipped = 0;
  std::size_t zero_reductions = 0;
};

// Reduced left Groebner basis of the module generated by gens, under the
// order of the ring.
template <class K>
GroebnerBasis<K> buchberger(const RingPtr<K>& ring, const std::vector<WeylOperator<K>>& gens,
                            BuchbergerStats* stats = nullptr);

template <class K>
GroebnerBasis<K> buchberger(const std::vector<WeylOperator<K>>& gens, BuchbergerStats* stats = nullptr);

// Same, after moving the generators into a ring with the given order.
template <class K>
GroebnerBasis<K> buchberger(const std::vector<WeylOperator<K>>& gens, const MonomialOrder& order,
                            BuchbergerStats* stats = nullptr);

// Full left reduction: no monomial of the result is divisible (on shadows)
// by a leading monomial of G.
template <class K>
WeylOperator<K> lrem(const WeylOperator<K>& a, const GroebnerBasis<K>& G);

template <class K>
DivisionCertificate<K> lrem_certified(const WeylOperator<K>& a, const GroebnerBasis<K>& G);

// Reduction modulo the right module d_1 W^r + ... + d_n W^r; the result is
// free of d. Not available in twisted rings.
template <class K>
WeylOperator<K> rrem(const WeylOperator<K>& a);

template <class K>
DivisionCertificate<K> rrem_certified(const WeylOperator<K>& a);

template <class K>
bool ideal_membership(const WeylOperator<K>& a, const GroebnerBasis<K>& G) {
  return lrem(a, G).is_zero();
}

// Checks a = remainder + sum q_g g + sum d_i w_i exactly.
template <class K>
bool verify_certificate(const WeylOperator<K>& a, const DivisionCertificate<K>& cert,
                        const std::vector<WeylOperator<K>>& generators);

// Accumulates certificate b into a (same generators).
template <class K>
void merge_certificate(DivisionCertificate<K>& into, const DivisionCertificate<K>& b);

template <class K>
DivisionCertificate<K> empty_certificate(const RingPtr<K>& ring, std::size_t generators);

}  // namespace holoct

#endif
