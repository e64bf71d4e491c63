#ifndef HOLOCT_WEYL_RING_HPP
#define HOLOCT_WEYL_RING_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holoct/weyl/order.hpp"

namespace holoct {

// The algebra W^r over a coefficient field K: variable names, rank and the
// active monomial order. With `twisted` set, variable 0 stands for the
// parameter t of K: its x-exponent is always 0, its d-exponent is the power
// of d_t, and d_t c = c d_t + c' for coefficients c.
template <class K>
class WeylRing {
 public:
  WeylRing(K field, std::vector<std::string> names, int rank, MonomialOrder order, bool twisted = false)
      : field_(std::move(field)), names_(std::move(names)), rank_(rank), order_(std::move(order)),
        twisted_(twisted) {
    if (static_cast<int>(names_.size()) > kMaxVars) throw std::invalid_argument("too many variables");
    if (order_.arity() != arity()) throw std::invalid_argument("order arity does not match variables");
    if (rank_ < 1 || rank_ > 0xffff) throw std::invalid_argument("rank must be positive");
    if (twisted_ && (!K::kHasParameter || names_.empty()))
      throw std::invalid_argument("twisted ring needs a parametric field and a t slot");
  }

  const K& field() const { return field_; }
  int arity() const { return static_cast<int>(names_.size()); }
  int rank() const { return rank_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<std::string>& names() const { return names_; }
  bool twisted() const { return twisted_; }

  std::shared_ptr<const WeylRing> with_rank(int r) const {
    return std::make_shared<const WeylRing>(field_, names_, r, order_, twisted_);
  }
  std::shared_ptr<const WeylRing> with_order(MonomialOrder o) const {
    return std::make_shared<const WeylRing>(field_, names_, rank_, std::move(o), twisted_);
  }
  template <class K2>
  std::shared_ptr<const WeylRing<K2>> with_field(K2 field) const {
    return std::make_shared<const WeylRing<K2>>(std::move(field), names_, rank_, order_, twisted_);
  }

  // Same variables, field, order and twist; ranks may differ.
  bool compatible(const WeylRing& o) const {
    return names_.size() == o.names_.size() && field_ == o.field_ && order_ == o.order_ &&
           twisted_ == o.twisted_;
  }
  bool operator==(const WeylRing& o) const { return compatible(o) && rank_ == o.rank_ && names_ == o.names_; }

 private:
  K field_;
  std::vector<std::string> names_;
  int rank_;
  MonomialOrder order_;
  bool twisted_;
};

template <class K>
using RingPtr = std::shared_ptr<const WeylRing<K>>;

template <class K>
RingPtr<K> make_ring(K field, std::vector<std::string> names, int rank, MonomialOrder order, bool twisted = false) {
  return std::make_shared<const WeylRing<K>>(std::move(field), std::move(names), rank, std::move(order), twisted);
}

}  // namespace holoct

#endif
