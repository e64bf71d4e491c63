#ifndef HOLOCT_GROEBNER_TERM_MAP_HPP
#define HOLOCT_GROEBNER_TERM_MAP_HPP

#include <map>
#include <vector>

#include "holoct/weyl/operator.hpp"

namespace holoct {

// Mutable operator under reduction, ordered largest monomial first.
template <class K>
class TermMap {
  struct Greater {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->greater(a, b); }
  };
  using Map = std::map<Monomial, typename K::Element, Greater>;

 public:
  using iterator = typename Map::iterator;

  TermMap(const WeylRing<K>& ring) : field_(&ring.field()), map_(Greater{&ring.order()}) {}
  TermMap(const MonomialOrder& ord, const K& field) : field_(&field), map_(Greater{&ord}) {}
  explicit TermMap(const MonomialOrder&) = delete;

  void assign(const std::vector<Term<K>>& terms) {
    map_.clear();
    for (const auto& t : terms) map_.emplace_hint(map_.end(), t.m, t.c);
  }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  iterator begin() { return map_.begin(); }
  iterator end() { return map_.end(); }
  void erase(iterator it) { map_.erase(it); }

  void add(const std::vector<Term<K>>& terms) { combine(terms, false); }
  void subtract(const std::vector<Term<K>>& terms) { combine(terms, true); }
  void add_term(const Monomial& m, const typename K::Element& c) {
    auto [it, inserted] = map_.try_emplace(m, c);
    if (!inserted) {
      field_->add_to(it->second, c);
      if (field_->is_zero(it->second)) map_.erase(it);
    }
  }

  std::vector<Term<K>> take_terms() {
    std::vector<Term<K>> out;
    out.reserve(map_.size());
    for (auto& [m, c] : map_) out.push_back({m, std::move(c)});
    map_.clear();
    return out;
  }

 private:
  void combine(const std::vector<Term<K>>& terms, bool negate) {
    const K& k = *field_;
    for (const auto& t : terms) {
      auto it = map_.lower_bound(t.m);
      if (it != map_.end() && it->first == t.m) {
        if (negate)
          it->second = k.sub(it->second, t.c);
        else
          k.add_to(it->second, t.c);
        if (k.is_zero(it->second)) map_.erase(it);
      } else {
        map_.emplace_hint(it, t.m, negate ? k.neg(t.c) : t.c);
      }
    }
  }

  const K* field_;
  Map map_;
};

}  // namespace holoct

#endif
