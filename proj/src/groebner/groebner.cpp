#include "holoct/groebner/groebner.hpp"

#include <algorithm>
#include <map>
#include <type_traits>

#include "holoct/field_list.hpp"
#include "holoct/groebner/term_map.hpp"

namespace holoct {

namespace {

// Full left reduction of `a` by `basis`; records c*q for every step when
// quotients is given.
template <class K>
WeylOperator<K> reduce_full(const WeylOperator<K>& a, const std::vector<WeylOperator<K>>& basis,
                            std::type_identity_t<std::vector<std::vector<Term<K>>>>* quotients, int skip = -1) {
  const auto& ring = a.ring();
  const K& k = ring->field();
  TermMap<K> cur(*ring);
  cur.assign(a.terms());
  std::vector<Term<K>> rem;
  while (!cur.empty()) {
    auto it = cur.begin();
    const Monomial m = it->first;
    int found = -1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (static_cast<int>(i) != skip && basis[i].lm().divides(m)) {
        found = static_cast<int>(i);
        break;
      }
    }
    if (found < 0) {
      rem.push_back({m, std::move(it->second)});
      cur.erase(it);
      continue;
    }
    const auto& g = basis[found];
    Monomial q = shadow_quotient(m, g.lm());
    auto c = k.is_one(g.lc()) ? it->second : k.div(it->second, g.lc());
    auto prod = monomial_times(q, c, g);
    cur.subtract(prod);
    if (quotients) (*quotients)[found].push_back({q, std::move(c)});
  }
  return WeylOperator<K>::from_sorted(ring, std::move(rem));
}

struct Pair {
  int i;
  int j;
  Monomial lcm;
  std::size_t seq;
};

template <class K>
class Buchberger {
 public:
  explicit Buchberger(RingPtr<K> ring) : ring_(std::move(ring)) {}

  void add_input(const WeylOperator<K>& g) {
    if (g.is_zero()) return;
    auto h = reduce_full(g, basis_, nullptr);
    if (!h.is_zero()) add_element(h.monic());
  }

  void run(BuchbergerStats* stats) {
    const auto& ord = ring_->order();
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it) {
        int c = ord.compare(it->lcm, best->lcm);
        if (c < 0 || (c == 0 && it->seq < best->seq)) best = it;
      }
      Pair p = *best;
      pairs_.erase(best);
      if (stats) ++stats->pairs_processed;
      auto s = spoly(p);
      auto h = reduce_full(s, basis_, nullptr);
      if (h.is_zero()) {
        if (stats) ++stats->zero_reductions;
        continue;
      }
      add_element(h.monic());
    }
  }

  std::vector<WeylOperator<K>> reduced_basis() const {
    const auto& ord = ring_->order();
    std::vector<WeylOperator<K>> sorted = basis_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const auto& a, const auto& b) { return ord.less(a.lm(), b.lm()); });
    std::vector<WeylOperator<K>> minimal;
    for (const auto& g : sorted) {
      bool redundant = false;
      for (const auto& h : minimal)
        if (h.lm().divides(g.lm())) redundant = true;
      if (!redundant) minimal.push_back(g);
    }
    std::vector<WeylOperator<K>> out;
    out.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      const auto& g = minimal[i];
      std::vector<Term<K>> tail(g.terms().begin() + 1, g.terms().end());
      auto t = reduce_full(WeylOperator<K>::from_sorted(ring_, std::move(tail)), minimal, nullptr,
                           static_cast<int>(i));
      std::vector<Term<K>> terms{g.terms().front()};
      terms.insert(terms.end(), t.terms().begin(), t.terms().end());
      out.push_back(WeylOperator<K>::from_sorted(ring_, std::move(terms)));
    }
    return out;
  }

  std::size_t skipped() const { return skipped_; }

 private:
  WeylOperator<K> spoly(const Pair& p) const {
    const auto& gi = basis_[p.i];
    const auto& gj = basis_[p.j];
    const K& k = ring_->field();
    auto a = monomial_times(shadow_quotient(p.lcm, gi.lm()), k.one(), gi);
    auto b = monomial_times(shadow_quotient(p.lcm, gj.lm()), k.one(), gj);
    return WeylOperator<K>::from_sorted(ring_, std::move(a)) - WeylOperator<K>::from_sorted(ring_, std::move(b));
  }

  void add_element(WeylOperator<K> h) {
    const Monomial t = h.lm();
    const int idx = static_cast<int>(basis_.size());
    // Chain criterion on the existing pairs.
    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      if (t.divides(p.lcm) && !(shadow_lcm(basis_[p.i].lm(), t) == p.lcm) &&
          !(shadow_lcm(basis_[p.j].lm(), t) == p.lcm)) {
        ++skipped_;
        continue;
      }
      kept.push_back(p);
    }
    pairs_ = std::move(kept);
    // New pairs, pruned by strict divisibility and equal lcms.
    std::vector<Pair> fresh;
    for (int i = 0; i < idx; ++i) {
      if (redundant_[i] || basis_[i].lm().component != t.component) continue;
      fresh.push_back({i, idx, shadow_lcm(basis_[i].lm(), t), 0});
    }
    std::vector<Pair> survivors;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
        if (a == b) continue;
        if (fresh[b].lcm.divides(fresh[a].lcm) && !(fresh[b].lcm == fresh[a].lcm)) drop = true;
        if (fresh[b].lcm == fresh[a].lcm && b < a) drop = true;
      }
      if (drop)
        ++skipped_;
      else
        survivors.push_back(fresh[a]);
    }
    for (auto& p : survivors) {
      p.seq = seq_++;
      pairs_.push_back(p);
    }
    for (int i = 0; i < idx; ++i)
      if (!redundant_[i] && t.divides(basis_[i].lm())) redundant_[i] = true;
    basis_.push_back(std::move(h));
    redundant_.push_back(false);
  }

  RingPtr<K> ring_;
  std::vector<WeylOperator<K>> basis_;
  std::vector<bool> redundant_;
  std::vector<Pair> pairs_;
  std::size_t seq_ = 0;
  std::size_t skipped_ = 0;
};

template <class K>
std::vector<WeylOperator<K>> collect_quotients(const RingPtr<K>& scalar_ring,
                                               std::vector<std::vector<Term<K>>>& parts) {
  std::vector<WeylOperator<K>> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.emplace_back(scalar_ring, std::move(p));
  return out;
}

}  // namespace

template <class K>
GroebnerBasis<K> buchberger(const RingPtr<K>& ring, const std::vector<WeylOperator<K>>& gens,
                            BuchbergerStats* stats) {
  for (const auto& g : gens)
    if (!(*g.ring() == *ring)) throw std::invalid_argument("buchberger: generators from different algebras");
  Buchberger<K> bb(ring);
  for (const auto& g : gens) bb.add_input(g);
  bb.run(stats);
  if (stats) stats->pairs_skipped = bb.skipped();
  return GroebnerBasis<K>(ring, bb.reduced_basis(), gens);
}

template <class K>
GroebnerBasis<K> buchberger(const std::vector<WeylOperator<K>>& gens, BuchbergerStats* stats) {
  if (gens.empty()) throw std::invalid_argument("buchberger: no generators to take the ring from");
  return buchberger(gens.front().ring(), gens, stats);
}

template <class K>
GroebnerBasis<K> buchberger(const std::vector<WeylOperator<K>>& gens, const MonomialOrder& order,
                            BuchbergerStats* stats) {
  if (gens.empty()) throw std::invalid_argument("buchberger: no generators to take the ring from");
  auto ring = gens.front().ring()->with_order(order);
  std::vector<WeylOperator<K>> moved;
  moved.reserve(gens.size());
  for (const auto& g : gens) moved.push_back(g.in_ring(ring));
  return buchberger(moved, stats);
}

template <class K>
WeylOperator<K> lrem(const WeylOperator<K>& a, const GroebnerBasis<K>& G) {
  return reduce_full(a, G.generators(), nullptr);
}

template <class K>
DivisionCertificate<K> lrem_certified(const WeylOperator<K>& a, const GroebnerBasis<K>& G) {
  std::vector<std::vector<Term<K>>> parts(G.size());
  auto rem = reduce_full(a, G.generators(), &parts);
  DivisionCertificate<K> cert = empty_certificate(a.ring(), G.size());
  cert.quotients = collect_quotients(G.scalar_ring(), parts);
  cert.remainder = std::move(rem);
  return cert;
}

template <class K>
WeylOperator<K> rrem(const WeylOperator<K>& a) {
  const auto& ring = a.ring();
  if (ring->twisted()) throw std::invalid_argument("rrem: not defined in twisted rings");
  const K& k = ring->field();
  std::vector<Term<K>> out;
  for (const auto& t : a.terms()) {
    if (!t.m.has_d()) {
      out.push_back(t);
      continue;
    }
    Monomial m = t.m;
    long factor = 1;
    bool vanish = false;
    unsigned total = 0;
    for (int i = 0; i < kMaxVars && !vanish; ++i) {
      if (m.d[i] > m.x[i]) {
        vanish = true;
        break;
      }
      for (int j = 0; j < m.d[i]; ++j) factor = detail::checked_product(factor, m.x[i] - j);
      total += m.d[i];
      m.x[i] = static_cast<std::uint16_t>(m.x[i] - m.d[i]);
      m.d[i] = 0;
    }
    if (vanish) continue;
    if (total % 2 == 1) factor = -factor;
    out.push_back({m, k.mul(k.from_int(factor), t.c)});
  }
  return WeylOperator<K>(ring, std::move(out));
}

template <class K>
DivisionCertificate<K> rrem_certified(const WeylOperator<K>& a) {
  const auto& ring = a.ring();
  if (ring->twisted()) throw std::invalid_argument("rrem: not defined in twisted rings");
  const K& k = ring->field();
  const int n = ring->arity();
  TermMap<K> cur(*ring);
  cur.assign(a.terms());
  std::vector<std::vector<Term<K>>> w(n);
  std::vector<Term<K>> rem;
  while (!cur.empty()) {
    auto it = cur.begin();
    Monomial m = it->first;
    auto c = std::move(it->second);
    cur.erase(it);
    int i = 0;
    while (i < n && m.d[i] == 0) ++i;
    if (i == n) {
      rem.push_back({m, std::move(c)});
      continue;
    }
    Monomial lower = m;
    lower.d[i] = static_cast<std::uint16_t>(lower.d[i] - 1);
    w[i].push_back({lower, c});
    if (m.x[i] > 0) {
      Monomial next = lower;
      next.x[i] = static_cast<std::uint16_t>(next.x[i] - 1);
      cur.subtract({{next, k.mul(k.from_int(m.x[i]), c)}});
    }
  }
  DivisionCertificate<K> cert = empty_certificate(ring, 0);
  for (int i = 0; i < n; ++i) cert.d_parts[i] = WeylOperator<K>(ring, std::move(w[i]));
  cert.remainder = WeylOperator<K>(ring, std::move(rem));
  return cert;
}

template <class K>
DivisionCertificate<K> empty_certificate(const RingPtr<K>& ring, std::size_t generators) {
  DivisionCertificate<K> cert;
  auto scalar = ring->with_rank(1);
  cert.quotients.assign(generators, WeylOperator<K>(scalar));
  cert.d_parts.assign(static_cast<std::size_t>(ring->arity()), WeylOperator<K>(ring));
  cert.remainder = WeylOperator<K>(ring);
  return cert;
}

template <class K>
void merge_certificate(DivisionCertificate<K>& into, const DivisionCertificate<K>& b) {
  if (into.quotients.size() < b.quotients.size()) {
    if (!b.quotients.empty()) into.quotients.resize(b.quotients.size(), WeylOperator<K>(b.quotients[0].ring()));
  }
  for (std::size_t i = 0; i < b.quotients.size(); ++i) into.quotients[i] += b.quotients[i];
  for (std::size_t i = 0; i < b.d_parts.size(); ++i) into.d_parts[i] += b.d_parts[i];
}

template <class K>
bool verify_certificate(const WeylOperator<K>& a, const DivisionCertificate<K>& cert,
                        const std::vector<WeylOperator<K>>& generators) {
  if (cert.quotients.size() > generators.size()) return false;
  WeylOperator<K> sum = cert.remainder;
  for (std::size_t i = 0; i < cert.quotients.size(); ++i)
    if (!cert.quotients[i].is_zero()) sum += mul(cert.quotients[i], generators[i]);
  auto scalar = a.ring()->with_rank(1);
  for (std::size_t i = 0; i < cert.d_parts.size(); ++i)
    if (!cert.d_parts[i].is_zero())
      sum += mul(WeylOperator<K>::var_d(scalar, static_cast<int>(i)), cert.d_parts[i]);
  return sum == a;
}

#define HOLOCT_INSTANTIATE(K)                                                                                   \
  template GroebnerBasis<K> buchberger(const RingPtr<K>&, const std::vector<WeylOperator<K>>&,               \
                                       BuchbergerStats*);                                                     \
  template GroebnerBasis<K> buchberger(const std::vector<WeylOperator<K>>&, BuchbergerStats*);                \
  template GroebnerBasis<K> buchberger(const std::vector<WeylOperator<K>>&, const MonomialOrder&,             \
                                       BuchbergerStats*);                                                     \
  template WeylOperator<K> lrem(const WeylOperator<K>&, const GroebnerBasis<K>&);                             \
  template DivisionCertificate<K> lrem_certified(const WeylOperator<K>&, const GroebnerBasis<K>&);            \
  template WeylOperator<K> rrem(const WeylOperator<K>&);                                                      \
  template DivisionCertificate<K> rrem_certified(const WeylOperator<K>&);                                     \
  template DivisionCertificate<K> empty_certificate(const RingPtr<K>&, std::size_t);                          \
  template void merge_certificate(DivisionCertificate<K>&, const DivisionCertificate<K>&);                    \
  template bool verify_certificate(const WeylOperator<K>&, const DivisionCertificate<K>&,                     \
                                   const std::vector<WeylOperator<K>>&);
HOLOCT_FOR_EACH_FIELD(HOLOCT_INSTANTIATE)
#undef HOLOCT_INSTANTIATE

}  // namespace holoct
