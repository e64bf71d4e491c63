#ifndef HOLOCT_WEYL_OPERATOR_HPP
#define HOLOCT_WEYL_OPERATOR_HPP

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoct/weyl/ring.hpp"

namespace holoct {

template <class K>
struct Term {
  Monomial m;
  typename K::Element c;
};

// Sorts descending under the ring order, merges equal monomials and drops
// zero coefficients.
template <class K>
void canonicalize_terms(const WeylRing<K>& ring, std::vector<Term<K>>& terms) {
  const auto& ord = ring.order();
  const K& k = ring.field();
  std::sort(terms.begin(), terms.end(),
            [&](const Term<K>& a, const Term<K>& b) { return ord.greater(a.m, b.m); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    auto c = std::move(terms[i].c);
    while (j < terms.size() && terms[j].m == terms[i].m) {
      k.add_to(c, terms[j].c);
      ++j;
    }
    if (!k.is_zero(c)) {
      terms[out].m = terms[i].m;
      terms[out].c = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// Element of W^r: a finite sum of c x^a d^b e_i with nonzero c, stored
// sorted descending under the ring's order.
template <class K>
class WeylOperator {
 public:
  using Field = K;
  using Element = typename K::Element;

  WeylOperator() = default;
  explicit WeylOperator(RingPtr<K> ring) : ring_(std::move(ring)) {}
  WeylOperator(RingPtr<K> ring, std::vector<Term<K>> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    for (const auto& t : terms_)
      if (t.m.component >= ring_->rank()) throw std::invalid_argument("component out of range");
    canonicalize_terms(*ring_, terms_);
  }

  static WeylOperator monomial(RingPtr<K> ring, const Monomial& m, Element c) {
    std::vector<Term<K>> t{{m, std::move(c)}};
    return WeylOperator(std::move(ring), std::move(t));
  }
  static WeylOperator constant(RingPtr<K> ring, Element c, int component = 0) {
    Monomial m;
    m.component = static_cast<std::uint16_t>(component);
    return monomial(std::move(ring), m, std::move(c));
  }
  static WeylOperator one(RingPtr<K> ring) {
    auto c = ring->field().one();
    return constant(std::move(ring), c);
  }
  static WeylOperator var_x(RingPtr<K> ring, int i) {
    Monomial m;
    m.x[i] = 1;
    auto c = ring->field().one();
    return monomial(std::move(ring), m, c);
  }
  static WeylOperator var_d(RingPtr<K> ring, int i) {
    Monomial m;
    m.d[i] = 1;
    auto c = ring->field().one();
    return monomial(std::move(ring), m, c);
  }
  static WeylOperator basis(RingPtr<K> ring, int component) {
    auto c = ring->field().one();
    return constant(std::move(ring), c, component);
  }

  // Wraps terms that are already canonical.
  static WeylOperator from_sorted(RingPtr<K> ring, std::vector<Term<K>> terms) {
    WeylOperator r(std::move(ring));
    r.terms_ = std::move(terms);
    return r;
  }

  const RingPtr<K>& ring() const { return ring_; }
  const K& field() const { return ring_->field(); }
  const std::vector<Term<K>>& terms() const { return terms_; }
  std::vector<Term<K>>& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& lm() const {
    if (terms_.empty()) throw std::domain_error("leading monomial of zero operator");
    return terms_.front().m;
  }
  const Element& lc() const {
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero operator");
    return terms_.front().c;
  }
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
  }
  bool has_d() const {
    for (const auto& t : terms_)
      if (t.m.has_d()) return true;
    return false;
  }

  bool operator==(const WeylOperator& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    const K& k = field();
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].m == o.terms_[i].m) || !k.equal(terms_[i].c, o.terms_[i].c)) return false;
    return true;
  }

  WeylOperator operator+(const WeylOperator& o) const { return combine(o, false); }
  WeylOperator operator-(const WeylOperator& o) const { return combine(o, true); }
  WeylOperator operator-() const {
    WeylOperator r = *this;
    for (auto& t : r.terms_) t.c = field().neg(t.c);
    return r;
  }
  WeylOperator& operator+=(const WeylOperator& o) { return *this = *this + o; }
  WeylOperator& operator-=(const WeylOperator& o) { return *this = *this - o; }

  WeylOperator scaled(const Element& c) const {
    const K& k = field();
    if (k.is_zero(c)) return WeylOperator(ring_);
    WeylOperator r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      auto v = k.mul(c, t.c);
      if (!k.is_zero(v)) r.terms_.push_back({t.m, std::move(v)});
    }
    return r;
  }
  WeylOperator monic() const {
    if (terms_.empty()) return *this;
    return scaled(field().inv(lc()));
  }

  // Coefficient of a monomial (zero if absent).
  Element coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.m == m) return t.c;
    return field().zero();
  }

  // Same terms viewed in a ring with a different order or rank.
  WeylOperator in_ring(RingPtr<K> other) const {
    if (!(other->field() == field()) || other->arity() != ring_->arity())
      throw std::invalid_argument("incompatible ring");
    return WeylOperator(std::move(other), terms_);
  }

 private:
  WeylOperator combine(const WeylOperator& o, bool subtract) const {
    if (!ring_->compatible(*o.ring_) || ring_->rank() != o.ring_->rank())
      throw std::invalid_argument("operators from incompatible algebras");
    const K& k = field();
    const auto& ord = ring_->order();
    WeylOperator r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size())
        c = -1;
      else if (j == o.terms_.size())
        c = 1;
      else
        c = ord.compare(terms_[i].m, o.terms_[j].m);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.m, subtract ? k.neg(t.c) : t.c});
      } else {
        auto v = subtract ? k.sub(terms_[i].c, o.terms_[j].c) : k.add(terms_[i].c, o.terms_[j].c);
        if (!k.is_zero(v)) r.terms_.push_back({terms_[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<K> ring_;
  std::vector<Term<K>> terms_;
};

namespace detail {

inline long checked_product(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("commutation coefficient overflow");
  return r;
}

inline long binom_small(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = checked_product(r, n - k + i) / i;
  return r;
}

// Appends c_a x^{ax} d^{ad} * c_b x^{bx} d^{bd} to out, written in the
// normal basis, with the given component.
template <class K>
void multiply_monomials(const WeylRing<K>& ring, const Monomial& a, const typename K::Element& ca,
                        const Monomial& b, const typename K::Element& cb, std::uint16_t component,
                        std::vector<Term<K>>& out) {
  const K& k = ring.field();
  const int n = ring.arity();
  // Variables where a d-power of a meets an x-power of b.
  int idx[kMaxVars];
  int lim[kMaxVars];
  int cnt = 0;
  for (int i = 0; i < n; ++i) {
    int m = std::min(a.d[i], b.x[i]);
    if (m > 0) {
      idx[cnt] = i;
      lim[cnt] = m;
      ++cnt;
    }
  }
  Monomial base;
  base.component = component;
  for (int i = 0; i < n; ++i) {
    base.x[i] = static_cast<std::uint16_t>(a.x[i] + b.x[i]);
    base.d[i] = static_cast<std::uint16_t>(a.d[i] + b.d[i]);
  }
  // Coefficient derivatives for the d_t twist.
  std::vector<typename K::Element> twist;
  if (ring.twisted() && a.d[0] > 0) {
    twist.push_back(cb);
    for (int j = 1; j <= a.d[0]; ++j) {
      auto next = k.derivative(twist.back());
      if (k.is_zero(next)) break;
      twist.push_back(std::move(next));
    }
  }
  int kv[kMaxVars] = {0};
  for (;;) {
    long coef = 1;
    Monomial m = base;
    for (int s = 0; s < cnt; ++s) {
      int i = idx[s], e = kv[s];
      if (e == 0) continue;
      coef = checked_product(coef, binom_small(a.d[i], e));
      coef = checked_product(coef, binom_small(b.x[i], e));
      for (int f = 2; f <= e; ++f) coef = checked_product(coef, f);
      m.x[i] = static_cast<std::uint16_t>(m.x[i] - e);
      m.d[i] = static_cast<std::uint16_t>(m.d[i] - e);
    }
    auto lead = coef == 1 ? ca : k.mul(ca, k.from_int(coef));
    if (twist.empty()) {
      auto v = k.mul(lead, cb);
      if (!k.is_zero(v)) out.push_back({m, std::move(v)});
    } else {
      for (std::size_t j = 0; j < twist.size(); ++j) {
        Monomial mj = m;
        mj.d[0] = static_cast<std::uint16_t>(mj.d[0] - j);
        long bj = binom_small(a.d[0], static_cast<long>(j));
        auto v = k.mul(lead, bj == 1 ? twist[j] : k.mul(k.from_int(bj), twist[j]));
        if (!k.is_zero(v)) out.push_back({mj, std::move(v)});
      }
    }
    int s = 0;
    while (s < cnt) {
      if (kv[s] < lim[s]) {
        ++kv[s];
        break;
      }
      kv[s] = 0;
      ++s;
    }
    if (s == cnt) break;
  }
}

}  // namespace detail

// Product in the Weyl algebra. Supports scalar*scalar, scalar*vector (left
// action) and vector*scalar (right action); the result lives in the ring of
// the vector operand.
template <class K>
WeylOperator<K> mul(const WeylOperator<K>& p, const WeylOperator<K>& q) {
  const auto& rp = p.ring();
  const auto& rq = q.ring();
  if (!rp->compatible(*rq)) throw std::invalid_argument("mul: operators from incompatible algebras");
  RingPtr<K> target;
  bool left_vector;
  if (rp->rank() == 1 && rq->rank() == 1) {
    target = rp;
    left_vector = true;
  } else if (rp->rank() == 1) {
    target = rq;
    left_vector = false;
  } else if (rq->rank() == 1) {
    target = rp;
    left_vector = true;
  } else {
    throw std::invalid_argument("mul: at most one factor may have rank > 1");
  }
  std::vector<Term<K>> out;
  for (const auto& b : q.terms())
    for (const auto& a : p.terms())
      detail::multiply_monomials(*rp, a.m, a.c, b.m, b.c, left_vector ? a.m.component : b.m.component, out);
  return WeylOperator<K>(target, std::move(out));
}

template <class K>
WeylOperator<K> operator*(const WeylOperator<K>& p, const WeylOperator<K>& q) {
  return mul(p, q);
}

// c * x^a d^b * g for a monomial shadow q (component ignored).
template <class K>
std::vector<Term<K>> monomial_times(const Monomial& q, const typename K::Element& c, const WeylOperator<K>& g) {
  std::vector<Term<K>> out;
  out.reserve(g.size());
  for (const auto& t : g.terms()) detail::multiply_monomials(*g.ring(), q, c, t.m, t.c, t.m.component, out);
  canonicalize_terms(*g.ring(), out);
  return out;
}

template <class K>
struct LeadingData {
  Monomial lm;
  typename K::Element lc;
};

template <class K>
LeadingData<K> leading_data(const WeylOperator<K>& p) {
  return {p.lm(), p.lc()};
}

inline int compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) { return ord.compare(a, b); }

// Coefficient-wise derivative with respect to the parameter t.
template <class K>
WeylOperator<K> coefficientwise_dt(const WeylOperator<K>& p) {
  if constexpr (!K::kHasParameter) {
    throw std::invalid_argument("coefficientwise_dt: coefficient field has no parameter");
  } else {
    std::vector<Term<K>> out;
    for (const auto& t : p.terms()) {
      auto c = p.field().derivative(t.c);
      if (!p.field().is_zero(c)) out.push_back({t.m, std::move(c)});
    }
    return WeylOperator<K>::from_sorted(p.ring(), std::move(out));
  }
}

// Applies a coefficient map into another field, keeping monomials.
template <class K2, class K, class Fn>
WeylOperator<K2> map_coefficients(const WeylOperator<K>& p, RingPtr<K2> target, Fn&& fn) {
  std::vector<Term<K2>> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto c = fn(t.c);
    if (!target->field().is_zero(c)) out.push_back({t.m, std::move(c)});
  }
  return WeylOperator<K2>(std::move(target), std::move(out));
}

}  // namespace holoct

#endif
