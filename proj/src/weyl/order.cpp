#include "holoct/weyl/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace holoct {

namespace {

int exponent(const Monomial& m, int n, int v) { return v < n ? m.x[v] : m.d[v - n]; }

int cmp(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

// grevlex on the variable range [lo, hi) of the 2n-variable layout.
int grevlex_range(const Monomial& a, const Monomial& b, int n, int lo, int hi) {
  long da = 0, db = 0;
  for (int v = lo; v < hi; ++v) {
    da += exponent(a, n, v);
    db += exponent(b, n, v);
  }
  if (da != db) return cmp(da, db);
  for (int v = hi; v-- > lo;) {
    int ea = exponent(a, n, v), eb = exponent(b, n, v);
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

void check_arity(int n) {
  if (n < 0 || n > kMaxVars) throw std::invalid_argument("monomial order arity out of range");
}

}  // namespace

MonomialOrder MonomialOrder::grevlex(int n) {
  check_arity(n);
  return MonomialOrder(OrderKind::Grevlex, n);
}

MonomialOrder MonomialOrder::block(int n) {
  check_arity(n);
  return MonomialOrder(OrderKind::Block, n);
}

MonomialOrder MonomialOrder::lex(int n, std::vector<int> sequence) {
  check_arity(n);
  std::vector<int> sorted = sequence;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
    if (sorted[i] != i) throw std::invalid_argument("lex sequence must be a permutation of 0..2n-1");
  if (static_cast<int>(sequence.size()) != 2 * n)
    throw std::invalid_argument("lex sequence must be a permutation of 0..2n-1");
  MonomialOrder o(OrderKind::Lex, n);
  o.seq_ = std::move(sequence);
  return o;
}

MonomialOrder MonomialOrder::weight(int n, std::vector<int> weights) {
  check_arity(n);
  if (static_cast<int>(weights.size()) != 2 * n) throw std::invalid_argument("weight vector must have 2n entries");
  for (int w : weights)
    if (w < 0) throw std::invalid_argument("weights must be nonnegative");
  MonomialOrder o(OrderKind::Weight, n);
  o.weights_ = std::move(weights);
  return o;
}

MonomialOrder MonomialOrder::with_tiebreak(TieBreak tb) const {
  MonomialOrder o = *this;
  o.tiebreak_ = tb;
  return o;
}

MonomialOrder MonomialOrder::with_dt_elimination() const {
  if (n_ < 1) throw std::invalid_argument("dt elimination needs at least one variable");
  MonomialOrder o = *this;
  o.dt_elim_ = true;
  return o;
}

int MonomialOrder::compare_terms(const Monomial& a, const Monomial& b) const {
  if (dt_elim_ && a.d[0] != b.d[0]) return a.d[0] < b.d[0] ? -1 : 1;
  switch (kind_) {
    case OrderKind::Grevlex:
      return grevlex_range(a, b, n_, 0, 2 * n_);
    case OrderKind::Block: {
      int c = grevlex_range(a, b, n_, 0, n_);
      return c != 0 ? c : grevlex_range(a, b, n_, n_, 2 * n_);
    }
    case OrderKind::Lex:
      for (int v : seq_) {
        int ea = exponent(a, n_, v), eb = exponent(b, n_, v);
        if (ea != eb) return ea < eb ? -1 : 1;
      }
      return 0;
    case OrderKind::Weight: {
      long wa = 0, wb = 0;
      for (int v = 0; v < 2 * n_; ++v) {
        wa += static_cast<long>(weights_[v]) * exponent(a, n_, v);
        wb += static_cast<long>(weights_[v]) * exponent(b, n_, v);
      }
      if (wa != wb) return cmp(wa, wb);
      return grevlex_range(a, b, n_, 0, 2 * n_);
    }
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (tiebreak_ == TieBreak::PositionOverTerm && a.component != b.component)
    return a.component > b.component ? -1 : 1;
  int c = compare_terms(a, b);
  if (c != 0) return c;
  if (a.component != b.component) return a.component > b.component ? -1 : 1;
  return 0;
}

bool MonomialOrder::hypothesis_finiteness(int rank) const {
  if (tiebreak_ == TieBreak::PositionOverTerm && rank > 1) return false;
  if (dt_elim_) return false;
  switch (kind_) {
    case OrderKind::Grevlex:
    case OrderKind::Block:
      return true;
    case OrderKind::Lex:
      return n_ == 0 || (n_ == 1 && seq_[0] == 0);
    case OrderKind::Weight:
      for (int i = 0; i < n_; ++i)
        if (weights_[i] <= 0) return false;
      return true;
  }
  return false;
}

std::vector<Monomial> monomials_of_degree(unsigned s, int n) {
  std::vector<Monomial> out;
  Monomial m;
  int vars = 2 * n;
  auto rec = [&](auto&& self, int v, unsigned left) -> void {
    if (v == vars - 1 || vars == 0) {
      if (vars == 0) {
        if (left == 0) out.push_back(m);
        return;
      }
      if (v < n)
        m.x[v] = static_cast<std::uint16_t>(left);
      else
        m.d[v - n] = static_cast<std::uint16_t>(left);
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      if (v < n)
        m.x[v] = static_cast<std::uint16_t>(e);
      else
        m.d[v - n] = static_cast<std::uint16_t>(e);
      self(self, v + 1, left - e);
    }
  };
  rec(rec, 0, s);
  return out;
}

Monomial MonomialOrder::largest_of_degree_by_scan(unsigned s, int rank) const {
  auto shadows = monomials_of_degree(s, n_);
  if (shadows.empty() || rank < 1) throw std::invalid_argument("no monomial of the requested degree");
  Monomial best = shadows.front();
  for (int c = 0; c < rank; ++c) {
    for (Monomial m : shadows) {
      m.component = static_cast<std::uint16_t>(c);
      if (greater(m, best)) best = m;
    }
  }
  return best;
}

Monomial MonomialOrder::largest_of_degree(unsigned s, int rank) const {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (n_ == 0) {
    if (s != 0) throw std::invalid_argument("no monomial of the requested degree");
    return Monomial{};
  }
  if (dt_elim_ || kind_ == OrderKind::Weight) return largest_of_degree_by_scan(s, rank);
  Monomial m;
  int top = kind_ == OrderKind::Lex ? seq_[0] : 0;
  if (top < n_)
    m.x[top] = static_cast<std::uint16_t>(s);
  else
    m.d[top - n_] = static_cast<std::uint16_t>(s);
  return m;
}

}  // namespace holoct
