#include "holoct/reduction/reduction.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "holoct/field_list.hpp"

namespace holoct {

template <class K>
ReductionContext<K>::ReductionContext(GroebnerBasis<K> basis) : basis_(std::move(basis)) {
  if (!basis_.ring()) throw std::invalid_argument("ReductionContext: empty basis without a ring");
  if (basis_.ring()->twisted()) throw std::invalid_argument("ReductionContext: twisted rings are not supported");
  if (!basis_.order().hypothesis_finiteness(basis_.ring()->rank()))
    throw std::invalid_argument("ReductionContext: the order admits infinitely many x^alpha m below some eta");
}

template <class K>
WeylOperator<K> reduced_form(const WeylOperator<K>& a, const ReductionContext<K>& ctx) {
  WeylOperator<K> cur = a;
  for (;;) {
    cur = lrem(rrem(cur), ctx.basis());
    if (!cur.has_d()) return cur;
  }
}

template <class K>
DivisionCertificate<K> reduced_form_certified(const WeylOperator<K>& a, const ReductionContext<K>& ctx) {
  auto cert = empty_certificate(a.ring(), ctx.basis().size());
  WeylOperator<K> cur = a;
  for (;;) {
    auto right = rrem_certified(cur);
    merge_certificate(cert, right);
    auto left = lrem_certified(right.remainder, ctx.basis());
    merge_certificate(cert, left);
    cur = std::move(left.remainder);
    if (!cur.has_d()) break;
  }
  cert.remainder = std::move(cur);
  return cert;
}

template <class K>
void add_scaled_certificate(DivisionCertificate<K>& into, const DivisionCertificate<K>& b,
                            const typename K::Element& c) {
  if (into.quotients.size() < b.quotients.size() && !b.quotients.empty())
    into.quotients.resize(b.quotients.size(), WeylOperator<K>(b.quotients[0].ring()));
  for (std::size_t i = 0; i < b.quotients.size(); ++i)
    if (!b.quotients[i].is_zero()) into.quotients[i] += b.quotients[i].scaled(c);
  for (std::size_t i = 0; i < b.d_parts.size(); ++i)
    if (!b.d_parts[i].is_zero()) into.d_parts[i] += b.d_parts[i].scaled(c);
}

namespace {

// The generator g and exponent gamma with m = x^gamma lm(g), first match.
template <class K>
std::pair<int, Exponents> candidate_source(const GroebnerBasis<K>& G, const Monomial& m) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    const Monomial& l = G.generators()[i].lm();
    if (!l.has_d() || l.d != m.d || !l.divides(m)) continue;
    Exponents gamma{};
    for (int v = 0; v < kMaxVars; ++v) gamma[v] = static_cast<std::uint16_t>(m.x[v] - l.x[v]);
    return {static_cast<int>(i), gamma};
  }
  throw std::logic_error("candidate_source: no generator produces the candidate");
}

template <class K>
bool excluded(const GroebnerBasis<K>& G, const Monomial& m, int n) {
  for (int i = 0; i < n; ++i) {
    if (m.d[i] == 0) continue;
    Monomial lower = m;
    --lower.d[i];
    if (G.is_reducible(lower)) return true;
  }
  return false;
}

}  // namespace

template <class K>
std::vector<Monomial> eta_candidates(const ReductionContext<K>& ctx, const Monomial& eta) {
  const auto& G = ctx.basis();
  const auto& ord = ctx.order();
  const int n = ctx.ring()->arity();
  std::unordered_set<Monomial, MonomialHash> seen;
  std::deque<Monomial> queue;
  for (const auto& g : G.generators()) {
    const Monomial& l = g.lm();
    if (!l.has_d() || ord.greater(l, eta) || !seen.insert(l).second) continue;
    queue.push_back(l);
  }
  std::vector<Monomial> out;
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    if (!excluded(G, m, n)) out.push_back(m);
    for (int i = 0; i < n; ++i) {
      Monomial next = m;
      ++next.x[i];
      if (ord.greater(next, eta) || !seen.insert(next).second) continue;
      queue.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  return out;
}

template <class K>
WeylOperator<K> reduce_by_rows(const WeylOperator<K>& a, const std::vector<WeylOperator<K>>& rows) {
  WeylOperator<K> v = a;
  const K& k = a.field();
  for (const auto& row : rows) {
    auto c = v.coefficient(row.lm());
    if (!k.is_zero(c)) v -= row.scaled(c);
  }
  return v;
}

template <class K>
EtaBasis<K> compute_eta_basis(const ReductionContext<K>& ctx, const Monomial& eta, const EtaOptions& opts) {
  const auto& G = ctx.basis();
  const auto& ring = ctx.ring();
  const auto& ord = ctx.order();
  const K& k = ctx.field();
  auto scalar = G.scalar_ring();

  EtaBasis<K> B;
  B.eta = eta;
  B.tracer.candidates = eta_candidates(ctx, eta);
  std::unordered_set<Monomial, MonomialHash> skip;
  if (opts.replay) {
    if (opts.replay->candidates != B.tracer.candidates)
      throw TracerMismatch("eta basis: candidate set differs from the tracer");
    skip.insert(opts.replay->idle.begin(), opts.replay->idle.end());
  }

  for (const auto& m : B.tracer.candidates) {
    if (skip.count(m)) {
      B.tracer.idle.push_back(m);
      continue;
    }
    auto [gi, gamma] = candidate_source(G, m);
    const auto& g = G.generators()[gi];
    const Monomial& l = g.lm();

    // h = x^gamma g - lc(g) d^beta x^(alpha+gamma) e_j, with the second
    // product written as d_i0 * w.
    Monomial xg;
    xg.x = gamma;
    auto left = mul(WeylOperator<K>::monomial(scalar, xg, k.one()), g);
    int i0 = 0;
    while (l.d[i0] == 0) ++i0;
    Monomial dpart;
    dpart.d = l.d;
    --dpart.d[i0];
    Monomial xpart;
    xpart.x = m.x;
    xpart.component = m.component;
    auto w = mul(WeylOperator<K>::monomial(scalar, dpart, g.lc()), WeylOperator<K>::monomial(ring, xpart, k.one()));
    auto h = left - mul(WeylOperator<K>::var_d(scalar, i0), w);

    WeylOperator<K> v(ring);
    DivisionCertificate<K> cert;
    if (opts.certificates) {
      // [h] = h - P, so [h] = x^gamma g - d_i0 w - P.
      auto red = reduced_form_certified(h, ctx);
      v = red.remainder;
      cert = empty_certificate(ring, G.size());
      add_scaled_certificate(cert, red, k.neg(k.one()));
      cert.quotients[gi] += WeylOperator<K>::monomial(scalar, xg, k.one());
      cert.d_parts[i0] -= w;
      for (std::size_t r = 0; r < B.rows.size(); ++r) {
        auto c = v.coefficient(B.rows[r].lm());
        if (k.is_zero(c)) continue;
        v -= B.rows[r].scaled(c);
        add_scaled_certificate(cert, B.certificates[r], k.neg(c));
      }
    } else {
      v = reduce_by_rows(reduced_form(h, ctx), B.rows);
    }

    if (v.is_zero()) {
      if (opts.replay) throw TracerMismatch("eta basis: a replayed candidate no longer contributes");
      B.tracer.idle.push_back(m);
      continue;
    }
    auto inv = k.inv(v.lc());
    v = v.scaled(inv);
    if (opts.certificates) {
      DivisionCertificate<K> scaled = empty_certificate(ring, G.size());
      add_scaled_certificate(scaled, cert, inv);
      cert = std::move(scaled);
    }
    for (std::size_t r = 0; r < B.rows.size(); ++r) {
      auto c = B.rows[r].coefficient(v.lm());
      if (k.is_zero(c)) continue;
      B.rows[r] -= v.scaled(c);
      if (opts.certificates) add_scaled_certificate(B.certificates[r], cert, k.neg(c));
    }
    std::size_t pos = 0;
    while (pos < B.rows.size() && ord.greater(B.rows[pos].lm(), v.lm())) ++pos;
    B.rows.insert(B.rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    if (opts.certificates)
      B.certificates.insert(B.certificates.begin() + static_cast<std::ptrdiff_t>(pos), std::move(cert));
  }
  return B;
}

template <class K>
WeylOperator<K> reduce_eta(const WeylOperator<K>& a, const ReductionContext<K>& ctx, const EtaBasis<K>& B) {
  return reduce_by_rows(reduced_form(a, ctx), B.rows);
}

template <class K>
DivisionCertificate<K> reduce_eta_certified(const WeylOperator<K>& a, const ReductionContext<K>& ctx,
                                            const EtaBasis<K>& B) {
  if (B.certificates.size() != B.rows.size())
    throw std::invalid_argument("reduce_eta_certified: eta basis was built without certificates");
  const K& k = ctx.field();
  auto cert = reduced_form_certified(a, ctx);
  for (std::size_t r = 0; r < B.rows.size(); ++r) {
    auto c = cert.remainder.coefficient(B.rows[r].lm());
    if (k.is_zero(c)) continue;
    cert.remainder -= B.rows[r].scaled(c);
    add_scaled_certificate(cert, B.certificates[r], c);
  }
  return cert;
}

namespace {

using QPoly = CommPoly<Rationals>;

// Graded reverse lexicographic comparison with x_1 > ... > x_n.
bool grevlex_less(const Exponents& a, const Exponents& b, int n) {
  unsigned da = 0, db = 0;
  for (int i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db;
  for (int i = n - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Exponents leading(const QPoly& p, int n) {
  auto best = p.begin();
  for (auto it = p.begin(); it != p.end(); ++it)
    if (grevlex_less(best->first, it->first, n)) best = it;
  return best->first;
}

bool exp_divides(const Exponents& a, const Exponents& b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void axpy(QPoly& p, const QPoly& q, const Rational& c, const Exponents& shift, int n) {
  for (const auto& [e, v] : q) {
    Exponents s = e;
    for (int i = 0; i < n; ++i) s[i] = static_cast<std::uint16_t>(s[i] + shift[i]);
    Rational& slot = p[s];
    slot += c * v;
    if (slot == 0) p.erase(s);
  }
}

QPoly normal_form(QPoly p, const std::vector<QPoly>& basis, int n) {
  QPoly rem;
  while (!p.empty()) {
    Exponents lt = leading(p, n);
    Rational c = p[lt];
    bool reduced = false;
    for (const auto& g : basis) {
      Exponents lg = leading(g, n);
      if (!exp_divides(lg, lt, n)) continue;
      Exponents shift{};
      for (int i = 0; i < n; ++i) shift[i] = static_cast<std::uint16_t>(lt[i] - lg[i]);
      axpy(p, g, -c / g.at(lg), shift, n);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem[lt] = c;
      p.erase(lt);
    }
  }
  return rem;
}

QPoly monic_poly(QPoly p, int n) {
  Rational c = p.at(leading(p, n));
  for (auto& [e, v] : p) v /= c;
  return p;
}

}  // namespace

GdOracle gd_irreducibility_oracle(const QPoly& f, int n, unsigned degree_cap) {
  if (f.empty()) throw std::invalid_argument("gd_irreducibility_oracle: f is zero");
  unsigned deg = 0;
  for (int i = 0; i < n; ++i) deg += f.begin()->first[i];
  for (const auto& [e, c] : f) {
    unsigned d = 0;
    for (int i = 0; i < n; ++i) d += e[i];
    if (d != deg) throw std::invalid_argument("gd_irreducibility_oracle: f is not homogeneous");
  }
  std::vector<QPoly> gens;
  for (int i = 0; i < n; ++i) {
    QPoly fi;
    for (const auto& [e, c] : f) {
      if (e[i] == 0) continue;
      Exponents s = e;
      --s[i];
      fi[s] += c * e[i];
    }
    if (!fi.empty()) gens.push_back(monic_poly(fi, n));
  }

  std::vector<QPoly> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto add = [&](QPoly p) {
    p = normal_form(std::move(p), basis, n);
    if (p.empty()) return;
    basis.push_back(monic_poly(std::move(p), n));
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) pairs.emplace_back(i, basis.size() - 1);
  };
  for (auto& g : gens) add(g);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    Exponents li = leading(basis[i], n), lj = leading(basis[j], n), l{};
    for (int v = 0; v < n; ++v) l[v] = std::max(li[v], lj[v]);
    Exponents si{}, sj{};
    for (int v = 0; v < n; ++v) {
      si[v] = static_cast<std::uint16_t>(l[v] - li[v]);
      sj[v] = static_cast<std::uint16_t>(l[v] - lj[v]);
    }
    QPoly s;
    axpy(s, basis[i], Rational(1), si, n);
    axpy(s, basis[j], Rational(-1), sj, n);
    add(std::move(s));
  }

  GdOracle out;
  std::vector<Exponents> leads;
  for (const auto& g : basis) {
    Exponents l = leading(g, n);
    bool redundant = false;
    for (const auto& h : basis)
      if (&h != &g && exp_divides(leading(h, n), l, n) && leading(h, n) != l) redundant = true;
    for (const auto& e : leads)
      if (e == l) redundant = true;
    if (redundant) continue;
    leads.push_back(l);
    out.basis.push_back(g);
  }
  for (auto& g : out.basis) {
    Exponents l = leading(g, n);
    QPoly tail = g;
    tail.erase(l);
    QPoly red = normal_form(tail, out.basis, n);
    red[l] = Rational(1);
    g = red;
  }

  // Enumerate exponents of total degree <= cap.
  std::vector<Exponents> frontier{Exponents{}};
  for (unsigned d = 0; d <= degree_cap; ++d) {
    std::vector<Exponents> next;
    for (const auto& e : frontier) {
      bool standard = true;
      for (const auto& l : leads) standard = standard && !exp_divides(l, e, n);
      if (standard) out.standard.push_back(e);
      for (int i = 0; i < n; ++i) {
        bool last = true;
        for (int j = i + 1; j < n; ++j) last = last && e[j] == 0;
        if (!last) continue;
        Exponents s = e;
        ++s[i];
        next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.standard.begin(), out.standard.end(),
            [n](const Exponents& a, const Exponents& b) { return grevlex_less(a, b, n); });
  return out;
}

#define HOLOCT_INSTANTIATE(K)                                                                                 \
  template class ReductionContext<K>;                                                                         \
  template WeylOperator<K> reduced_form(const WeylOperator<K>&, const ReductionContext<K>&);                 \
  template DivisionCertificate<K> reduced_form_certified(const WeylOperator<K>&, const ReductionContext<K>&); \
  template void add_scaled_certificate(DivisionCertificate<K>&, const DivisionCertificate<K>&,               \
                                       const typename K::Element&);                                         \
  template std::vector<Monomial> eta_candidates(const ReductionContext<K>&, const Monomial&);                \
  template EtaBasis<K> compute_eta_basis(const ReductionContext<K>&, const Monomial&, const EtaOptions&);    \
  template WeylOperator<K> reduce_by_rows(const WeylOperator<K>&, const std::vector<WeylOperator<K>>&);      \
  template WeylOperator<K> reduce_eta(const WeylOperator<K>&, const ReductionContext<K>&, const EtaBasis<K>&); \
  template DivisionCertificate<K> reduce_eta_certified(const WeylOperator<K>&, const ReductionContext<K>&,   \
                                                       const EtaBasis<K>&);
HOLOCT_FOR_EACH_FIELD(HOLOCT_INSTANTIATE)
#undef HOLOCT_INSTANTIATE

}  // namespace holoct
