#include "holoct/extension/extension.hpp"

#include <stdexcept>

namespace holoct {

namespace {

WeylOperator<QT> dt_power(const RingPtr<QT>& ring, unsigned k, int component) {
  Monomial m;
  m.d[0] = static_cast<std::uint16_t>(k);
  m.component = static_cast<std::uint16_t>(component);
  return WeylOperator<QT>::monomial(ring, m, ring->field().one());
}

}  // namespace

unsigned index(const WeylOperator<QT>& a) {
  unsigned k = 0;
  for (const auto& t : a.terms()) k = std::max<unsigned>(k, t.m.d[0]);
  return k;
}

unsigned index_mod(const WeylOperator<QT>& a, const GroebnerBasis<QT>& G) { return index(lrem(a, G)); }

unsigned compute_ell(const GroebnerBasis<QT>& G, unsigned ceiling) {
  const auto& ring = G.ring();
  if (!ring->twisted() || !G.order().dt_elimination())
    throw std::invalid_argument("compute_ell: needs a twisted ring under a d_t-eliminating order");
  for (unsigned ell = 0; ell <= ceiling; ++ell) {
    bool ok = true;
    for (int i = 0; i < ring->rank() && ok; ++i) ok = index_mod(dt_power(ring, ell + 1, i), G) <= ell;
    if (ok) return ell;
  }
  throw BudgetExhausted("compute_ell: ceiling reached, the module is likely not holonomic");
}

WeylOperator<QT> flatten(const WeylOperator<QT>& a, const RingPtr<QT>& target, int s) {
  std::vector<Term<QT>> out;
  for (const auto& t : a.terms()) {
    Monomial m;
    for (int v = 1; v < a.ring()->arity(); ++v) {
      m.x[v - 1] = t.m.x[v];
      m.d[v - 1] = t.m.d[v];
    }
    int comp = t.m.d[0] * s + t.m.component;
    if (comp >= target->rank()) throw std::invalid_argument("flatten: index exceeds the target rank");
    m.component = static_cast<std::uint16_t>(comp);
    out.push_back({m, t.c});
  }
  return WeylOperator<QT>(target, std::move(out));
}

ExtensionResult build_extension(const ParametricPresentation& p, unsigned ceiling) {
  return build_extension(p, MonomialOrder::block(p.ring->arity() - 1), ceiling);
}

ExtensionResult build_extension(const ParametricPresentation& p, const MonomialOrder& target_order, unsigned ceiling) {
  if (!p.ring || !p.ring->twisted()) throw std::invalid_argument("build_extension: needs a twisted ring");
  if (!p.ring->order().dt_elimination()) throw std::invalid_argument("build_extension: order must eliminate d_t");
  if (target_order.arity() != p.ring->arity() - 1)
    throw std::invalid_argument("build_extension: target order arity mismatch");
  ExtensionResult res;
  res.G = buchberger(p.ring, p.J_generators);
  res.ell = compute_ell(res.G, ceiling);
  const int s = p.ring->rank();
  res.r = static_cast<int>(res.ell + 1) * s;
  std::vector<std::string> names(p.ring->names().begin() + 1, p.ring->names().end());
  res.target = make_ring(p.ring->field(), names, res.r, target_order);

  for (const auto& g : res.G.generators()) {
    const unsigned ind = index(g);
    for (unsigned k = 0; k + ind <= res.ell; ++k) {
      auto shifted = mul(dt_power(p.ring->with_rank(1), k, 0), g);
      res.S_generators.push_back(flatten(shifted, res.target, s));
    }
  }
  auto scalar = res.target->with_rank(1);
  res.L_matrix.assign(static_cast<std::size_t>(res.r), {});
  for (unsigned h = 0; h <= res.ell; ++h)
    for (int i = 0; i < s; ++i) {
      auto image = flatten(lrem(dt_power(p.ring, h + 1, i), res.G), res.target, s);
      std::vector<std::vector<Term<QT>>> cols(static_cast<std::size_t>(res.r));
      for (auto t : image.terms()) {
        int c = t.m.component;
        t.m.component = 0;
        cols[c].push_back(std::move(t));
      }
      auto& row = res.L_matrix[h * s + i];
      for (auto& c : cols) row.emplace_back(scalar, std::move(c));
    }
  return res;
}

DerivedPresentation<QT> derived_presentation(const ExtensionResult& ext) {
  auto G = buchberger(ext.target, ext.S_generators);
  return make_presentation(ReductionContext<QT>(std::move(G)), ext.L_matrix, WeylOperator<QT>::basis(ext.target, 0));
}

}  // namespace holoct
