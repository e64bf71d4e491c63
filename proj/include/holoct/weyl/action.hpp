#ifndef HOLOCT_WEYL_ACTION_HPP
#define HOLOCT_WEYL_ACTION_HPP

#include <map>
#include <stdexcept>

#include "holoct/weyl/operator.hpp"

namespace holoct {

// Commutative polynomial in x_1..x_n: exponent vector -> nonzero coefficient.
template <class K>
using CommPoly = std::map<Exponents, typename K::Element>;

// P applied to q with x_i acting by multiplication and d_i = d/dx_i.
template <class K>
CommPoly<K> apply_to_polynomial(const WeylOperator<K>& p, const CommPoly<K>& q) {
  if (p.ring()->rank() != 1 || p.ring()->twisted())
    throw std::invalid_argument("apply_to_polynomial: needs an untwisted scalar operator");
  const K& k = p.field();
  const int n = p.ring()->arity();
  CommPoly<K> out;
  for (const auto& t : p.terms()) {
    for (const auto& [e, c] : q) {
      Exponents r{};
      long factor = 1;
      bool vanish = false;
      for (int i = 0; i < n && !vanish; ++i) {
        if (t.m.d[i] > e[i]) {
          vanish = true;
          break;
        }
        for (int j = 0; j < t.m.d[i]; ++j) factor = detail::checked_product(factor, e[i] - j);
        r[i] = static_cast<std::uint16_t>(e[i] - t.m.d[i] + t.m.x[i]);
      }
      if (vanish) continue;
      auto v = k.mul(t.c, k.mul(k.from_int(factor), c));
      auto it = out.find(r);
      if (it == out.end()) {
        if (!k.is_zero(v)) out.emplace(r, std::move(v));
      } else {
        k.add_to(it->second, v);
        if (k.is_zero(it->second)) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace holoct

#endif
