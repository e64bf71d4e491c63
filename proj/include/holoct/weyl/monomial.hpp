#ifndef HOLOCT_WEYL_MONOMIAL_HPP
#define HOLOCT_WEYL_MONOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace holoct {

inline constexpr int kMaxVars = 8;

using Exponents = std::array<std::uint16_t, kMaxVars>;

// x^x d^d e_component, with component counted from 0. Entries beyond the
// arity of the ambient algebra are zero.
struct Monomial {
  Exponents x{};
  Exponents d{};
  std::uint16_t component = 0;

  bool operator==(const Monomial&) const = default;

  unsigned x_degree() const {
    unsigned s = 0;
    for (auto e : x) s += e;
    return s;
  }
  unsigned d_degree() const {
    unsigned s = 0;
    for (auto e : d) s += e;
    return s;
  }
  unsigned degree() const { return x_degree() + d_degree(); }
  bool has_d() const {
    for (auto e : d)
      if (e != 0) return true;
    return false;
  }
  bool is_one() const { return component == 0 && degree() == 0; }

  // Divisibility of the commutative shadows, same component.
  bool divides(const Monomial& o) const {
    if (component != o.component) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (x[i] > o.x[i] || d[i] > o.d[i]) return false;
    return true;
  }
};

// o / m on shadows; component of the result is 0. Requires m.divides(o).
inline Monomial shadow_quotient(const Monomial& o, const Monomial& m) {
  Monomial q;
  for (int i = 0; i < kMaxVars; ++i) {
    q.x[i] = static_cast<std::uint16_t>(o.x[i] - m.x[i]);
    q.d[i] = static_cast<std::uint16_t>(o.d[i] - m.d[i]);
  }
  return q;
}

// Least common multiple of shadows, keeping a's component.
inline Monomial shadow_lcm(const Monomial& a, const Monomial& b) {
  Monomial l;
  l.component = a.component;
  for (int i = 0; i < kMaxVars; ++i) {
    l.x[i] = a.x[i] > b.x[i] ? a.x[i] : b.x[i];
    l.d[i] = a.d[i] > b.d[i] ? a.d[i] : b.d[i];
  }
  return l;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0xcbf29ce484222325ull ^ m.component;
    for (int i = 0; i < kMaxVars; ++i) {
      h = (h ^ m.x[i]) * 0x100000001b3ull;
      h = (h ^ m.d[i]) * 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace holoct

#endif
