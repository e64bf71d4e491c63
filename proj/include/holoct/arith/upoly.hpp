#ifndef HOLOCT_ARITH_UPOLY_HPP
#define HOLOCT_ARITH_UPOLY_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Dense univariate polynomials in t, stored as coefficient vectors with the
// constant term first. The zero polynomial is the empty vector.
namespace holoct::upoly {

template <class F>
using Poly = std::vector<typename F::Element>;

template <class F>
void trim(const F& k, Poly<F>& a) {
  while (!a.empty() && k.is_zero(a.back())) a.pop_back();
}

template <class F>
int degree(const Poly<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Poly<F> constant(const F& k, const typename F::Element& c) {
  if (k.is_zero(c)) return {};
  return {c};
}

template <class F>
bool is_one(const F& k, const Poly<F>& a) {
  return a.size() == 1 && k.is_one(a[0]);
}

template <class F>
bool equal(const F& k, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!k.equal(a[i], b[i])) return false;
  return true;
}

template <class F>
Poly<F> add(const F& k, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r = a.size() >= b.size() ? a : b;
  const Poly<F>& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) k.add_to(r[i], s[i]);
  trim(k, r);
  return r;
}

template <class F>
Poly<F> neg(const F& k, const Poly<F>& a) {
  Poly<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.neg(a[i]);
  return r;
}

template <class F>
Poly<F> sub(const F& k, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r = a;
  if (r.size() < b.size()) r.resize(b.size(), k.zero());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = k.sub(r[i], b[i]);
  trim(k, r);
  return r;
}

template <class F>
Poly<F> scale(const F& k, const Poly<F>& a, const typename F::Element& c) {
  if (k.is_zero(c)) return {};
  Poly<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], c);
  return r;
}

template <class F>
Poly<F> mul(const F& k, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (k.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) k.add_to(r[i + j], k.mul(a[i], b[j]));
  }
  trim(k, r);
  return r;
}

// Returns (q, r) with a = q*b + r and deg r < deg b.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& k, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Poly<F> r = a;
  if (a.size() < b.size()) return {{}, r};
  Poly<F> q(a.size() - b.size() + 1, k.zero());
  auto inv_lc = k.inv(b.back());
  bool monic = k.is_one(b.back());
  for (std::size_t i = q.size(); i-- > 0;) {
    auto& top = r[i + b.size() - 1];
    if (k.is_zero(top)) continue;
    auto c = monic ? top : k.mul(top, inv_lc);
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) k.sub_mul_to(r[i + j], c, b[j]);
  }
  trim(k, r);
  trim(k, q);
  return {std::move(q), std::move(r)};
}

template <class F>
Poly<F> exact_quotient(const F& k, const Poly<F>& a, const Poly<F>& b) {
  return divmod(k, a, b).first;
}

template <class F>
Poly<F> make_monic(const F& k, const Poly<F>& a) {
  if (a.empty() || k.is_one(a.back())) return a;
  return scale(k, a, k.inv(a.back()));
}

template <class F>
Poly<F> gcd(const F& k, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    auto r = divmod(k, a, b).second;
    a = std::move(b);
    b = make_monic(k, r);
  }
  return make_monic(k, a);
}

template <class F>
Poly<F> derivative(const F& k, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = k.mul(a[i], k.from_int(static_cast<long>(i)));
  trim(k, r);
  return r;
}

template <class F>
typename F::Element evaluate(const F& k, const Poly<F>& a, const typename F::Element& x) {
  auto r = k.zero();
  for (std::size_t i = a.size(); i-- > 0;) r = k.add(k.mul(r, x), a[i]);
  return r;
}

template <class F>
Poly<F> power_of_t(const F& k, std::size_t e) {
  Poly<F> r(e + 1, k.zero());
  r[e] = k.one();
  return r;
}

// Prints in descending powers of the given variable, e.g. "3*t^2 - t + 1".
template <class F>
std::string format(const F& k, const Poly<F>& a, const std::string& var = "t") {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (k.is_zero(a[i])) continue;
    auto c = a[i];
    bool negative = k.is_negative(c);
    if (negative) c = k.neg(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty())
      out += k.format(c);
    else if (k.is_one(c))
      out += mono;
    else
      out += k.format(c) + "*" + mono;
  }
  return out;
}

}  // namespace holoct::upoly

#endif
