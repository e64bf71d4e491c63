#include "holoct/kregular/kregular.hpp"

#include <functional>
#include <stdexcept>

#include "holoct/groebner/groebner.hpp"

namespace holoct {

namespace {

void add_term(PPoly& p, const Exponents& e, const Rational& c) {
  if (c == 0) return;
  Rational& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

unsigned weight(const Exponents& e, int k) {
  unsigned w = 0;
  for (int i = 0; i < k; ++i) w += static_cast<unsigned>(e[i]) * static_cast<unsigned>(i + 1);
  return w;
}

// Product truncated to weighted degree <= max_weight (weight of p_i is i).
PPoly mul_trunc(const PPoly& a, const PPoly& b, int k, unsigned max_weight) {
  PPoly out;
  for (const auto& [ea, ca] : a) {
    unsigned wa = weight(ea, k);
    for (const auto& [eb, cb] : b) {
      if (wa + weight(eb, k) > max_weight) continue;
      Exponents e{};
      for (int i = 0; i < k; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      add_term(out, e, ca * cb);
    }
  }
  return out;
}

Exponents unit(int i) {
  Exponents e{};
  e[i] = 1;
  return e;
}

// z_r = prod r_i! i^{r_i}.
Integer z_factor(const Exponents& r, int k) {
  Integer z = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 1; j <= r[i]; ++j) z *= Integer(j) * Integer(i + 1);
  return z;
}

WeylOperator<QT> from_poly(const RingPtr<QT>& ring, const PPoly& h) {
  QT k;
  std::vector<Term<QT>> terms;
  for (const auto& [e, c] : h) {
    Monomial m;
    m.x = e;
    terms.push_back({m, k.from_rational(c)});
  }
  return WeylOperator<QT>(ring, std::move(terms));
}

}  // namespace

std::pair<PPoly, PPoly> model_polynomials(int k) {
  if (k < 2) throw std::invalid_argument("model_polynomials: k must be at least 2");
  if (k > kMaxVars) throw std::invalid_argument("model_polynomials: k exceeds the supported arity");
  PPoly f;
  for (int d = 1; d <= k; ++d) {
    Rational sign(d % 2 == 1 ? 1 : -1);
    Exponents sq{};
    sq[d - 1] = 2;
    add_term(f, sq, sign / (2 * d));
    if (2 * d <= k) add_term(f, unit(2 * d - 1), -sign / (2 * d));
  }
  // h_k = sum over partitions of k of p_lambda / z_lambda.
  PPoly g;
  Exponents r{};
  std::function<void(int, int)> partitions = [&](int remaining, int largest) {
    if (remaining == 0) {
      Rational c(1);
      c /= Rational(z_factor(r, k));
      add_term(g, r, c);
      return;
    }
    for (int part = std::min(remaining, largest); part >= 1; --part) {
      ++r[part - 1];
      partitions(remaining - part, part);
      --r[part - 1];
    }
  };
  partitions(k, k);
  return {f, g};
}

PPoly scale_by_index(const PPoly& h, int k) {
  PPoly out;
  for (const auto& [e, c] : h) {
    Rational s = c;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < e[i]; ++j) s *= i + 1;
    add_term(out, e, s);
  }
  return out;
}

PPoly partial_derivative(const PPoly& h, int i) {
  PPoly out;
  for (const auto& [e, c] : h) {
    if (e[i] == 0) continue;
    Exponents s = e;
    --s[i];
    add_term(out, s, c * e[i]);
  }
  return out;
}

ScalarProductInput make_scalar_product_input(int k, PPoly f, PPoly g) {
  return make_scalar_product_input(k, std::move(f), std::move(g), MonomialOrder::block(k));
}

ScalarProductInput make_scalar_product_input(int k, PPoly f, PPoly g, const MonomialOrder& order) {
  if (k < 1 || k > kMaxVars) throw std::invalid_argument("make_scalar_product_input: unsupported k");
  ScalarProductInput in;
  in.k = k;
  in.f = std::move(f);
  in.g = std::move(g);
  in.g_tilde = scale_by_index(in.g, k);
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("p" + std::to_string(i));
  in.ring = make_ring(QT{}, names, 1, order);
  for (int j = 0; j < k; ++j)
    in.u.push_back(from_poly(in.ring, partial_derivative(in.f, j)) - WeylOperator<QT>::var_d(in.ring, j));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!(in.u[i] * in.u[j] == in.u[j] * in.u[i]))
        throw std::invalid_argument("make_scalar_product_input: u_i and u_j do not commute");
  return in;
}

WeylOperator<QT> evaluate_at_u(const ScalarProductInput& in, const PPoly& h) {
  QT field;
  std::vector<std::vector<WeylOperator<QT>>> powers(static_cast<std::size_t>(in.k));
  auto power = [&](int j, unsigned e) -> const WeylOperator<QT>& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(WeylOperator<QT>::one(in.ring));
    while (cache.size() <= e) cache.push_back(cache.back() * in.u[j]);
    return cache[e];
  };
  WeylOperator<QT> out(in.ring);
  for (const auto& [e, c] : h) {
    WeylOperator<QT> term = WeylOperator<QT>::constant(in.ring, field.from_rational(c));
    for (int j = 0; j < in.k; ++j)
      if (e[j] > 0) term = term * power(j, e[j]);
    out += term;
  }
  return out;
}

std::vector<WeylOperator<QT>> build_ideal(const ScalarProductInput& in) {
  QT field;
  auto t = WeylOperator<QT>::constant(in.ring, field.variable());
  std::vector<WeylOperator<QT>> out;
  for (int i = 0; i < in.k; ++i)
    out.push_back(WeylOperator<QT>::var_x(in.ring, i) - t * evaluate_at_u(in, partial_derivative(in.g_tilde, i)));
  return out;
}

WeylOperator<QT> derivation_L(const ScalarProductInput& in) { return evaluate_at_u(in, in.g_tilde); }

DerivedPresentation<QT> scalar_product_presentation(const ScalarProductInput& in) {
  auto G = buchberger(in.ring, build_ideal(in));
  return make_presentation(ReductionContext<QT>(std::move(G)), {{derivation_L(in)}}, WeylOperator<QT>::one(in.ring));
}

DerivedPresentation<QT> kregular_presentation(int k) {
  auto [f, g] = model_polynomials(k);
  return scalar_product_presentation(make_scalar_product_input(k, std::move(f), std::move(g)));
}

std::vector<Rational> scalar_product_series(const PPoly& f, const PPoly& g, int k, int N) {
  if (N < 0) throw std::invalid_argument("scalar_product_series: negative order");
  unsigned gw = 0;
  for (const auto& [e, c] : g) gw = std::max(gw, weight(e, k));
  for (const auto& [e, c] : g)
    if (weight(e, k) != gw) throw std::invalid_argument("scalar_product_series: g must be weighted homogeneous");
  const unsigned max_weight = gw * static_cast<unsigned>(N);

  // e^f truncated by weight; every term of f has positive weight.
  for (const auto& [e, c] : f)
    if (weight(e, k) == 0) throw std::invalid_argument("scalar_product_series: f has a constant term");
  PPoly ef{{Exponents{}, Rational(1)}};
  PPoly power{{Exponents{}, Rational(1)}};
  for (unsigned m = 1; m <= max_weight; ++m) {
    power = mul_trunc(power, f, k, max_weight);
    if (power.empty()) break;
    for (auto& [e, c] : power) c /= m;
    for (const auto& [e, c] : power) add_term(ef, e, c);
  }

  std::vector<Rational> out(static_cast<std::size_t>(N + 1));
  PPoly gn{{Exponents{}, Rational(1)}};
  Integer factorial_n = 1;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      gn = mul_trunc(gn, g, k, max_weight);
      factorial_n *= n;
    }
    Rational s(0);
    for (const auto& [e, c] : gn) {
      auto it = ef.find(e);
      if (it != ef.end()) s += it->second * c * Rational(z_factor(e, k));
    }
    s /= Rational(factorial_n);
    out[static_cast<std::size_t>(n)] = s;
  }
  return out;
}

Integer count_regular_graphs(int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("count_regular_graphs: negative input");
  if ((k * n) % 2 != 0) return 0;
  if (n > 0 && k >= n) return 0;
  if (n > 16) throw std::invalid_argument("count_regular_graphs: n too large for enumeration");
  std::vector<int> residual(static_cast<std::size_t>(n), k);
  Integer total = 0;
  // Vertex v picks its remaining neighbours among later vertices.
  std::function<void(int)> visit = [&](int v) {
    if (v == n) {
      ++total;
      return;
    }
    if (residual[v] == 0) {
      visit(v + 1);
      return;
    }
    int available = 0;
    for (int w = v + 1; w < n; ++w) available += residual[w] > 0;
    if (available < residual[v]) return;
    std::function<void(int, int)> choose = [&](int from, int need) {
      if (need == 0) {
        visit(v + 1);
        return;
      }
      for (int w = from; w < n; ++w) {
        if (residual[w] == 0) continue;
        --residual[w];
        choose(w + 1, need - 1);
        ++residual[w];
      }
    };
    int need = residual[v];
    residual[v] = 0;
    choose(v + 1, need);
    residual[v] = need;
  };
  visit(0);
  return total;
}

bool verify_ode_on_series(const Telescoper<Rationals>& P, const std::vector<Rational>& series, unsigned margin) {
  if (P.coefficients.empty()) throw std::invalid_argument("verify_ode_on_series: empty operator");
  const long T = static_cast<long>(series.size()) - 1;
  const long N = P.order();
  if (T - N + 1 < static_cast<long>(margin))
    throw std::invalid_argument("verify_ode_on_series: series too short for the operator order");
  std::vector<Rational> deriv = series;
  std::vector<Rational> result(static_cast<std::size_t>(T - N + 1));
  for (long i = 0; i <= N; ++i) {
    if (i > 0) {
      // deriv <- d/dt deriv; its last entry is no longer determined.
      for (std::size_t m = 0; m + 1 < deriv.size(); ++m) deriv[m] = deriv[m + 1] * static_cast<long>(m + 1);
      deriv.pop_back();
    }
    const auto& c = P.coefficients[static_cast<std::size_t>(i)];
    for (std::size_t e = 0; e < c.size(); ++e) {
      if (c[e] == 0) continue;
      for (std::size_t m = e; m < result.size(); ++m) result[m] += c[e] * deriv[m - e];
    }
  }
  for (const auto& r : result)
    if (r != 0) return false;
  return true;
}

}  // namespace holoct
