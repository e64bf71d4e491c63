#include "holoct/telescoping/telescoping.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "holoct/arith/reconstruct.hpp"
#include "holoct/field_list.hpp"
#include "holoct/weyl/evaluate.hpp"

namespace holoct {

namespace {

template <class K>
struct OrderLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->less(a, b); }
};

template <class K>
std::unordered_map<Monomial, std::size_t, MonomialHash> index_of(const std::vector<Monomial>& B) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> idx;
  for (std::size_t i = 0; i < B.size(); ++i) idx.emplace(B[i], i);
  return idx;
}

}  // namespace

template <class K>
DerivedPresentation<K> make_presentation(ReductionContext<K> ctx, std::vector<std::vector<WeylOperator<K>>> L,
                                         WeylOperator<K> f, bool check_stability) {
  const int r = ctx.ring()->rank();
  if (static_cast<int>(L.size()) != r) throw std::invalid_argument("make_presentation: L must be r x r");
  const auto& scalar = ctx.basis().scalar_ring();
  for (auto& row : L) {
    if (static_cast<int>(row.size()) != r) throw std::invalid_argument("make_presentation: L must be r x r");
    for (auto& e : row) {
      if (!e.ring()) {
        e = WeylOperator<K>(scalar);
        continue;
      }
      if (e.ring()->rank() != 1 || !e.ring()->compatible(*scalar))
        throw std::invalid_argument("make_presentation: L entries must be scalar operators of the same algebra");
      e = e.in_ring(scalar);
    }
  }
  if (!f.ring()) f = WeylOperator<K>(ctx.ring());
  if (!(*f.ring() == *ctx.ring())) throw std::invalid_argument("make_presentation: f lives in another algebra");
  DerivedPresentation<K> pres{std::move(ctx), std::move(L), std::move(f)};
  if (check_stability && !is_stable(pres))
    throw std::invalid_argument("make_presentation: S is not stable under d/dt + L");
  return pres;
}

template <class K>
WeylOperator<K> apply_L(const DerivedPresentation<K>& pres, const WeylOperator<K>& a) {
  const auto& ring = pres.ctx.ring();
  const auto& scalar = pres.ctx.basis().scalar_ring();
  const int r = ring->rank();
  std::vector<std::vector<Term<K>>> parts(static_cast<std::size_t>(r));
  for (const auto& t : a.terms()) {
    Monomial m = t.m;
    m.component = 0;
    parts[t.m.component].push_back({m, t.c});
  }
  std::vector<Term<K>> out;
  for (int j = 0; j < r; ++j) {
    if (parts[j].empty()) continue;
    WeylOperator<K> aj(scalar, std::move(parts[j]));
    for (int k = 0; k < r; ++k) {
      const auto& lam = pres.L[j][k];
      if (lam.is_zero()) continue;
      auto prod = mul(aj, lam);
      for (auto t : prod.terms()) {
        t.m.component = static_cast<std::uint16_t>(k);
        out.push_back(std::move(t));
      }
    }
  }
  return WeylOperator<K>(ring, std::move(out));
}

template <class K>
bool is_stable(const DerivedPresentation<K>& pres) {
  if constexpr (!K::kHasParameter) {
    return true;
  } else {
    for (const auto& g : pres.ctx.basis().generators())
      if (!lrem(coefficientwise_dt(g) + apply_L(pres, g), pres.ctx.basis()).is_zero()) return false;
    return true;
  }
}

template <class K>
CoefficientVector<K> to_vector(const WeylOperator<K>& a, const std::vector<Monomial>& B) {
  const K& k = a.field();
  CoefficientVector<K> v(B.size(), k.zero());
  auto idx = index_of<K>(B);
  for (const auto& t : a.terms()) {
    auto it = idx.find(t.m);
    if (it == idx.end()) throw UnluckyPoint("support leaves the confinement set");
    v[it->second] = t.c;
  }
  return v;
}

template <class K>
WeylOperator<K> from_vector(const RingPtr<K>& ring, const CoefficientVector<K>& v, const std::vector<Monomial>& B) {
  if (v.size() != B.size()) throw std::invalid_argument("from_vector: length mismatch");
  std::vector<Term<K>> terms;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (!ring->field().is_zero(v[i])) terms.push_back({B[i], v[i]});
  return WeylOperator<K>(ring, std::move(terms));
}

template <class K>
Confinement<K> confine(const DerivedPresentation<K>& pres, unsigned rho, const ConfineOptions& opts) {
  const auto& ctx = pres.ctx;
  const auto& ring = ctx.ring();
  OrderLess<K> less{&ctx.order()};
  std::vector<unsigned> trace;
  for (unsigned s = rho;;) {
    if (s > opts.degree_ceiling) throw BudgetExhausted("confine: degree ceiling reached");
    trace.push_back(s);
    // Without variables every monomial has degree 0.
    Monomial eta = ctx.order().largest_of_degree(ring->arity() == 0 ? 0 : s, ring->rank());
    EtaOptions eo;
    eo.replay = opts.replay;
    eo.certificates = opts.certificates;
    EtaBasis<K> eb = compute_eta_basis(ctx, eta, eo);

    std::set<Monomial, OrderLess<K>> Q(less), B(less);
    auto rf = reduce_eta(pres.f, ctx, eb);
    for (const auto& t : rf.terms()) Q.insert(t.m);
    std::map<Monomial, WeylOperator<K>, OrderLess<K>> memo(less);
    bool restart = false;
    for (;;) {
      auto it = std::find_if(Q.begin(), Q.end(), [&](const Monomial& m) { return !B.count(m); });
      if (it == Q.end()) break;
      Monomial m = *it;
      if (m.degree() + rho > s) {
        restart = true;
        break;
      }
      auto img = reduce_eta(apply_L(pres, WeylOperator<K>::monomial(ring, m, ring->field().one())), ctx, eb);
      for (const auto& t : img.terms()) Q.insert(t.m);
      B.insert(m);
      memo.emplace(m, std::move(img));
    }
    if (restart) {
      ++s;
      continue;
    }
    std::vector<Monomial> basis(B.begin(), B.end());
    Confinement<K> conf = confinement_images(pres, std::move(eb), basis, rho);
    conf.trace = std::move(trace);
    return conf;
  }
}

template <class K>
Confinement<K> confinement_images(const DerivedPresentation<K>& pres, EtaBasis<K> eta_basis,
                                  const std::vector<Monomial>& B, unsigned rho) {
  const auto& ctx = pres.ctx;
  const auto& ring = ctx.ring();
  Confinement<K> conf;
  conf.eta = eta_basis.eta;
  conf.B = B;
  conf.rho = rho;
  conf.g0 = to_vector(reduce_eta(pres.f, ctx, eta_basis), B);
  for (const auto& m : B)
    conf.reduced_L.push_back(
        to_vector(reduce_eta(apply_L(pres, WeylOperator<K>::monomial(ring, m, ring->field().one())), ctx, eta_basis),
                  B));
  conf.eta_basis = std::move(eta_basis);
  return conf;
}

template <class K>
CoefficientVector<K> derivative_sequence_step(const CoefficientVector<K>& g, const Confinement<K>& conf,
                                              const K& field) {
  const std::size_t n = conf.B.size();
  if (g.size() != n || conf.reduced_L.size() != n) throw std::invalid_argument("derivative_sequence_step: index mismatch");
  CoefficientVector<K> out(n, field.zero());
  for (std::size_t i = 0; i < n; ++i) out[i] = field.derivative(g[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (field.is_zero(g[i])) continue;
    const auto& row = conf.reduced_L[i];
    for (std::size_t j = 0; j < n; ++j)
      if (!field.is_zero(row[j])) out[j] = field.add(out[j], field.mul(g[i], row[j]));
  }
  return out;
}

template <class Base>
void RelationSearch<Base>::strip(std::vector<Poly>& values, std::vector<Poly>& combination) const {
  const Base& k = field_.base();
  Poly g;
  for (const auto* part : {&values, &combination})
    for (const auto& p : *part) {
      if (p.empty()) continue;
      g = g.empty() ? upoly::make_monic(k, p) : upoly::gcd(k, g, p);
      if (upoly::is_one(k, g)) break;
    }
  if (g.empty()) return;
  const bool divide = g.size() > 1;
  // Scale so the first nonzero entry has leading coefficient one.
  const Poly* first = nullptr;
  for (const auto* part : {&values, &combination}) {
    for (const auto& p : *part)
      if (!p.empty()) {
        first = &p;
        break;
      }
    if (first) break;
  }
  auto lead = first->back();
  if (divide) {
    auto lg = g.back();
    lead = k.div(lead, lg);
  }
  auto s = k.inv(lead);
  for (auto* part : {&values, &combination})
    for (auto& p : *part) {
      if (p.empty()) continue;
      if (divide) p = upoly::exact_quotient(k, p, g);
      p = upoly::scale(k, p, s);
    }
}

template <class Base>
std::optional<std::vector<upoly::Poly<Base>>> RelationSearch<Base>::add(const CoefficientVector<Field>& v) {
  const Base& k = field_.base();
  if (v.size() != length_) throw std::invalid_argument("relation_search: vectors must share the index set");
  const std::size_t idx = added_++;
  // Clear denominators: values = d * v.
  Poly d = upoly::constant(k, k.one());
  for (const auto& e : v) {
    if (e.den.size() <= 1) continue;
    Poly g = upoly::gcd(k, d, e.den);
    d = upoly::mul(k, d, upoly::exact_quotient(k, e.den, g));
  }
  std::vector<Poly> values(length_);
  for (std::size_t i = 0; i < length_; ++i)
    if (!v[i].num.empty()) values[i] = upoly::mul(k, v[i].num, upoly::exact_quotient(k, d, v[i].den));
  std::vector<Poly> combination(idx + 1);
  combination[idx] = d;
  for (const auto& row : rows_) {
    const Poly& b = values[row.pivot];
    if (b.empty()) continue;
    const Poly a = row.values[row.pivot];
    const Poly bb = b;
    for (std::size_t i = 0; i < length_; ++i)
      values[i] = upoly::sub(k, upoly::mul(k, a, values[i]), upoly::mul(k, bb, row.values[i]));
    for (std::size_t i = 0; i <= idx; ++i) {
      Poly other = i < row.combination.size() ? row.combination[i] : Poly{};
      combination[i] = upoly::sub(k, upoly::mul(k, a, combination[i]), upoly::mul(k, bb, other));
    }
    strip(values, combination);
  }
  std::size_t pivot = length_;
  for (std::size_t i = 0; i < length_; ++i)
    if (!values[i].empty()) {
      pivot = i;
      break;
    }
  if (pivot == length_) return combination;
  strip(values, combination);
  rows_.push_back({std::move(values), std::move(combination), pivot});
  return std::nullopt;
}

template <class Base>
std::optional<std::vector<upoly::Poly<Base>>> relation_search(
    const RationalFunctions<Base>& field, const std::vector<CoefficientVector<RationalFunctions<Base>>>& vectors) {
  if (vectors.empty()) return std::nullopt;
  RelationSearch<Base> rs(field, vectors.front().size());
  for (const auto& v : vectors)
    if (auto rel = rs.add(v)) return rel;
  return std::nullopt;
}

Telescoper<Rationals> normalize_telescoper(std::vector<upoly::Poly<Rationals>> c) {
  Rationals q;
  for (auto& p : c) upoly::trim(q, p);
  while (!c.empty() && c.back().empty()) c.pop_back();
  if (c.empty()) throw std::invalid_argument("normalize_telescoper: zero operator");
  upoly::Poly<Rationals> g;
  for (const auto& p : c)
    if (!p.empty()) g = g.empty() ? upoly::make_monic(q, p) : upoly::gcd(q, g, p);
  if (g.size() > 1)
    for (auto& p : c)
      if (!p.empty()) p = upoly::exact_quotient(q, p, g);
  Integer den = 1, num = 0;
  for (const auto& p : c)
    for (const auto& a : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
  for (const auto& p : c)
    for (const auto& a : p) {
      Integer v = a.get_num() * (den / a.get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
  Rational scale(den, num);
  scale.canonicalize();
  if (c.back().back() < 0) scale = -scale;
  for (auto& p : c)
    for (auto& a : p) a *= scale;
  return {std::move(c)};
}

Telescoper<PrimeField> normalize_telescoper(const PrimeField& k, std::vector<upoly::Poly<PrimeField>> c) {
  for (auto& p : c) upoly::trim(k, p);
  while (!c.empty() && c.back().empty()) c.pop_back();
  if (c.empty()) throw std::invalid_argument("normalize_telescoper: zero operator");
  upoly::Poly<PrimeField> g;
  for (const auto& p : c)
    if (!p.empty()) g = g.empty() ? upoly::make_monic(k, p) : upoly::gcd(k, g, p);
  auto s = k.inv(c.back().back());
  if (g.size() > 1) s = k.mul(s, g.back());
  for (auto& p : c) {
    if (p.empty()) continue;
    if (g.size() > 1) p = upoly::exact_quotient(k, p, g);
    p = upoly::scale(k, p, s);
  }
  return {std::move(c)};
}

std::string format_telescoper(const Telescoper<Rationals>& P) {
  Rationals q;
  std::string out;
  for (int i = P.order(); i >= 0; --i) {
    const auto& c = P.coefficients[static_cast<std::size_t>(i)];
    if (c.empty()) continue;
    std::string body = upoly::format(q, c);
    std::string dt = i == 0 ? "" : (i == 1 ? "dt" : "dt^" + std::to_string(i));
    std::string term;
    if (dt.empty())
      term = body;
    else if (upoly::is_one(q, c))
      term = dt;
    else if (c.size() == 1)
      term = body + "*" + dt;
    else
      term = "(" + body + ")*" + dt;
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<std::vector<std::string>> telescoper_arrays(const Telescoper<Rationals>& P) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : P.coefficients) {
    std::vector<std::string> row;
    for (const auto& a : c) row.push_back(a.get_str());
    out.push_back(std::move(row));
  }
  return out;
}

TelescopeResult telescope_direct(const DerivedPresentation<QT>& pres, unsigned rho, const DirectOptions& opts) {
  ConfineOptions co;
  co.degree_ceiling = opts.degree_ceiling;
  co.certificates = opts.certificates;
  TelescopeResult res;
  res.confinement = confine(pres, rho, co);
  const QT& field = pres.ctx.field();
  RelationSearch<Rationals> rs(field, res.confinement.B.size());
  CoefficientVector<QT> g = res.confinement.g0;
  for (std::size_t n = 0; n <= opts.max_order; ++n) {
    res.sequence.push_back(g);
    if (auto rel = rs.add(g)) {
      res.telescoper = normalize_telescoper(std::move(*rel));
      return res;
    }
    g = derivative_sequence_step(g, res.confinement, field);
  }
  throw BudgetExhausted("telescope_direct: order bound reached");
}

bool verify_telescoper_certificate(const DerivedPresentation<QT>& pres, const TelescopeResult& result) {
  const auto& ctx = pres.ctx;
  const auto& conf = result.confinement;
  const auto& ring = ctx.ring();
  const QT& field = ctx.field();
  const auto& gens = ctx.basis().generators();
  const auto& P = result.telescoper;
  if (result.sequence.size() != P.coefficients.size()) return false;
  std::vector<WeylOperator<QT>> g;
  for (const auto& v : result.sequence) g.push_back(from_vector(ring, v, conf.B));

  auto check = [&](const WeylOperator<QT>& a, const WeylOperator<QT>& expected) {
    auto cert = reduce_eta_certified(a, ctx, conf.eta_basis);
    return verify_certificate(a, cert, gens) && cert.remainder == expected;
  };
  if (!check(pres.f, g[0])) return false;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (!check(coefficientwise_dt(g[i]) + apply_L(pres, g[i]), g[i + 1])) return false;
  WeylOperator<QT> sum(ring);
  for (std::size_t i = 0; i < g.size(); ++i) {
    upoly::Poly<Rationals> c = P.coefficients[i];
    if (c.empty()) continue;
    sum += g[i].scaled(field.from_poly(std::move(c)));
  }
  return sum.is_zero();
}

DerivedPresentation<PrimeField> evaluate_presentation(const DerivedPresentation<QT>& pres, std::uint32_t p,
                                                      std::uint32_t a) {
  PrimeField fp(p);
  const auto& G = pres.ctx.basis();
  auto ring = G.ring()->with_field(fp);
  std::vector<WeylOperator<PrimeField>> gens;
  for (const auto& g : G.generators()) {
    auto image = evaluate_and_reduce(g, ring, a);
    if (image.is_zero() || !(image.lm() == g.lm())) throw UnluckyPoint("leading coefficient vanishes at the point");
    gens.push_back(std::move(image));
  }
  auto Gp = buchberger(ring, gens);
  if (Gp.size() != G.size()) throw UnluckyPoint("Groebner basis changes shape at the point");
  for (std::size_t i = 0; i < G.size(); ++i)
    if (!(Gp.generators()[i].lm() == G.generators()[i].lm()))
      throw UnluckyPoint("Groebner basis changes shape at the point");
  std::vector<std::vector<WeylOperator<PrimeField>>> L;
  for (const auto& row : pres.L) {
    L.emplace_back();
    for (const auto& e : row) L.back().push_back(evaluate_and_reduce(e, Gp.scalar_ring(), a));
  }
  auto f = evaluate_and_reduce(pres.f, ring, a);
  return DerivedPresentation<PrimeField>{ReductionContext<PrimeField>(std::move(Gp)), std::move(L), std::move(f)};
}

namespace {

struct Shape {
  Monomial eta;
  std::vector<Monomial> B;
  EtaTracer tracer;
  bool operator==(const Shape&) const = default;
};

// Runs fn(i) for i in [0, n) on up to `workers` threads; rethrows the first
// exception in index order.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto body = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, n); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string monomials_text(const std::vector<Monomial>& B, const WeylRing<QT>& ring) {
  std::string s = "{";
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (i) s += ", ";
    std::ostringstream os;
    bool first = true;
    for (int v = 0; v < ring.arity(); ++v) {
      for (auto [e, name] : {std::pair{B[i].x[v], ring.names()[v]}, std::pair{B[i].d[v], "d" + ring.names()[v]}}) {
        if (e == 0) continue;
        if (!first) os << "*";
        os << name;
        if (e > 1) os << "^" << e;
        first = false;
      }
    }
    if (first) os << "1";
    if (ring.rank() > 1) os << "*e" << B[i].component + 1;
    s += os.str();
  }
  return s + "}";
}

void corrupt(EtaTracer& tracer) {
  // Claim that the first active candidate was idle, or invent a candidate.
  for (const auto& c : tracer.candidates)
    if (std::find(tracer.idle.begin(), tracer.idle.end(), c) == tracer.idle.end()) {
      tracer.idle.push_back(c);
      return;
    }
  Monomial bogus;
  bogus.d[0] = 1;
  tracer.candidates.push_back(bogus);
}

std::vector<int> shape_key(const Telescoper<PrimeField>& P) {
  std::vector<int> key;
  for (const auto& c : P.coefficients) key.push_back(upoly::degree<PrimeField>(c));
  return key;
}

// Rational reconstruction of every coefficient from CRT images.
std::optional<Telescoper<Rationals>> lift(const std::vector<std::pair<std::uint32_t, Telescoper<PrimeField>>>& images) {
  const auto& first = images.front().second;
  Telescoper<Rationals> out;
  for (std::size_t i = 0; i < first.coefficients.size(); ++i) {
    upoly::Poly<Rationals> c(first.coefficients[i].size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      std::vector<Residue> rs;
      for (const auto& [p, P] : images) rs.push_back({Integer(P.coefficients[i][j]), Integer(p)});
      Residue r = crt_combine(rs);
      auto q = rational_reconstruct(r.value, r.modulus);
      if (!q) return std::nullopt;
      c[j] = *q;
    }
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

bool reduces_to(const Telescoper<Rationals>& P, std::uint32_t p, const Telescoper<PrimeField>& image) {
  PrimeField fp(p);
  if (P.coefficients.size() != image.coefficients.size()) return false;
  for (std::size_t i = 0; i < P.coefficients.size(); ++i) {
    const auto& c = P.coefficients[i];
    upoly::Poly<PrimeField> r(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (mpz_divisible_ui_p(c[j].get_den_mpz_t(), p)) return false;
      r[j] = fp.from_rational(c[j]);
    }
    upoly::trim(fp, r);
    if (r != image.coefficients[i]) return false;
  }
  return true;
}

}  // namespace

ModularReport telescope_modular(const DerivedPresentation<QT>& pres, const ModularOptions& opts) {
  Rng rng(opts.seed);
  ModularReport report;
  auto log = [&](const std::string& s) { report.transcript.push_back(s); };
  std::set<std::uint32_t> used_primes;
  auto next_prime = [&] {
    for (;;) {
      std::uint32_t p = random_prime(rng);
      if (used_primes.insert(p).second) return p;
    }
  };
  const WeylRing<QT>& qring = *pres.ctx.ring();

  // The first images fix eta, B and the tracer by majority.
  std::vector<Shape> votes;
  std::optional<Shape> fixed;
  for (int attempt = 0; attempt < 12 && !fixed; ++attempt) {
    std::uint32_t p = next_prime();
    std::uint32_t a = static_cast<std::uint32_t>(rng.below(1, p));
    try {
      auto pp = evaluate_presentation(pres, p, a);
      ConfineOptions co;
      co.degree_ceiling = opts.degree_ceiling;
      auto conf = confine(pp, opts.rho, co);
      Shape s{conf.eta, conf.B, conf.eta_basis.tracer};
      if (static_cast<int>(votes.size()) == opts.faults.corrupt_tracer) corrupt(s.tracer);
      log("tracer vote p=" + std::to_string(p) + " a=" + std::to_string(a) + " |B|=" + std::to_string(s.B.size()) +
          " candidates=" + std::to_string(s.tracer.candidates.size()) + " idle=" + std::to_string(s.tracer.idle.size()));
      votes.push_back(std::move(s));
    } catch (const UnluckyPoint& e) {
      ++report.discarded_points;
      log(std::string("unlucky tracer point: ") + e.what());
      continue;
    }
    if (votes.size() < 3) continue;
    for (const auto& v : votes)
      if (2 * static_cast<std::size_t>(std::count(votes.begin(), votes.end(), v)) > votes.size()) {
        fixed = v;
        break;
      }
  }
  if (!fixed) throw Inconsistency("telescope_modular: no majority among tracers");
  report.eta = fixed->eta;
  report.B = fixed->B;
  log("fixed B=" + monomials_text(fixed->B, qring));

  const std::size_t nb = fixed->B.size();
  if (nb == 0) {
    report.telescoper = normalize_telescoper(std::vector<upoly::Poly<Rationals>>{{Rational(1)}});
    log("integrand reduces to zero");
    return report;
  }

  std::vector<std::pair<std::uint32_t, Telescoper<PrimeField>>> images;
  std::map<std::vector<int>, std::size_t> shape_votes;
  std::optional<Telescoper<Rationals>> candidate;
  std::size_t global_sample = 0;
  for (std::size_t round = 0; round < opts.max_primes; ++round) {
    const std::uint32_t p = next_prime();
    PrimeField fp(p);
    FpT fpt(fp);
    std::set<std::uint32_t> used_points;
    const std::size_t entries = nb + nb * nb;

    BatchSampler sampler = [&](std::size_t count) {
      std::vector<Sample> out;
      while (out.size() < count) {
        if (report.points_used >= opts.point_budget) throw BudgetExhausted("telescope_modular: point budget exhausted");
        std::size_t want = count - out.size();
        std::vector<std::uint32_t> pts;
        while (pts.size() < want) {
          auto a = static_cast<std::uint32_t>(rng.below(1, p));
          if (used_points.insert(a).second) pts.push_back(a);
        }
        std::vector<std::optional<Sample>> results(pts.size());
        parallel_for(pts.size(), opts.workers, [&](std::size_t i) {
          try {
            auto pp = evaluate_presentation(pres, p, pts[i]);
            EtaOptions eo;
            eo.replay = &fixed->tracer;
            auto eb = compute_eta_basis(pp.ctx, fixed->eta, eo);
            auto conf = confinement_images(pp, std::move(eb), fixed->B, opts.rho);
            Sample s{pts[i], {}};
            s.values.reserve(entries);
            for (auto v : conf.g0) s.values.push_back(v);
            for (const auto& row : conf.reduced_L)
              for (auto v : row) s.values.push_back(v);
            results[i] = std::move(s);
          } catch (const UnluckyPoint&) {
          }
        });
        for (auto& r : results) {
          ++report.points_used;
          if (!r) {
            ++report.discarded_points;
            continue;
          }
          if (global_sample++ == opts.faults.corrupt_sample) r->values[0] = fp.add(r->values[0], 1);
          out.push_back(std::move(*r));
        }
      }
      return out;
    };

    AdaptiveOptions ao;
    ao.max_points = opts.point_budget;
    AdaptiveResult ar = adaptive_reconstruct(fp, entries, sampler, ao);
    Confinement<FpT> conf;
    conf.B = fixed->B;
    conf.eta = fixed->eta;
    conf.rho = opts.rho;
    conf.g0.assign(ar.functions.begin(), ar.functions.begin() + static_cast<std::ptrdiff_t>(nb));
    for (std::size_t i = 0; i < nb; ++i)
      conf.reduced_L.emplace_back(ar.functions.begin() + static_cast<std::ptrdiff_t>(nb + i * nb),
                                  ar.functions.begin() + static_cast<std::ptrdiff_t>(nb + (i + 1) * nb));

    RelationSearch<PrimeField> rs(fpt, nb);
    CoefficientVector<FpT> g = conf.g0;
    std::optional<std::vector<upoly::Poly<PrimeField>>> rel;
    for (std::size_t n = 0; n <= nb && !rel; ++n) {
      rel = rs.add(g);
      if (!rel) g = derivative_sequence_step(g, conf, fpt);
    }
    if (!rel) throw Inconsistency("telescope_modular: no relation within the confinement dimension");
    auto image = normalize_telescoper(fp, std::move(*rel));
    ++report.primes_used;
    log("prime " + std::to_string(p) + ": order " + std::to_string(image.order()) + ", degree " +
        std::to_string(image.degree()) + ", points " + std::to_string(ar.points_used) + ", entry degrees (" +
        std::to_string(ar.max_num_degree) + "," + std::to_string(ar.max_den_degree) + ")");

    if (candidate && reduces_to(*candidate, p, image)) {
      log("confirmed by prime " + std::to_string(p));
      report.telescoper = normalize_telescoper(candidate->coefficients);
      return report;
    }
    auto key = shape_key(image);
    ++shape_votes[key];
    images.emplace_back(p, std::move(image));
    // Keep only images of the most frequent shape, earliest on ties.
    std::vector<int> best = shape_key(images.front().second);
    for (const auto& [p2, img] : images) {
      auto k2 = shape_key(img);
      if (shape_votes[k2] > shape_votes[best]) best = k2;
    }
    std::vector<std::pair<std::uint32_t, Telescoper<PrimeField>>> group;
    for (const auto& im : images)
      if (shape_key(im.second) == best) group.push_back(im);
    if (group.size() < images.size()) log("discarding " + std::to_string(images.size() - group.size()) + " image(s) of minority shape");
    candidate = lift(group);
  }
  throw BudgetExhausted("telescope_modular: prime budget exhausted");
}

#define HOLOCT_INSTANTIATE(K)                                                                                     \
  template DerivedPresentation<K> make_presentation(ReductionContext<K>, std::vector<std::vector<WeylOperator<K>>>, \
                                                    WeylOperator<K>, bool);                                       \
  template WeylOperator<K> apply_L(const DerivedPresentation<K>&, const WeylOperator<K>&);                         \
  template bool is_stable(const DerivedPresentation<K>&);                                                          \
  template Confinement<K> confine(const DerivedPresentation<K>&, unsigned, const ConfineOptions&);                \
  template Confinement<K> confinement_images(const DerivedPresentation<K>&, EtaBasis<K>,                           \
                                             const std::vector<Monomial>&, unsigned);                              \
  template CoefficientVector<K> to_vector(const WeylOperator<K>&, const std::vector<Monomial>&);                  \
  template WeylOperator<K> from_vector(const RingPtr<K>&, const CoefficientVector<K>&, const std::vector<Monomial>&); \
  template CoefficientVector<K> derivative_sequence_step(const CoefficientVector<K>&, const Confinement<K>&, const K&);
HOLOCT_FOR_EACH_FIELD(HOLOCT_INSTANTIATE)
#undef HOLOCT_INSTANTIATE

template class RelationSearch<Rationals>;
template class RelationSearch<PrimeField>;
template std::optional<std::vector<upoly::Poly<Rationals>>> relation_search(
    const RationalFunctions<Rationals>&, const std::vector<CoefficientVector<RationalFunctions<Rationals>>>&);
template std::optional<std::vector<upoly::Poly<PrimeField>>> relation_search(
    const RationalFunctions<PrimeField>&, const std::vector<CoefficientVector<RationalFunctions<PrimeField>>>&);

}  // namespace holoct
