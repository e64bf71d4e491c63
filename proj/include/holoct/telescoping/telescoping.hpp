#ifndef HOLOCT_TELESCOPING_TELESCOPING_HPP
#define HOLOCT_TELESCOPING_TELESCOPING_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational_function.hpp"
#include "holoct/arith/upoly.hpp"
#include "holoct/reduction/reduction.hpp"

namespace holoct {

// W_x(t)^r / S with the derivation a -> da/dt + L(a) and the integrand f.
// L acts on row vectors: L(sum a_j e_j) = sum_jk a_j Lambda_jk e_k.
template <class K>
struct DerivedPresentation {
  ReductionContext<K> ctx;
  std::vector<std::vector<WeylOperator<K>>> L;  // r x r over the scalar ring
  WeylOperator<K> f;
};

// Checks shapes and, when asked, that lrem(dg/dt + L(g), G) = 0 for every
// generator g.
template <class K>
DerivedPresentation<K> make_presentation(ReductionContext<K> ctx, std::vector<std::vector<WeylOperator<K>>> L,
                                         WeylOperator<K> f, bool check_stability = true);

template <class K>
WeylOperator<K> apply_L(const DerivedPresentation<K>& pres, const WeylOperator<K>& a);

template <class K>
bool is_stable(const DerivedPresentation<K>& pres);

template <class K>
using CoefficientVector = std::vector<typename K::Element>;

template <class K>
struct Confinement {
  Monomial eta;
  std::vector<Monomial> B;  // ascending
  // Row i holds the coefficients of [L(B[i])]_eta over B.
  std::vector<CoefficientVector<K>> reduced_L;
  CoefficientVector<K> g0;  // [f]_eta over B
  unsigned rho = 0;
  std::vector<unsigned> trace;  // successive values of s
  EtaBasis<K> eta_basis;
};

struct ConfineOptions {
  unsigned degree_ceiling = 40;
  const EtaTracer* replay = nullptr;
  bool certificates = false;
};

template <class K>
Confinement<K> confine(const DerivedPresentation<K>& pres, unsigned rho, const ConfineOptions& opts = {});

// [f]_eta and [L(m)]_eta for m in B against a fixed eta-basis. Throws
// UnluckyPoint when some support leaves B.
template <class K>
Confinement<K> confinement_images(const DerivedPresentation<K>& pres, EtaBasis<K> eta_basis,
                                  const std::vector<Monomial>& B, unsigned rho);

template <class K>
CoefficientVector<K> to_vector(const WeylOperator<K>& a, const std::vector<Monomial>& B);

template <class K>
WeylOperator<K> from_vector(const RingPtr<K>& ring, const CoefficientVector<K>& v, const std::vector<Monomial>& B);

// dg/dt + [L(g)]_eta through the memoized images.
template <class K>
CoefficientVector<K> derivative_sequence_step(const CoefficientVector<K>& g, const Confinement<K>& conf,
                                              const K& field);

// Incremental fraction-free elimination over Base[t]. add() returns the
// first dependency among the vectors added so far, with polynomial
// coefficients, or nothing while they stay independent.
template <class Base>
class RelationSearch {
 public:
  using Field = RationalFunctions<Base>;
  using Poly = upoly::Poly<Base>;

  RelationSearch(Field field, std::size_t length) : field_(std::move(field)), length_(length) {}

  std::optional<std::vector<Poly>> add(const CoefficientVector<Field>& v);

 private:
  struct Row {
    std::vector<Poly> values;
    std::vector<Poly> combination;
    std::size_t pivot;
  };
  void strip(std::vector<Poly>& values, std::vector<Poly>& combination) const;

  Field field_;
  std::size_t length_;
  std::size_t added_ = 0;
  std::vector<Row> rows_;
};

template <class Base>
std::optional<std::vector<upoly::Poly<Base>>> relation_search(
    const RationalFunctions<Base>& field, const std::vector<CoefficientVector<RationalFunctions<Base>>>& vectors);

// P = sum c_i dt^i with polynomial coefficients.
template <class Base>
struct Telescoper {
  std::vector<upoly::Poly<Base>> coefficients;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  int degree() const {
    int d = 0;
    for (const auto& c : coefficients) d = std::max(d, upoly::degree<Base>(c));
    return d;
  }
  bool operator==(const Telescoper&) const = default;
};

// Collectively primitive over Z[t] with positive leading coefficient of c_N.
Telescoper<Rationals> normalize_telescoper(std::vector<upoly::Poly<Rationals>> c);

// Collectively coprime with c_N monic.
Telescoper<PrimeField> normalize_telescoper(const PrimeField& k, std::vector<upoly::Poly<PrimeField>> c);

std::string format_telescoper(const Telescoper<Rationals>& P);

// Integer coefficient arrays, constant term first.
std::vector<std::vector<std::string>> telescoper_arrays(const Telescoper<Rationals>& P);

struct TelescopeResult {
  Telescoper<Rationals> telescoper;
  Confinement<QT> confinement;
  std::vector<CoefficientVector<QT>> sequence;  // g_0..g_N
};

struct DirectOptions {
  unsigned degree_ceiling = 40;
  std::size_t max_order = 64;
  bool certificates = false;
};

// Algorithm over Q(t); the relation is normalized canonically.
TelescopeResult telescope_direct(const DerivedPresentation<QT>& pres, unsigned rho, const DirectOptions& opts = {});

// Re-expands f = g_0 + s_0 + d_0 and dg_i/dt + L(g_i) = g_{i+1} + s_{i+1} +
// d_{i+1} with explicit S and dW parts and checks sum c_i g_i = 0.
bool verify_telescoper_certificate(const DerivedPresentation<QT>& pres, const TelescopeResult& result);

// Image of pres at t = a modulo p. The Groebner basis is recomputed from the
// image and must keep the leading monomials, else UnluckyPoint.
DerivedPresentation<PrimeField> evaluate_presentation(const DerivedPresentation<QT>& pres, std::uint32_t p,
                                                      std::uint32_t a);

struct FaultInjection {
  int corrupt_tracer = -1;  // index among the majority candidates
  std::size_t corrupt_sample = std::numeric_limits<std::size_t>::max();  // global sample index
};

struct ModularOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  unsigned rho = 1;
  unsigned degree_ceiling = 40;
  std::size_t max_primes = 200;
  std::size_t point_budget = 1u << 14;
  FaultInjection faults;
};

struct ModularReport {
  Telescoper<Rationals> telescoper;
  Monomial eta;
  std::vector<Monomial> B;
  std::size_t primes_used = 0;
  std::size_t points_used = 0;
  std::size_t discarded_points = 0;
  std::vector<std::string> transcript;
};

ModularReport telescope_modular(const DerivedPresentation<QT>& pres, const ModularOptions& opts = {});

}  // namespace holoct

#endif
