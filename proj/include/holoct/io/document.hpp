#ifndef HOLOCT_IO_DOCUMENT_HPP
#define HOLOCT_IO_DOCUMENT_HPP

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "holoct/arith/rational_function.hpp"
#include "holoct/kregular/kregular.hpp"
#include "holoct/telescoping/telescoping.hpp"

namespace holoct {

// Line-oriented plain text; '#' starts a comment, one "key: value" per line.
//
//   vars: x y z             variable names; with "parametric: yes" the first is t
//   rank: 1
//   order: block            grevlex | block | lex:<names> | weight:<ints>
//   parametric: no
//   gen: dx - (x^2 - t - 2*z)   repeated; S generators, or J generators when parametric
//   L: -x - y               one row per line, entries separated by ';'
//   f: 1                    integrand; also f(p) in (f, g) files
//   g: ...                  g(p) in (f, g) files
//   op: y^2                 repeated; operators to reduce
//   eta: x^2
struct OperatorDocument {
  std::vector<std::string> vars;
  int rank = 1;
  std::string order = "block";
  bool parametric = false;
  std::vector<std::string> generators;
  std::vector<std::vector<std::string>> L;
  std::string f;
  std::string g;
  std::vector<std::string> operators;
  std::string eta;
};

// Throws ParseError with the offending line number as position.
OperatorDocument read_document(std::istream& in);
OperatorDocument read_document_file(const std::string& path);
std::string write_document(const OperatorDocument& doc);

MonomialOrder parse_order(const std::string& spec, const std::vector<std::string>& vars, bool parametric);

// The algebra declared by the header; parses every expression eagerly.
RingPtr<QT> document_ring(const OperatorDocument& doc);
std::vector<WeylOperator<QT>> document_generators(const OperatorDocument& doc, const RingPtr<QT>& ring);

// A single-term expression such as "x^2" or "y*e2".
Monomial parse_monomial(const std::string& text, const RingPtr<QT>& ring);

struct LoadTimings {
  double gb_seconds = 0;
};

// Quotient documents: Groebner basis of the generators, L parsed in the
// scalar ring (identity-free zero when absent), f defaulting to e1.
// Parametric documents go through the extension to W_x(t)^r.
DerivedPresentation<QT> load_presentation(const OperatorDocument& doc, LoadTimings* timings = nullptr);

// f and g of an (f, g) file as polynomials in p1..pk.
std::pair<PPoly, PPoly> load_fg(const OperatorDocument& doc, int k);

// "7*dt^2 - t" -> coefficients; normalized.
Telescoper<Rationals> parse_telescoper(const std::string& text);

// telescoper, order, degree and integer coefficient arrays (JSON).
std::string telescoper_document(const Telescoper<Rationals>& P);

// Comma or whitespace separated rationals.
std::vector<Rational> read_series(std::istream& in);

enum class Mode { Direct, Modular };

struct RunConfig {
  std::uint64_t seed = 1;
  unsigned rho = 1;
  Mode mode = Mode::Modular;
  std::size_t max_primes = 200;
  std::size_t point_budget = 1u << 14;
  unsigned degree_ceiling = 40;
  unsigned workers = 1;
};

// HOLOCT_SEED when set and numeric, else the given fallback.
std::uint64_t default_seed(std::uint64_t fallback = 1);

struct RunReport {
  Telescoper<Rationals> telescoper;
  Monomial eta;
  std::vector<Monomial> B;
  double gb_seconds = 0;
  double telescope_seconds = 0;
  std::size_t primes_used = 0;
  std::size_t points_used = 0;
  std::vector<std::string> transcript;
};

RunReport run_telescope(const DerivedPresentation<QT>& pres, const RunConfig& cfg);

}  // namespace holoct

#endif
