#include "holoct/io/document.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "holoct/extension/extension.hpp"
#include "holoct/groebner/groebner.hpp"
#include "holoct/io/parser.hpp"

namespace holoct {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& separators) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (separators.find(c) != std::string::npos) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int parse_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
}

}  // namespace

OperatorDocument read_document(std::istream& in) {
  OperatorDocument doc;
  std::string raw;
  std::size_t line = 0;
  bool have_vars = false;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", line);
    std::string key = trim(text.substr(0, colon));
    std::string value = trim(text.substr(colon + 1));
    if (key == "vars") {
      doc.vars = split(value, " \t,");
      have_vars = true;
    } else if (key == "rank") {
      doc.rank = parse_int(value, line);
      if (doc.rank < 1) throw ParseError("rank must be positive", line);
    } else if (key == "order") {
      doc.order = value;
    } else if (key == "parametric") {
      if (value != "yes" && value != "no") throw ParseError("parametric must be yes or no", line);
      doc.parametric = value == "yes";
    } else if (key == "gen") {
      doc.generators.push_back(value);
    } else if (key == "L") {
      std::vector<std::string> row;
      std::string cur;
      for (char c : value + ";") {
        if (c == ';') {
          row.push_back(trim(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      doc.L.push_back(std::move(row));
    } else if (key == "f") {
      doc.f = value;
    } else if (key == "g") {
      doc.g = value;
    } else if (key == "op") {
      doc.operators.push_back(value);
    } else if (key == "eta") {
      doc.eta = value;
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!have_vars) throw ParseError("missing 'vars' line", line);
  return doc;
}

OperatorDocument read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_document(in);
}

std::string write_document(const OperatorDocument& doc) {
  std::ostringstream out;
  out << "vars: " << join(doc.vars, " ") << "\n";
  out << "rank: " << doc.rank << "\n";
  out << "order: " << doc.order << "\n";
  out << "parametric: " << (doc.parametric ? "yes" : "no") << "\n";
  for (const auto& g : doc.generators) out << "gen: " << g << "\n";
  for (const auto& row : doc.L) out << "L: " << join(row, " ; ") << "\n";
  if (!doc.f.empty()) out << "f: " << doc.f << "\n";
  if (!doc.g.empty()) out << "g: " << doc.g << "\n";
  for (const auto& o : doc.operators) out << "op: " << o << "\n";
  if (!doc.eta.empty()) out << "eta: " << doc.eta << "\n";
  return out.str();
}

MonomialOrder parse_order(const std::string& spec, const std::vector<std::string>& vars, bool parametric) {
  const int n = static_cast<int>(vars.size());
  auto colon = spec.find(':');
  std::string kind = trim(spec.substr(0, colon));
  std::vector<std::string> args = colon == std::string::npos ? std::vector<std::string>{}
                                                              : split(spec.substr(colon + 1), " ,");
  MonomialOrder ord = MonomialOrder::grevlex(n);
  if (kind == "grevlex" && args.empty()) {
    ord = MonomialOrder::grevlex(n);
  } else if (kind == "block" && args.empty()) {
    ord = MonomialOrder::block(n);
  } else if (kind == "lex") {
    std::vector<int> seq;
    for (const auto& a : args) {
      bool found = false;
      for (int i = 0; i < n && !found; ++i) {
        if (a == vars[i]) seq.push_back(i), found = true;
        else if (a == "d" + vars[i]) seq.push_back(n + i), found = true;
      }
      if (!found) throw ParseError("unknown variable '" + a + "' in lex order", 0);
    }
    if (static_cast<int>(seq.size()) != 2 * n) throw ParseError("lex order must list every x and d", 0);
    ord = MonomialOrder::lex(n, seq);
  } else if (kind == "weight") {
    std::vector<int> w;
    for (const auto& a : args) w.push_back(parse_int(a, 0));
    if (static_cast<int>(w.size()) != 2 * n) throw ParseError("weight order needs 2n weights", 0);
    ord = MonomialOrder::weight(n, w);
  } else {
    throw ParseError("unknown order '" + spec + "'", 0);
  }
  return parametric ? ord.with_dt_elimination() : ord;
}

RingPtr<QT> document_ring(const OperatorDocument& doc) {
  if (doc.parametric && (doc.vars.empty() || doc.vars[0] != "t"))
    throw ParseError("parametric documents declare t as the first variable", 0);
  if (!doc.parametric)
    for (const auto& v : doc.vars)
      if (v == "t") throw ParseError("t is the parameter; declare 'parametric: yes' to use it as a variable", 0);
  if (static_cast<int>(doc.vars.size()) > kMaxVars) throw ParseError("too many variables", 0);
  return make_ring(QT{}, doc.vars, doc.rank, parse_order(doc.order, doc.vars, doc.parametric), doc.parametric);
}

std::vector<WeylOperator<QT>> document_generators(const OperatorDocument& doc, const RingPtr<QT>& ring) {
  std::vector<WeylOperator<QT>> out;
  for (const auto& g : doc.generators) out.push_back(parse_operator(g, ring));
  return out;
}

Monomial parse_monomial(const std::string& text, const RingPtr<QT>& ring) {
  auto op = parse_operator(text, ring);
  if (op.size() != 1 || !ring->field().is_one(op.lc())) throw ParseError("expected a monomial, got '" + text + "'", 0);
  return op.lm();
}

DerivedPresentation<QT> load_presentation(const OperatorDocument& doc, LoadTimings* timings) {
  auto ring = document_ring(doc);
  auto gens = document_generators(doc, ring);
  if (doc.parametric) {
    auto t0 = std::chrono::steady_clock::now();
    if (!doc.L.empty() || !doc.f.empty())
      throw ParseError("parametric documents take generators only; the integrand is e1", 0);
    auto ext = build_extension({ring, gens});
    auto pres = derived_presentation(ext);
    if (timings) timings->gb_seconds = seconds_since(t0);
    return pres;
  }
  auto scalar = ring->with_rank(1);
  if (static_cast<int>(doc.L.size()) != doc.rank) throw ParseError("L needs one row per component", 0);
  std::vector<std::vector<WeylOperator<QT>>> L;
  for (const auto& row : doc.L) {
    if (static_cast<int>(row.size()) != doc.rank) throw ParseError("L rows need one entry per component", 0);
    std::vector<WeylOperator<QT>> r;
    for (const auto& e : row) r.push_back(e.empty() ? WeylOperator<QT>(scalar) : parse_operator(e, scalar));
    L.push_back(std::move(r));
  }
  auto f = doc.f.empty() ? WeylOperator<QT>::basis(ring, 0) : parse_operator(doc.f, ring);
  auto t0 = std::chrono::steady_clock::now();
  auto G = buchberger(ring, gens);
  if (timings) timings->gb_seconds = seconds_since(t0);
  return make_presentation(ReductionContext<QT>(std::move(G)), std::move(L), std::move(f));
}

std::pair<PPoly, PPoly> load_fg(const OperatorDocument& doc, int k) {
  if (doc.f.empty() || doc.g.empty()) throw ParseError("(f, g) files need 'f:' and 'g:' lines", 0);
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("p" + std::to_string(i));
  auto ring = make_ring(QT{}, names, 1, MonomialOrder::grevlex(k));
  auto convert = [&](const std::string& text) {
    PPoly out;
    QT field;
    auto op = parse_operator(text, ring);
    for (const auto& t : op.terms()) {
      for (int i = 0; i < k; ++i)
        if (t.m.d[i] != 0) throw ParseError("f and g must be commutative polynomials in p1..pk", 0);
      if (!field.is_constant(t.c)) throw ParseError("f and g must not depend on t", 0);
      out[t.m.x] = t.c.num[0];
    }
    return out;
  };
  return {convert(doc.f), convert(doc.g)};
}

Telescoper<Rationals> parse_telescoper(const std::string& text) {
  auto ring = make_ring(QT{}, {"t"}, 1, MonomialOrder::grevlex(1).with_dt_elimination(), true);
  auto op = parse_operator(text, ring);
  std::vector<upoly::Poly<Rationals>> c;
  QT field;
  for (const auto& t : op.terms()) {
    if (t.m.x[0] != 0 || !field.is_polynomial(t.c)) throw ParseError("telescoper coefficients must be polynomials in t", 0);
    std::size_t i = t.m.d[0];
    if (c.size() <= i) c.resize(i + 1);
    auto scaled = upoly::scale(field.base(), t.c.num, field.base().inv(t.c.den[0]));
    c[i] = upoly::add(field.base(), c[i], scaled);
  }
  if (c.empty()) throw ParseError("the zero operator is not a telescoper", 0);
  return normalize_telescoper(std::move(c));
}

std::string telescoper_document(const Telescoper<Rationals>& P) {
  std::ostringstream out;
  out << "telescoper: " << format_telescoper(P) << "\n";
  out << "order: " << P.order() << "\n";
  out << "degree: " << P.degree() << "\n";
  out << "coefficients: [";
  auto arrays = telescoper_arrays(P);
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < arrays[i].size(); ++j) out << (j ? ", " : "") << arrays[i][j];
    out << "]";
  }
  out << "]\n";
  return out.str();
}

std::vector<Rational> read_series(std::istream& in) {
  std::vector<Rational> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    for (const auto& tok : split(hash == std::string::npos ? raw : raw.substr(0, hash), " \t,")) {
      Rational q;
      try {
        q = Rational(tok);
      } catch (const std::exception&) {
        throw ParseError("malformed rational '" + tok + "'", line);
      }
      if (q.get_den() == 0) throw ParseError("zero denominator in '" + tok + "'", line);
      q.canonicalize();
      out.push_back(q);
    }
  }
  return out;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("HOLOCT_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  auto v = std::strtoull(env, &end, 10);
  return *end == '\0' ? v : fallback;
}

RunReport run_telescope(const DerivedPresentation<QT>& pres, const RunConfig& cfg) {
  RunReport rep;
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.mode == Mode::Direct) {
    DirectOptions opts;
    opts.degree_ceiling = cfg.degree_ceiling;
    auto res = telescope_direct(pres, cfg.rho, opts);
    rep.telescoper = std::move(res.telescoper);
    rep.eta = res.confinement.eta;
    rep.B = res.confinement.B;
    std::string trace;
    for (auto s : res.confinement.trace) trace += (trace.empty() ? "" : " ") + std::to_string(s);
    rep.transcript.push_back("direct rho=" + std::to_string(cfg.rho));
    rep.transcript.push_back("confinement trace s=" + trace);
    rep.transcript.push_back("relation found at order " + std::to_string(rep.telescoper.order()));
  } else {
    ModularOptions opts;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    opts.rho = cfg.rho;
    opts.degree_ceiling = cfg.degree_ceiling;
    opts.max_primes = cfg.max_primes;
    opts.point_budget = cfg.point_budget;
    auto res = telescope_modular(pres, opts);
    rep.telescoper = std::move(res.telescoper);
    rep.eta = res.eta;
    rep.B = std::move(res.B);
    rep.primes_used = res.primes_used;
    rep.points_used = res.points_used;
    rep.transcript.push_back("modular seed=" + std::to_string(cfg.seed) + " rho=" + std::to_string(cfg.rho));
    for (auto& line : res.transcript) rep.transcript.push_back(std::move(line));
  }
  rep.telescope_seconds = seconds_since(t0);
  return rep;
}

}  // namespace holoct
