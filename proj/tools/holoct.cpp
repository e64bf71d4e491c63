#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "holoct/errors.hpp"
#include "holoct/io/document.hpp"
#include "holoct/io/parser.hpp"
#include "holoct/kregular/kregular.hpp"
#include "holoct/reduction/reduction.hpp"
#include "json.hpp"

using namespace holoct;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kBudget = 3, kInconsistent = 4 };

// Everything is buffered and written once the command has succeeded.
struct Outputs {
  std::string document;
  json metrics = json::object();
  std::vector<std::string> transcript;
  std::string output_path, metrics_path, transcript_path;
  bool metrics_to_stdout = false;

  void flush() const {
    auto write = [](const std::string& path, const std::string& text) {
      if (path.empty() || path == "-") {
        std::cout << text;
        return;
      }
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write '" + path + "'");
      out << text;
    };
    write(output_path, document);
    if (metrics_to_stdout || !metrics_path.empty()) write(metrics_path, metrics.dump(2) + "\n");
    if (!transcript_path.empty()) {
      std::string t;
      for (const auto& line : transcript) t += line + "\n";
      write(transcript_path, t);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OperatorDocument load_document(const std::string& path) {
  if (path == "-") return read_document(std::cin);
  return read_document_file(path);
}

std::string monomials_text(const std::vector<Monomial>& B, const RingPtr<QT>& ring) {
  std::string s;
  for (const auto& m : B) s += (s.empty() ? "" : " ") + format_monomial(m, *ring);
  return s.empty() ? "(empty)" : s;
}

struct RunFlags {
  bool direct = false;
  bool modular = false;
  RunConfig cfg;
};

void add_run_options(CLI::App* cmd, RunFlags& f) {
  cmd->add_flag("--direct", f.direct, "Compute over Q(t)");
  cmd->add_flag("--modular", f.modular, "Evaluate, interpolate and lift (default)");
  cmd->add_option("--rho", f.cfg.rho, "Restart increment")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.cfg.seed, "RNG seed (default from HOLOCT_SEED)");
  cmd->add_option("--workers", f.cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--max-primes", f.cfg.max_primes, "Prime budget")->check(CLI::PositiveNumber);
  cmd->add_option("--point-budget", f.cfg.point_budget, "Evaluation point budget per prime")->check(CLI::PositiveNumber);
  cmd->add_option("--degree-ceiling", f.cfg.degree_ceiling, "Confinement degree ceiling")->check(CLI::PositiveNumber);
}

void add_output_options(CLI::App* cmd, Outputs& o) {
  cmd->add_option("-o,--output", o.output_path, "Result document (default stdout)");
  cmd->add_option("--metrics", o.metrics_path, "Metrics JSON ('-' for stdout)");
  cmd->add_option("--transcript", o.transcript_path, "Replayable transcript");
}

RunConfig resolve(RunFlags& f) {
  if (f.direct && f.modular) throw CLI::ValidationError("--direct and --modular are exclusive");
  f.cfg.mode = f.direct ? Mode::Direct : Mode::Modular;
  return f.cfg;
}

void record_run(Outputs& out, const RunReport& rep, const RunConfig& cfg, const RingPtr<QT>& ring,
                double gb_seconds) {
  out.document = telescoper_document(rep.telescoper);
  out.metrics["order"] = rep.telescoper.order();
  out.metrics["degree"] = rep.telescoper.degree();
  out.metrics["gb_seconds"] = gb_seconds;
  out.metrics["telescope_seconds"] = rep.telescope_seconds;
  out.metrics["mode"] = cfg.mode == Mode::Direct ? "direct" : "modular";
  out.metrics["seed"] = cfg.seed;
  out.metrics["rho"] = cfg.rho;
  out.metrics["workers"] = cfg.workers;
  out.metrics["eta"] = format_monomial(rep.eta, *ring);
  out.metrics["basis_size"] = rep.B.size();
  if (cfg.mode == Mode::Modular) {
    out.metrics["primes_used"] = rep.primes_used;
    out.metrics["points_used"] = rep.points_used;
  }
  out.transcript = rep.transcript;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Creative telescoping for integrals of D-finite functions"};
  app.require_subcommand(1);
  Outputs out;
  std::string input;
  RunFlags run;
  run.cfg.seed = default_seed();

  auto gb = app.add_subcommand("gb", "Reduced left Groebner basis of the generators");
  gb->add_option("input", input, "Operator document ('-' for stdin)")->required();
  add_output_options(gb, out);

  std::string eta_text;
  auto reduce = app.add_subcommand("reduce", "LRem, reduced form and eta-reduced form of each 'op:' line");
  reduce->add_option("input", input)->required();
  reduce->add_option("--eta", eta_text, "Monomial bound for [a]_eta");
  add_output_options(reduce, out);

  auto eta_basis = app.add_subcommand("eta-basis", "Echelon basis of the irreducible elements up to eta");
  eta_basis->add_option("input", input)->required();
  eta_basis->add_option("--eta", eta_text, "Monomial bound (default: the 'eta:' line)");
  add_output_options(eta_basis, out);

  auto confine_cmd = app.add_subcommand("confine", "Confinement eta and the finite set B");
  confine_cmd->add_option("input", input)->required();
  confine_cmd->add_option("--rho", run.cfg.rho, "Restart increment");
  add_output_options(confine_cmd, out);

  auto telescope = app.add_subcommand("telescope", "Telescoper of the integrand");
  telescope->add_option("input", input)->required();
  add_run_options(telescope, run);
  add_output_options(telescope, out);

  int k = 0;
  std::string model = "ll,se", fg_path;
  int series_check = -1, count_check = -1;
  auto kregular = app.add_subcommand("kregular", "Telescoper for the generating function of k-regular graphs");
  kregular->add_option("--k", k, "Degree of every vertex")->required()->check(CLI::Range(2, kMaxVars));
  kregular->add_option("--model", model, "Graph model; only ll,se is built in");
  kregular->add_option("--fg", fg_path, "File with 'f:' and 'g:' lines in p1..pk");
  kregular->add_option("--series-check", series_check, "Check the telescoper on the series to this order");
  kregular->add_option("--count-check", count_check, "Compare series with enumeration up to n vertices");
  add_run_options(kregular, run);
  add_output_options(kregular, out);

  std::string op_text, series_path;
  int series_k = 0, series_order = 12;
  unsigned margin = 4;
  auto verify = app.add_subcommand("verify-series", "Apply a telescoper to a truncated series");
  verify->add_option("--operator", op_text, "Operator such as '7*dt^2 - t'")->required();
  auto from_file = verify->add_option("--series", series_path, "File of rational coefficients a_0 a_1 ...");
  auto from_k = verify->add_option("--k", series_k, "Use the k-regular series instead")->check(CLI::Range(2, kMaxVars));
  from_file->excludes(from_k);
  verify->add_option("--order", series_order, "Truncation order for --k")->check(CLI::NonNegativeNumber);
  verify->add_option("--margin", margin, "Minimum number of determined coefficients");
  add_output_options(verify, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*gb) {
      auto doc = load_document(input);
      auto ring = document_ring(doc);
      auto gens = document_generators(doc, ring);
      auto t0 = std::chrono::steady_clock::now();
      auto G = buchberger(ring, gens);
      out.metrics["gb_seconds"] = seconds_since(t0);
      out.metrics["size"] = G.size();
      OperatorDocument res;
      res.vars = doc.vars;
      res.rank = doc.rank;
      res.order = doc.order;
      res.parametric = doc.parametric;
      for (const auto& g : G.generators()) res.generators.push_back(print_operator(g));
      out.document = write_document(res);
    } else if (*reduce) {
      auto doc = load_document(input);
      auto ring = document_ring(doc);
      auto gens = document_generators(doc, ring);
      std::vector<WeylOperator<QT>> ops;
      for (const auto& o : doc.operators) ops.push_back(parse_operator(o, ring));
      if (eta_text.empty()) eta_text = doc.eta;
      std::optional<Monomial> eta;
      if (!eta_text.empty()) eta = parse_monomial(eta_text, ring);
      auto t0 = std::chrono::steady_clock::now();
      ReductionContext<QT> ctx(buchberger(ring, gens));
      out.metrics["gb_seconds"] = seconds_since(t0);
      std::optional<EtaBasis<QT>> eb;
      if (eta) eb = compute_eta_basis(ctx, *eta);
      std::ostringstream s;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        s << "op: " << doc.operators[i] << "\n";
        s << "lrem: " << print_operator(lrem(ops[i], ctx.basis())) << "\n";
        s << "reduced: " << print_operator(reduced_form(ops[i], ctx)) << "\n";
        if (eb) s << "eta_reduced: " << print_operator(reduce_eta(ops[i], ctx, *eb)) << "\n";
      }
      out.document = s.str();
    } else if (*eta_basis) {
      auto doc = load_document(input);
      auto ring = document_ring(doc);
      auto gens = document_generators(doc, ring);
      if (eta_text.empty()) eta_text = doc.eta;
      if (eta_text.empty()) throw ParseError("eta-basis needs --eta or an 'eta:' line", 0);
      auto eta = parse_monomial(eta_text, ring);
      auto t0 = std::chrono::steady_clock::now();
      ReductionContext<QT> ctx(buchberger(ring, gens));
      out.metrics["gb_seconds"] = seconds_since(t0);
      auto eb = compute_eta_basis(ctx, eta);
      out.metrics["dimension"] = eb.rows.size();
      std::ostringstream s;
      s << "eta: " << format_monomial(eta, *ring) << "\n";
      for (const auto& r : eb.rows) s << "row: " << print_operator(r) << "\n";
      out.document = s.str();
    } else if (*confine_cmd) {
      auto doc = load_document(input);
      LoadTimings lt;
      auto pres = load_presentation(doc, &lt);
      auto t0 = std::chrono::steady_clock::now();
      auto conf = confine(pres, run.cfg.rho);
      out.metrics["gb_seconds"] = lt.gb_seconds;
      out.metrics["confine_seconds"] = seconds_since(t0);
      std::ostringstream s;
      std::string trace;
      for (auto v : conf.trace) trace += (trace.empty() ? "" : " ") + std::to_string(v);
      s << "eta: " << format_monomial(conf.eta, *pres.ctx.ring()) << "\n";
      s << "B: " << monomials_text(conf.B, pres.ctx.ring()) << "\n";
      s << "trace: " << trace << "\n";
      out.document = s.str();
    } else if (*telescope) {
      auto cfg = resolve(run);
      auto doc = load_document(input);
      LoadTimings lt;
      auto pres = load_presentation(doc, &lt);
      auto rep = run_telescope(pres, cfg);
      record_run(out, rep, cfg, pres.ctx.ring(), lt.gb_seconds);
    } else if (*kregular) {
      auto cfg = resolve(run);
      if (model != "ll,se") throw ParseError("model '" + model + "' is not built in; supply it with --fg", 0);
      auto [f, g] = fg_path.empty() ? model_polynomials(k) : load_fg(read_document_file(fg_path), k);
      auto t0 = std::chrono::steady_clock::now();
      auto pres = scalar_product_presentation(make_scalar_product_input(k, f, g));
      double gb_seconds = seconds_since(t0);
      auto rep = run_telescope(pres, cfg);
      record_run(out, rep, cfg, pres.ctx.ring(), gb_seconds);
      out.metrics["k"] = k;
      bool consistent = true;
      int needed = std::max(series_check, count_check);
      if (needed >= 0) {
        auto series = scalar_product_series(f, g, k, needed);
        if (series_check >= 0) {
          bool ok = verify_ode_on_series(rep.telescoper, series);
          out.metrics["series_check"] = ok;
          consistent = consistent && ok;
        }
        if (count_check >= 0) {
          bool ok = true;
          json counts = json::array();
          Integer fact = 1;
          for (int n = 0; n <= count_check; ++n) {
            if (n > 0) fact *= n;
            Integer c = count_regular_graphs(k, n);
            counts.push_back(c.get_str());
            ok = ok && Rational(c) == series[static_cast<std::size_t>(n)] * Rational(fact);
          }
          out.metrics["counts"] = counts;
          out.metrics["count_check"] = ok;
          consistent = consistent && ok;
        }
      }
      if (!consistent) throw Inconsistency("kregular: telescoper, series and counts disagree");
    } else if (*verify) {
      auto P = parse_telescoper(op_text);
      std::vector<Rational> series;
      if (!series_path.empty()) {
        std::ifstream in(series_path);
        if (!in) throw ParseError("cannot open '" + series_path + "'", 0);
        series = read_series(in);
      } else if (series_k > 0) {
        auto [f, g] = model_polynomials(series_k);
        series = scalar_product_series(f, g, series_k, series_order);
      } else {
        series = read_series(std::cin);
      }
      bool ok = verify_ode_on_series(P, series, margin);
      out.document = std::string("annihilates: ") + (ok ? "true" : "false") + "\n";
      out.metrics["annihilates"] = ok;
      out.metrics["order"] = P.order();
      out.metrics["degree"] = P.degree();
      if (!ok) {
        out.flush();
        return kInconsistent;
      }
    }
    out.flush();
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const Inconsistency& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const UnluckyPoint& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
