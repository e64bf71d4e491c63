#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "holoct/io/document.hpp"

using namespace holoct;
using namespace holoct::testing;

namespace {

using AOp = WeylOperator<QT>;

RingPtr<QT> x1_ring() { return make_ring(QT{}, {"x1"}, 1, MonomialOrder::grevlex(1)); }

// Random operator with rational-function coefficients.
AOp random_qt_operator(Rng& rng, const RingPtr<QT>& ring) {
  QT k;
  std::vector<Term<QT>> ts;
  const int terms = static_cast<int>(rng.below(0, 5));
  for (int i = 0; i < terms; ++i) {
    auto num = k.add(k.from_rational(small_rational(rng)), k.mul(k.from_rational(small_rational(rng)), k.variable()));
    auto den = k.add(k.from_int(static_cast<long>(rng.below(1, 4))),
                      k.mul(k.from_int(static_cast<long>(rng.below(0, 3))), k.variable()));
    ts.push_back({random_monomial(rng, ring->arity(), 4, ring->rank()), k.div(num, den)});
  }
  return AOp(ring, std::move(ts));
}

}  // namespace

TEST_CASE("parse_operator: normal ordering examples") {
  auto R = x1_ring();
  CHECK(print_operator(parse_operator("dx1*x1", R)) == "x1*dx1 + 1");
  CHECK(print_operator(parse_operator("x1*dx1", R)) == "x1*dx1");
  auto g = parse_operator("(t-1)*x1 - t*dx1", R);
  CHECK(g == AOp::constant(R, QT{}.add(QT{}.variable(), QT{}.from_int(-1))) * parse_operator("x1", R) -
                 AOp::constant(R, QT{}.variable()) * parse_operator("dx1", R));
  CHECK(print_operator(AOp(R)) == "0");
  CHECK(print_operator(parse_operator("4/7*t", R)) == "4/7*t");
}

TEST_CASE("parse_operator: errors carry positions") {
  auto R = x1_ring();
  CHECK_THROWS_AS(parse_operator("x2 + 1", R), ParseError);
  CHECK_THROWS_AS(parse_operator("x1 +", R), ParseError);
  CHECK_THROWS_AS(parse_operator("(x1", R), ParseError);
  CHECK_THROWS_AS(parse_operator("x1 / 0", R), std::exception);
  CHECK_THROWS_AS(parse_operator("e2", R), ParseError);
  try {
    parse_operator("x1 * ?", R);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("print then parse is the identity on random operators") {
  Rng rng(200);
  auto R1 = make_ring(QT{}, {"x", "y", "z"}, 1, MonomialOrder::block(3));
  auto R2 = make_ring(QT{}, {"x1", "x2"}, 2, MonomialOrder::grevlex(2));
  for (int trial = 0; trial < 200; ++trial) {
    const auto& R = trial % 2 ? R1 : R2;
    auto a = random_qt_operator(rng, R);
    auto text = print_operator(a);
    CHECK_MESSAGE(parse_operator(text, R) == a, text);
    CHECK(print_operator(parse_operator(text, R)) == text);
  }
}

TEST_CASE("documents: read, write and read again") {
  std::istringstream in(R"(# comment
vars: x y z
rank: 1
order: block
gen: dx - (x^2 - t - 2*z)   # trailing comment
gen: dy - (y^2 - t - z)
L: -x - y
f: 1
op: y^2
eta: x^2
)");
  auto doc = read_document(in);
  CHECK(doc.vars == std::vector<std::string>{"x", "y", "z"});
  CHECK(doc.generators.size() == 2);
  CHECK(doc.L == std::vector<std::vector<std::string>>{{"-x - y"}});
  std::istringstream again(write_document(doc));
  auto doc2 = read_document(again);
  CHECK(write_document(doc2) == write_document(doc));
  CHECK(doc2.eta == "x^2");
}

TEST_CASE("documents: malformed headers") {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    return read_document(in);
  };
  CHECK_THROWS_AS(fails("rank: 1\n"), ParseError);
  CHECK_THROWS_AS(fails("vars: x\nrank: zero\n"), ParseError);
  CHECK_THROWS_AS(fails("vars: x\ncolour: blue\n"), ParseError);
  CHECK_THROWS_AS(fails("vars: x\ngen dx\n"), ParseError);
  CHECK_THROWS_AS(fails("vars: x\nparametric: maybe\n"), ParseError);
  OperatorDocument d;
  d.vars = {"t", "x"};
  CHECK_THROWS_AS(document_ring(d), ParseError);
  d.parametric = true;
  CHECK_NOTHROW(document_ring(d));
  d.order = "spiral";
  CHECK_THROWS_AS(document_ring(d), ParseError);
}

TEST_CASE("orders: specs map to the library orders") {
  std::vector<std::string> v{"x", "y"};
  CHECK(parse_order("block", v, false) == MonomialOrder::block(2));
  CHECK(parse_order("grevlex", v, false) == MonomialOrder::grevlex(2));
  CHECK(parse_order("lex: dy, y, dx, x", v, false) == MonomialOrder::lex(2, {3, 1, 2, 0}));
  CHECK(parse_order("weight: 1,2,3,4", v, false) == MonomialOrder::weight(2, {1, 2, 3, 4}));
  CHECK(parse_order("block", v, true) == MonomialOrder::block(2).with_dt_elimination());
  CHECK_THROWS_AS(parse_order("lex: x, y", v, false), ParseError);
  CHECK_THROWS_AS(parse_order("weight: 1", v, false), ParseError);
}

TEST_CASE("load_presentation: Airy from both document kinds") {
  auto quotient = read_document_file(std::string(HOLOCT_TEST_DATA) + "/airy.hol");
  auto parametric = read_document_file(std::string(HOLOCT_TEST_DATA) + "/airy_parametric.hol");
  for (const auto* doc : {&quotient, &parametric}) {
    LoadTimings lt;
    auto pres = load_presentation(*doc, &lt);
    CHECK(lt.gb_seconds >= 0);
    RunConfig cfg;
    cfg.mode = Mode::Direct;
    CHECK(format_telescoper(run_telescope(pres, cfg).telescoper) == "7*dt^2 - t");
  }
  auto malformed = read_document_file(std::string(HOLOCT_TEST_DATA) + "/malformed.hol");
  CHECK_THROWS_AS(load_presentation(malformed), ParseError);
  CHECK_THROWS_AS(read_document_file("/nonexistent/file.hol"), ParseError);
}

TEST_CASE("load_fg: the 3-regular file reproduces the built-in model") {
  auto doc = read_document_file(std::string(HOLOCT_TEST_DATA) + "/kregular3_fg.hol");
  auto [f, g] = load_fg(doc, 3);
  auto [f0, g0] = model_polynomials(3);
  CHECK(f == f0);
  CHECK(g == g0);
  doc.g = "dp1";
  CHECK_THROWS_AS(load_fg(doc, 3), ParseError);
  doc.g = "t*p1";
  CHECK_THROWS_AS(load_fg(doc, 3), ParseError);
}

TEST_CASE("telescoper text: parse, print and arrays") {
  auto P = parse_telescoper("7*dt^2 - t");
  CHECK(format_telescoper(P) == "7*dt^2 - t");
  CHECK(parse_telescoper("14*dt^2 - 2*t") == P);
  CHECK(parse_telescoper("-1/2*t + 7/2*dt^2") == P);
  CHECK(telescoper_document(P) == "telescoper: 7*dt^2 - t\norder: 2\ndegree: 1\ncoefficients: [[0, -1], [], [7]]\n");
  CHECK_THROWS_AS(parse_telescoper("0"), ParseError);
  CHECK_THROWS_AS(parse_telescoper("1/t*dt"), ParseError);
  CHECK_THROWS_AS(parse_telescoper("dx"), ParseError);
}

TEST_CASE("read_series: separators and errors") {
  std::istringstream in("1, 0 -2/4\n# comment\n3\n");
  CHECK(read_series(in) == std::vector<Rational>{Rational(1), Rational(0), Rational(-1, 2), Rational(3)});
  std::istringstream bad("1 two\n");
  CHECK_THROWS_AS(read_series(bad), ParseError);
  std::istringstream zero("1/0\n");
  CHECK_THROWS_AS(read_series(zero), ParseError);
}

TEST_CASE("default_seed: environment variable") {
  ::setenv("HOLOCT_SEED", "1234", 1);
  CHECK(default_seed() == 1234);
  ::setenv("HOLOCT_SEED", "abc", 1);
  CHECK(default_seed(7) == 7);
  ::unsetenv("HOLOCT_SEED");
  CHECK(default_seed(9) == 9);
}

TEST_CASE("run_telescope: modular runs replay from the seed") {
  auto pres = load_presentation(read_document_file(std::string(HOLOCT_TEST_DATA) + "/airy.hol"));
  RunConfig a;
  a.seed = 42;
  RunConfig b = a;
  b.workers = 8;
  auto ra = run_telescope(pres, a);
  auto rb = run_telescope(pres, b);
  CHECK(ra.transcript == rb.transcript);
  CHECK(telescoper_document(ra.telescoper) == telescoper_document(rb.telescoper));
  CHECK(ra.transcript.front() == "modular seed=42 rho=1");
}
