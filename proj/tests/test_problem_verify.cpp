#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nashx/problem.hpp"
#include "nashx/verify.hpp"

using namespace nashx;

namespace {

const char* kSqrtProblem =
    "# algebraic square-root branch\n"
    "vars x\n"
    "unknowns y\n"
    "eq y^2 - 1 - x\n"
    "branch y : 1 + 1/2*x - 1/8*x^2 + 1/16*x^3 - 5/128*x^4 + 7/256*x^5 - 21/1024*x^6\n"
    "config jet_order=6 nu=2..4 seed=42 radius=1/4 samples=16\n";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Jet jet_of(const std::string& text, const std::vector<std::string>& vars, int order) {
  return Jet::from_poly(parse_poly(text, vars), vars, order);
}

}  // namespace

TEST_CASE("parse_problem reads the grammar") {
  ProblemFile pf = parse_problem(kSqrtProblem);
  CHECK(pf.problem.x_vars == std::vector<std::string>{"x"});
  CHECK(pf.problem.unknowns == std::vector<std::string>{"y"});
  CHECK(pf.problem.graph_mode);  // the equation mentions x
  CHECK(pf.problem.jet_order == 6);
  CHECK(pf.problem.nu_min == 2);
  CHECK(pf.problem.nu_max == 4);
  CHECK(pf.problem.seed == 42);
  CHECK(pf.radius == doctest::Approx(0.25));
  CHECK(pf.samples == 16);
  CHECK(pf.equations.size() == 1);
}

TEST_CASE("parse_problem round trips through print_problem") {
  ProblemFile pf = parse_problem(kSqrtProblem);
  ProblemFile back = parse_problem(print_problem(pf));
  CHECK(back.problem.graph_mode == pf.problem.graph_mode);
  CHECK(back.problem.jet_order == pf.problem.jet_order);
  CHECK(back.equations.size() == pf.equations.size());
  CHECK((back.problem.f.components[0] - pf.problem.f.components[0]).is_zero());
}

TEST_CASE("parse_problem rejects malformed input") {
  CHECK_THROWS_WITH_AS(parse_problem("unknowns y\neq y - 1\n"),
                       doctest::Contains("missing 'vars'"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_problem("vars x\nunknowns y\n"),
                       doctest::Contains("no equations"), std::runtime_error);
  // a branch violating the equation reports the defect order
  CHECK_THROWS_WITH_AS(parse_problem("vars x\nunknowns y\neq y^2 - 1 - x\n"
                                     "branch y : 1 + x\nconfig jet_order=6\n"),
                       doctest::Contains("defect order 1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_problem("vars x\nunknowns y\neq y - 1\nbranch y : 1\n"
                                     "config nu=5..2\n"),
                       doctest::Contains("nu"), std::runtime_error);
}

TEST_CASE("check_membership measures the defect order") {
  std::vector<std::string> x{"x"};
  std::vector<MPoly> eqs{parse_poly("y^2 - 1 - x", {"x", "y"})};
  std::map<std::string, Jet> assign;
  assign.emplace("x", Jet::coordinate("x", x, 8));
  assign.emplace("y", jet_of("1 + 1/2*x", x, 8));  // correct to first order
  CHECK(check_membership(eqs, assign, 8) == 2);

  assign["y"] = jet_of("1", x, 8);
  CHECK(check_membership(eqs, assign, 8) == 1);
}

TEST_CASE("chain_check_1d accepts divisibility with unit cofactor") {
  std::vector<std::string> x{"x"};
  Jet u = jet_of("x^2 + x^3", x, 8);
  CHECK(chain_check_1d(u, {jet_of("x^2", x, 8)}));
  CHECK(chain_check_1d(u, {jet_of("2*x^2 - x^4", x, 8)}));
  CHECK_FALSE(chain_check_1d(u, {jet_of("x^3", x, 8)}));  // cofactor not a unit
  CHECK_FALSE(chain_check_1d(u, {jet_of("x", x, 8)}));    // not divisible enough
}

TEST_CASE("sup_error is zero for identical maps and deterministic") {
  std::vector<std::string> x{"x"};
  MapJet f({jet_of("1 + x + x^2", x, 6)});
  MapJet g({jet_of("1 + x", x, 6)});
  CHECK(sup_error(f, f, 0.25, 16, 99) == 0.0);
  double e1 = sup_error(f, g, 0.25, 16, 99);
  double e2 = sup_error(f, g, 0.25, 16, 99);
  CHECK(e1 == e2);
  CHECK(e1 > 0.0);
  CHECK(e1 <= 0.25 * 0.25 + 1e-12);  // |x^2| on the polydisc of radius 1/4
}

TEST_CASE("run_report writes a deterministic report and exit code") {
  ProblemFile pf = parse_problem(kSqrtProblem);
  std::string out1 = "test_report_a.json";
  std::string out2 = "test_report_b.json";
  int rc1 = run_report(pf, out1);
  int rc2 = run_report(pf, out2);
  CHECK(rc1 == 0);
  CHECK(rc2 == 0);
  std::string a = slurp(out1);
  std::string b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
