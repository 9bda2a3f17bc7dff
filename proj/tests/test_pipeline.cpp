#include "doctest.h"
#include "nashx/pipeline.hpp"
#include "nashx/verify.hpp"

using namespace nashx;

namespace {

Jet jet_of(const std::string& text, const std::vector<std::string>& vars, int order) {
  return Jet::from_poly(parse_poly(text, vars), vars, order);
}

Jet exp_jet(const std::vector<std::string>& vars, int order, bool negate = false) {
  Jet e(vars, order);
  mpq_class c(1);
  for (int k = 0; k <= order; ++k) {
    e.add_term(Exponents{k}, Scalar(negate && k % 2 == 1 ? mpq_class(-c) : c));
    c /= k + 1;
  }
  return e;
}

Jet sqrt_one_plus_x(const std::vector<std::string>& vars, int order) {
  Jet e(vars, order);
  mpq_class c(1);
  for (int k = 0; k <= order; ++k) {
    e.add_term(Exponents{k}, Scalar(c));
    c *= mpq_class(1, 2) - k;
    c /= k + 1;
  }
  return e;
}

}  // namespace

TEST_CASE("base_case_1d splits off the vanishing factor") {
  std::vector<std::string> x{"x"};
  MapJet f({exp_jet(x, 10)});
  MPoly r = parse_poly("y - 1 - x", {"x", "y"});
  ApproxResult res = base_case_1d(f, r, {"y"}, 2, 5);
  CHECK(res.reg_order == 2);  // e^x - 1 - x vanishes to order 2
  for (const auto& entry : res.entries) {
    // approximant agrees with the branch at least to order nu + 1
    Jet diff = entry.approximant.components[0] - f.components[0];
    CHECK(diff.valuation() > entry.nu);
    CHECK(check_witness(entry.witnesses[0], entry.approximant.components[0]));
    // chained divisibility: u(f^nu) = x^2 * unit
    REQUIRE(entry.has_u);
    CHECK(chain_check_1d(res.u, {entry.u_composed}));
  }
}

TEST_CASE("solve_fiber_on_variety lifts the base exactly") {
  std::vector<std::string> ambient{"b", "z"};
  std::vector<std::string> x{"x"};
  std::vector<MPoly> gens{parse_poly("z^2 - 1 - b", ambient)};
  std::vector<Jet> base{jet_of("x", x, 10)};
  auto fiber = solve_fiber_on_variety(gens, ambient, 1, base, {Scalar(1)}, x, 10);
  REQUIRE(fiber.size() == 1);
  CHECK((fiber[0] - sqrt_one_plus_x(x, 10)).is_zero());
  CHECK((fiber[0] * fiber[0] - jet_of("1 + x", x, 10)).is_zero());
}

TEST_CASE("approximate: algebraic graph branch is reproduced exactly") {
  NashProblem p;
  p.x_vars = {"x"};
  p.unknowns = {"y"};
  p.graph_mode = true;
  p.variety.ambient_vars = {"x", "y"};
  p.variety.generators = {parse_poly("y^2 - 1 - x", p.variety.ambient_vars)};
  p.variety.codim = 1;
  p.jet_order = 10;
  p.nu_min = 2;
  p.nu_max = 4;
  p.seed = 42;
  p.f = MapJet({sqrt_one_plus_x(p.x_vars, 10)});

  ApproxResult res = approximate(p);
  VerificationReport rep =
      verify_result(p.variety.generators, p.x_vars, p.unknowns, p.f, res, 0.25, 16, 42);
  CHECK(rep.all_ok());
  for (const auto& entry : res.entries) {
    CHECK(entry.witnesses[0].degree == 2);
    CHECK((entry.approximant.components[0] - p.f.components[0]).is_zero());
  }
}

TEST_CASE("approximate: transcendental pair on the hyperbola") {
  NashProblem p;
  p.x_vars = {"x"};
  p.unknowns = {"y1", "y2"};
  p.graph_mode = false;
  p.variety.ambient_vars = p.unknowns;
  p.variety.generators = {parse_poly("y1*y2 - 1", p.unknowns)};
  p.variety.codim = 1;
  p.jet_order = 8;
  p.nu_min = 2;
  p.nu_max = 4;
  p.seed = 42;
  p.f = MapJet({exp_jet(p.x_vars, 8), exp_jet(p.x_vars, 8, true)});

  ApproxResult res = approximate(p);
  VerificationReport rep =
      verify_result(p.variety.generators, p.x_vars, p.unknowns, p.f, res, 0.25, 16, 42);
  CHECK(rep.all_ok());
  for (const auto& e : rep.entries) CHECK(e.membership_defect_order == 9);
  // witness degrees stay constant across nu
  for (size_t j = 0; j < p.unknowns.size(); ++j)
    for (const auto& entry : res.entries)
      CHECK(entry.witnesses[j].degree == res.entries[0].witnesses[j].degree);
}

TEST_CASE("approximate: ramified branch in one variable") {
  NashProblem p;
  p.x_vars = {"x"};
  p.unknowns = {"y"};
  p.graph_mode = true;
  p.variety.ambient_vars = {"x", "y"};
  p.variety.generators = {parse_poly("y^2 - x^2", p.variety.ambient_vars)};
  p.variety.codim = 1;
  p.jet_order = 8;
  p.nu_min = 2;
  p.nu_max = 3;
  p.seed = 7;
  p.f = MapJet({jet_of("x", p.x_vars, 8)});

  ApproxResult res = approximate(p);
  VerificationReport rep =
      verify_result(p.variety.generators, p.x_vars, p.unknowns, p.f, res, 0.25, 16, 7);
  CHECK(rep.all_ok());
}

TEST_CASE("approximate: ramified two-variable branch") {
  // y = x2 * sqrt(1 + x1): the discriminant vanishes to second order along x2
  NashProblem p;
  p.x_vars = {"x1", "x2"};
  p.unknowns = {"y"};
  p.graph_mode = true;
  p.variety.ambient_vars = {"x1", "x2", "y"};
  p.variety.generators = {parse_poly("y^2 - x2^2 - x2^2*x1", p.variety.ambient_vars)};
  p.variety.codim = 1;
  p.jet_order = 8;
  p.nu_min = 2;
  p.nu_max = 4;
  p.seed = 11;
  Jet root = sqrt_one_plus_x({"x1"}, 8).aligned_to(p.x_vars);
  p.f = MapJet({root * Jet::coordinate("x2", p.x_vars, 8)});

  ApproxResult res = approximate(p);
  CHECK(res.reg_order == 2);
  VerificationReport rep =
      verify_result(p.variety.generators, p.x_vars, p.unknowns, p.f, res, 0.25, 16, 11);
  CHECK(rep.all_ok());
  for (const auto& entry : res.entries) CHECK(entry.witnesses[0].degree == 2);
}

TEST_CASE("approximate validates its input") {
  NashProblem p;
  p.x_vars = {"x"};
  p.unknowns = {"y"};
  p.variety.ambient_vars = {"y"};
  p.variety.generators = {parse_poly("y^2 - 1", {"y"})};
  p.variety.codim = 1;
  p.jet_order = 6;
  p.f = MapJet(std::vector<Jet>{jet_of("1 + x", p.x_vars, 6)});  // does not satisfy y^2 = 1
  CHECK_THROWS_AS(approximate(p), PipelineError);

  NashProblem q = p;
  q.f = MapJet(std::vector<Jet>{});
  CHECK_THROWS_AS(approximate(q), PipelineError);
}

TEST_CASE("annihilating_polynomial composes coefficient witnesses") {
  // expr = t1 + t2 with t1, t2 roots of z^2 = x: the sum satisfies a unitary
  // polynomial over Q[x] obtained by iterated resultants
  std::vector<std::string> x{"x"};
  MPoly expr = parse_poly("t1 + t2", {"t1", "t2"});
  std::map<std::string, MPoly> wit;
  wit.emplace("t1", parse_poly("t1^2 - x", {"x", "t1"}));
  wit.emplace("t2", parse_poly("t2^2 - x^3", {"x", "t2"}));
  NashWitness w = annihilating_polynomial(expr, "z", x, wit);
  CHECK(w.poly.is_unitary_in("z"));
  // z = sqrt(x) + x*sqrt(x) must be a root
  Jet s(x, 9);
  // work in the square-root chart u = sqrt(x): check the witness vanishes on
  // z = u + u^3 with x = u^2
  std::vector<std::string> u{"u"};
  std::map<std::string, Jet> assign;
  assign.emplace("x", jet_of("u^2", u, 9));
  assign.emplace("z", jet_of("u + u^3", u, 9));
  CHECK(eval_poly_at_jets(w.poly, assign).is_zero());
}
