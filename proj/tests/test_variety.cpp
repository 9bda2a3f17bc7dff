#include "doctest.h"
#include "nashx/variety.hpp"

using namespace nashx;

namespace {

Jet jet_of(const std::string& text, const std::vector<std::string>& vars, int order) {
  return Jet::from_poly(parse_poly(text, vars), vars, order);
}

}  // namespace

TEST_CASE("buchberger elimination finds the projection ideal") {
  // z = y^2, x = y^3  =>  z^3 = x^2
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<MPoly> gens{parse_poly("z - y^2", vars), parse_poly("y^3 - x", vars)};
  auto elim = buchberger_eliminate(gens, {"x", "z"}, 100000);
  UnitaryWitness w;
  REQUIRE(find_unitary_witness(elim, "z", {"x"}, &w));
  CHECK(w.var_degree == 3);
  CHECK(w.poly == parse_poly("z^3 - x^2", {"x", "z"}).aligned_to(w.poly.vars()));
}

TEST_CASE("elimination budget is enforced") {
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<MPoly> gens{parse_poly("z^4 - y^3*x + x", vars), parse_poly("y^4 - z*x^2 - 1", vars)};
  CHECK_THROWS_AS(buchberger_eliminate(gens, {"x"}, 3), EliminationBudgetExhausted);
}

TEST_CASE("singular_locus_generators appends the Jacobian minors") {
  VarietyPresentation v;
  v.ambient_vars = {"a", "b"};
  v.generators = {parse_poly("a^2 - b^3", v.ambient_vars)};
  v.codim = 1;
  auto sing = singular_locus_generators(v);
  // original generator plus the two first partials
  CHECK(sing.size() == 3);
}

TEST_CASE("singular_descent keeps a smooth point") {
  VarietyPresentation v;
  v.ambient_vars = {"a", "b"};
  v.generators = {parse_poly("a^2 - b^3", v.ambient_vars)};
  v.codim = 1;
  // branch a = t^3, b = t^2 passes through the cusp but db generates a
  // nonzero jet, so the cusp curve itself is kept only if a partial is
  // nonzero along the branch; here da/da = 2a = 2t^3 is nonzero, no descent
  std::vector<std::string> t{"t"};
  MapJet f({jet_of("t^3", t, 8), jet_of("t^2", t, 8)});
  VarietyPresentation out = singular_descent(v, f);
  CHECK(out.codim == 1);
  CHECK(out.generators.size() == 1);
}

TEST_CASE("singular_descent descends into a singular stratum") {
  // Whitney-umbrella-like a^2 - b^2*c; the branch a=0, b=0, c=t lies in the
  // singular axis {a=b=0}, every first partial vanishes along it
  VarietyPresentation v;
  v.ambient_vars = {"a", "b", "c"};
  v.generators = {parse_poly("a^2 - b^2*c", v.ambient_vars)};
  v.codim = 1;
  std::vector<std::string> t{"t"};
  MapJet f({Jet(t, 8), Jet(t, 8), jet_of("t", t, 8)});
  VarietyPresentation out = singular_descent(v, f);
  CHECK(out.codim == 2);
}

TEST_CASE("singular_descent rejects a branch off the variety") {
  VarietyPresentation v;
  v.ambient_vars = {"a", "b"};
  v.generators = {parse_poly("a^2 - b^3", v.ambient_vars)};
  v.codim = 1;
  std::vector<std::string> t{"t"};
  MapJet f({jet_of("t", t, 8), jet_of("t", t, 8)});
  CHECK_THROWS(singular_descent(v, f));
}

TEST_CASE("properize is the identity for an integral presentation") {
  VarietyPresentation v;
  v.ambient_vars = {"y", "z"};
  v.generators = {parse_poly("z^2 - y", v.ambient_vars)};
  v.codim = 1;
  CHECK(properize(v, 1, 5).is_identity());
}

TEST_CASE("properize shears the hyperbola into proper position") {
  // over the base y the fiber z = 1/y runs off to infinity: a change is needed
  VarietyPresentation v;
  v.ambient_vars = {"y", "z"};
  v.generators = {parse_poly("y*z - 1", v.ambient_vars)};
  v.codim = 1;
  LinearChange m = properize(v, 1, 5);
  CHECK_FALSE(m.is_identity());
  // after the change the last variable must satisfy a unitary relation
  std::vector<MPoly> gens;
  for (const auto& g : v.generators) gens.push_back(m.apply(g, v.ambient_vars));
  auto elim = buchberger_eliminate(gens, {"y", "z"}, 100000);
  UnitaryWitness w;
  CHECK(find_unitary_witness(elim, "z", {"y"}, &w));
}

TEST_CASE("generic_fiber_count counts the cover degree") {
  VarietyPresentation v;
  v.ambient_vars = {"y", "z"};
  v.generators = {parse_poly("z^2 - y", v.ambient_vars)};
  v.codim = 1;
  CHECK(generic_fiber_count(v, 1, 17) == 2);

  VarietyPresentation w;
  w.ambient_vars = {"y", "z"};
  w.generators = {parse_poly("z^3 - y*z - y", w.ambient_vars)};
  w.codim = 1;
  CHECK(generic_fiber_count(w, 1, 17) == 3);
}

TEST_CASE("choose_form_and_discriminant on the parabola") {
  VarietyPresentation v;
  v.ambient_vars = {"y", "z"};
  v.generators = {parse_poly("z^2 - y", v.ambient_vars)};
  v.codim = 1;
  std::vector<std::string> t{"t"};
  std::vector<Jet> base{jet_of("t", t, 8)};
  BranchedCoverData cover = choose_form_and_discriminant(v, 1, base, 23);
  CHECK(cover.fiber_count == 2);
  CHECK(cover.optimal_poly.is_unitary_in(cover.z_var));
  // P = z^2 - y up to the choice of form, so R = 4y
  CHECK(cover.discriminant == parse_poly("4*y", {"y"}).aligned_to(cover.discriminant.vars()));
}

TEST_CASE("parse_variety reads generators and codim") {
  auto [v, base] = parse_variety("variety vars=y1;y2 eq y1*y2 - 1 eq y1 + y2 codim=1");
  CHECK(v.ambient_vars == std::vector<std::string>{"y1", "y2"});
  CHECK(v.generators.size() == 2);
  CHECK(v.codim == 1);
  CHECK(base == 1);
  CHECK_THROWS(parse_variety("variety codim=1"));
}
