#include "doctest.h"
#include "nashx/identity.hpp"

using namespace nashx;

namespace {

// Re-expand the identity R(alpha) = quotient * product + sum T_k var^k with
// plain polynomial arithmetic and confirm it holds exactly.
void check_identity(const MPoly& r, const std::vector<std::string>& y_vars,
                    const std::vector<int>& degrees, const std::vector<int>& mults) {
  DivisionIdentity id = build_division_identity(r, y_vars, degrees, mults, "xn");

  std::map<std::string, MPoly> subst;
  for (size_t j = 0; j < y_vars.size(); ++j) subst.emplace(y_vars[j], id.alphas[j]);
  MPoly lhs = r.substitute(subst);

  MPoly rhs = id.quotient * id.product;
  for (size_t k = 0; k < id.t_polys.size(); ++k)
    rhs = rhs + id.t_polys[k] * MPoly::variable("xn").pow(static_cast<int>(k));
  CHECK((lhs - rhs).pruned().is_zero());

  for (const auto& t : id.t_polys) {
    CHECK(t.degree("xn") <= 0);
    for (const auto& s : id.s_vars) CHECK(t.degree(s) <= 0);
  }

  int d = 0;
  for (size_t l = 0; l < degrees.size(); ++l) d += degrees[l] * mults[l];
  CHECK(static_cast<int>(id.t_polys.size()) == d);
  CHECK(id.product.degree("xn") == d);
  CHECK(id.product.is_unitary_in("xn"));
}

}  // namespace

TEST_CASE("polynomial division by a monic divisor") {
  std::vector<std::string> vars{"xn", "a"};
  MPoly p = parse_poly("xn^3 + a*xn + 1", vars);
  MPoly w = parse_poly("xn^2 + a", vars);
  auto [q, rem] = divmod_monic_in_var(p, w, "xn");
  CHECK((q * w + rem - p).pruned().is_zero());
  CHECK(rem.degree("xn") < 2);
  CHECK(q == parse_poly("xn", vars).pruned());
}

TEST_CASE("division identity for a single quadratic factor") {
  check_identity(parse_poly("y1^2 - y1 + 1", {"y1"}), {"y1"}, {2}, {1});
}

TEST_CASE("division identity for a squared linear factor") {
  check_identity(parse_poly("y1^3 + 2*y1", {"y1"}), {"y1"}, {1}, {2});
}

TEST_CASE("division identity with two distinct factors and two components") {
  std::vector<std::string> ys{"y1", "y2"};
  check_identity(parse_poly("y1*y2 - 1", ys), ys, {1, 1}, {1, 1});
  check_identity(parse_poly("y1^2*y2 + y2^2 - 3", ys), ys, {2, 1}, {1, 1});
}

TEST_CASE("division identity across factor shapes of degree three") {
  std::vector<std::string> ys{"y1", "y2"};
  MPoly r = parse_poly("y1^3 - y1*y2^2 + 2*y2 - 5", ys);
  check_identity(r, ys, {3}, {1});        // one cubic factor
  check_identity(r, ys, {1}, {3});        // a linear factor cubed
  check_identity(r, ys, {1, 2}, {1, 1});  // linear times quadratic
  check_identity(r, ys, {1, 1}, {1, 2});  // linear times a squared linear
}
