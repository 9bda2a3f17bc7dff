#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "nashx/jet.hpp"

using namespace nashx;

namespace {

Jet exp_jet(const std::string& var, const std::vector<std::string>& vars, int order,
            bool negate = false) {
  Jet e(vars, order);
  mpq_class c(1);
  int vi = -1;
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) vi = static_cast<int>(i);
  for (int k = 0; k <= order; ++k) {
    Exponents ex(vars.size(), 0);
    ex[static_cast<size_t>(vi)] = k;
    e.add_term(ex, Scalar(negate && k % 2 == 1 ? mpq_class(-c) : c));
    c /= k + 1;
  }
  return e;
}

}  // namespace

TEST_CASE("from_poly / to_poly identity and valuation sentinel") {
  std::vector<std::string> vars{"x", "y"};
  MPoly p = parse_poly("x^2*y - 3*y + 1/2", vars);
  Jet j = Jet::from_poly(p, vars, 6);
  CHECK(j.to_poly() == p);
  CHECK(j.valuation() == 0);
  Jet z(vars, 6);
  CHECK(z.is_zero());
  CHECK(z.valuation() == 7);  // order + 1 sentinel
  CHECK((j - j).valuation() == 7);
}

TEST_CASE("exp(x) * exp(-x) = 1 at jet level") {
  std::vector<std::string> vars{"x"};
  Jet a = exp_jet("x", vars, 12);
  Jet b = exp_jet("x", vars, 12, true);
  Jet prod = a * b;
  CHECK(prod.constant_term() == Scalar(1));
  CHECK((prod - Jet::constant(Scalar(1), vars, 12)).is_zero());
}

TEST_CASE("invert_unit is a two-sided inverse") {
  std::vector<std::string> vars{"x", "y"};
  Jet u = Jet::from_poly(parse_poly("2 + x - 3*y^2 + x*y", vars), vars, 8);
  Jet inv = u.invert_unit();
  CHECK((u * inv - Jet::constant(Scalar(1), vars, 8)).is_zero());
  CHECK_THROWS(Jet::coordinate("x", vars, 8).invert_unit());
}

TEST_CASE("compose matches direct substitution for polynomial data") {
  std::vector<std::string> vars{"x", "y"};
  MPoly p = parse_poly("x^2 + x*y - y^3 + 4*x", vars);
  Jet f = Jet::from_poly(p, vars, 9);
  std::map<std::string, Jet> inner;
  MPoly gx = parse_poly("x + x*y", vars);
  MPoly gy = parse_poly("y - x^2", vars);
  inner.emplace("x", Jet::from_poly(gx, vars, 9));
  inner.emplace("y", Jet::from_poly(gy, vars, 9));
  Jet composed = f.compose(inner);
  std::map<std::string, MPoly> repl{{"x", gx}, {"y", gy}};
  Jet direct = Jet::from_poly(p.substitute(repl), vars, 9);
  CHECK((composed - direct).is_zero());
}

TEST_CASE("jet_exact_divide recovers the quotient") {
  std::vector<std::string> vars{"x"};
  Jet a = exp_jet("x", vars, 10);
  Jet w = Jet::from_poly(parse_poly("x^2", vars), vars, 10);
  Jet num = (a * w);
  Jet q = jet_exact_divide(num, w);
  CHECK((q - a.truncated(q.order())).truncated(q.order()).is_zero());
}

TEST_CASE("invert_map_jet: random formal inverse suite") {
  std::mt19937_64 rng(424242);
  int cases = 0;
  for (int iter = 0; iter < 50; ++iter) {
    int n = 1 + static_cast<int>(rng() % 3);
    int order = 3 + static_cast<int>(rng() % 6);  // up to 8
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
    std::vector<Jet> comps;
    for (int i = 0; i < n; ++i) {
      // identity plus an upper-triangular linear mix plus random tail terms:
      // the linear part is unitriangular, hence always invertible
      Jet c = Jet::coordinate(vars[static_cast<size_t>(i)], vars, order);
      for (int j = i + 1; j < n; ++j)
        if (rng() % 2)
          c = c + Jet::coordinate(vars[static_cast<size_t>(j)], vars, order) *
                      Scalar(static_cast<long>(rng() % 5) - 2);
      for (int t = 0; t < 3; ++t) {
        Exponents e(static_cast<size_t>(n), 0);
        int deg = 0;
        for (int v = 0; v < n; ++v) {
          e[static_cast<size_t>(v)] = static_cast<int>(rng() % 3);
          deg += e[static_cast<size_t>(v)];
        }
        if (deg < 2 || deg > order) continue;
        c.add_term(e, Scalar(static_cast<long>(rng() % 7) - 3));
      }
      comps.push_back(c);
    }
    MapJet phi(comps);
    MapJet psi = invert_map_jet(phi);
    std::map<std::string, Jet> inner;
    for (int i = 0; i < n; ++i) inner.emplace(vars[static_cast<size_t>(i)], psi.components[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) {
      Jet round = phi.components[static_cast<size_t>(i)].compose(inner);
      CHECK((round - Jet::coordinate(vars[static_cast<size_t>(i)], vars, order)).is_zero());
    }
    ++cases;
  }
  CHECK(cases == 50);
}

TEST_CASE("numeric evaluation tracks the series") {
  std::vector<std::string> vars{"x"};
  Jet e = exp_jet("x", vars, 12);
  std::map<std::string, std::complex<double>> pt{{"x", {0.1, 0.0}}};
  CHECK(std::abs(e.eval(pt) - std::exp(std::complex<double>(0.1, 0.0))) < 1e-12);
}

TEST_CASE("parse_jet round trips through str") {
  Jet j = parse_jet("jet N=5 vars=x,y : 1 - 1/2*x + 3*x*y^2");
  CHECK(j.order() == 5);
  Jet k = parse_jet(j.str());
  CHECK((j - k).is_zero());
}

TEST_CASE("linear_change composes with the matrix") {
  std::vector<std::string> vars{"x", "y"};
  LinearChange m({{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}}, 3);
  MPoly p = parse_poly("x^2 - y + x*y", vars);
  Jet j = Jet::from_poly(p, vars, 6);
  Jet changed = j.linear_change(m);
  CHECK(changed.to_poly() == m.apply(p, vars));
  CHECK((changed.linear_change(m.inverse()) - j).is_zero());
}
