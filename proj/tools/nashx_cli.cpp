#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nashx/problem.hpp"
#include "nashx/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    std::string piece = csv.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

nashx::DistinguishedPoly poly_to_distinguished(const nashx::MPoly& p, const std::string& var,
                                               const std::vector<std::string>& xprime,
                                               int order) {
  int d = p.degree(var);
  nashx::DistinguishedPoly w;
  w.var = var;
  w.xprime_vars = xprime;
  for (int k = 0; k < d; ++k)
    w.coeffs.push_back(nashx::Jet::from_poly(p.coeff(var, k).aligned_to(xprime), xprime, order));
  nashx::MPoly lead = p.coeff(var, d);
  if (!lead.is_constant() || !(lead.constant_term() == nashx::Scalar(1)))
    throw std::runtime_error("divisor must be unitary in " + var);
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nashx: Nash approximation of holomorphic solutions of algebraic systems"};
  app.require_subcommand(1);

  // run
  std::string problem_path, out_path = "report.json", nu_override, radius_override;
  std::int64_t seed_override = -1;
  int order_override = -1, samples_override = -1;
  auto* run = app.add_subcommand("run", "full pipeline on a problem file, JSON report");
  run->add_option("problem", problem_path, "problem file")->required();
  run->add_option("--out", out_path, "report path");
  run->add_option("--seed", seed_override, "override seed");
  run->add_option("--nu", nu_override, "override nu range, e.g. 2..8");
  run->add_option("--order", order_override, "override jet order N");
  run->add_option("--radius", radius_override, "override sampling radius (rational)");
  run->add_option("--samples", samples_override, "override sample count");

  // resultant / discriminant
  std::string poly_a, poly_b, var_name, vars_csv;
  auto* res = app.add_subcommand("resultant", "res_var(a, b) over exact coefficients");
  res->add_option("a", poly_a)->required();
  res->add_option("b", poly_b)->required();
  res->add_option("--var", var_name, "eliminated variable")->required();
  res->add_option("--vars", vars_csv, "comma-separated variable list")->required();

  auto* disc = app.add_subcommand("discriminant", "disc_var(p)");
  disc->add_option("p", poly_a)->required();
  disc->add_option("--var", var_name)->required();
  disc->add_option("--vars", vars_csv)->required();

  // prepare / divide
  std::string jet_text, divisor_text;
  std::int64_t prep_seed = 42;
  auto* prep = app.add_subcommand("prepare", "regularize + Weierstrass preparation of a jet");
  prep->add_option("u", jet_text, "jet text, e.g. 'jet N=8 vars=x1,x2 : x2^2 - x1'")->required();
  prep->add_option("--seed", prep_seed, "seed for the regularizing change");

  auto* div = app.add_subcommand("divide", "Weierstrass division f = W*H + r");
  div->add_option("f", jet_text, "dividend jet text")->required();
  div->add_option("w", divisor_text, "unitary divisor as a polynomial")->required();
  div->add_option("--var", var_name, "distinguished variable")->required();

  // verify
  std::string witness_text;
  auto* ver = app.add_subcommand("verify", "check P(x, f(x)) = 0 at jet level");
  ver->add_option("P", witness_text, "witness polynomial")->required();
  ver->add_option("f", jet_text, "jet text")->required();
  ver->add_option("--var", var_name, "witness variable")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      nashx::ProblemFile pf = nashx::parse_problem(read_file(problem_path));
      if (seed_override >= 0) pf.problem.seed = static_cast<std::uint64_t>(seed_override);
      if (order_override > 0) {
        pf.problem.jet_order = order_override;
        // re-truncate branches by re-parsing with the new order
        std::vector<nashx::Jet> comps;
        for (auto& c : pf.problem.f.components)
          comps.push_back(nashx::Jet::from_poly(c.to_poly(), pf.problem.x_vars, order_override));
        pf.problem.f = nashx::MapJet(comps);
      }
      if (!nu_override.empty()) {
        size_t dots = nu_override.find("..");
        if (dots == std::string::npos) throw std::runtime_error("--nu expects a..b");
        pf.problem.nu_min = std::stoi(nu_override.substr(0, dots));
        pf.problem.nu_max = std::stoi(nu_override.substr(dots + 2));
      }
      if (!radius_override.empty()) {
        pf.radius_text = radius_override;
        size_t slash = radius_override.find('/');
        pf.radius = slash == std::string::npos
                        ? std::stod(radius_override)
                        : std::stod(radius_override.substr(0, slash)) /
                              std::stod(radius_override.substr(slash + 1));
      }
      if (samples_override > 0) pf.samples = samples_override;
      return nashx::run_report(pf, out_path);
    }
    if (*res || *disc) {
      auto vars = split_names(vars_csv);
      if (*res) {
        nashx::MPoly a = nashx::parse_poly(poly_a, vars);
        nashx::MPoly b = nashx::parse_poly(poly_b, vars);
        std::cout << nashx::resultant(a, b, var_name).str() << "\n";
      } else {
        nashx::MPoly a = nashx::parse_poly(poly_a, vars);
        std::cout << nashx::discriminant(a, var_name).str() << "\n";
      }
      return 0;
    }
    if (*prep) {
      nashx::Jet u = nashx::parse_jet(jet_text);
      auto [change, d] = nashx::regularize(u, static_cast<std::uint64_t>(prep_seed));
      nashx::Jet ur = u.linear_change(change);
      auto [unit, w] = nashx::prepare(ur, d);
      std::cout << "d = " << d << "\n";
      if (!change.is_identity()) std::cout << "(after a linear change of coordinates)\n";
      std::cout << "unit: " << unit.str() << "\n";
      std::cout << "W: " << w.str() << "\n";
      return 0;
    }
    if (*div) {
      nashx::Jet f = nashx::parse_jet(jet_text);
      std::vector<std::string> xprime;
      for (const auto& v : f.vars())
        if (v != var_name) xprime.push_back(v);
      nashx::MPoly wpoly = nashx::parse_poly(divisor_text, f.vars());
      auto w = poly_to_distinguished(wpoly, var_name, xprime, f.order());
      auto dr = nashx::divide(f, w);
      std::cout << "H: " << dr.quotient.str() << "\n";
      std::cout << "r: " << dr.remainder_jet(f.vars(), var_name, f.order()).str() << "\n";
      return 0;
    }
    if (*ver) {
      nashx::Jet f = nashx::parse_jet(jet_text);
      std::vector<std::string> vars = f.vars();
      vars = nashx::merged_vars(vars, {var_name});
      nashx::MPoly p = nashx::parse_poly(witness_text, vars);
      nashx::NashWitness w{var_name, p, p.degree(var_name)};
      bool ok = nashx::check_witness(w, f);
      std::cout << (ok ? "annihilates to jet order" : "does NOT annihilate") << "\n";
      return ok ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
