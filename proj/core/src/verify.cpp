#include "nashx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nashx {

bool VerificationReport::all_ok() const {
  for (const auto& e : entries) {
    for (bool ok : e.witness_ok)
      if (!ok) return false;
    if (e.membership_defect_order <= jet_order) return false;
    if (e.has_chain && !e.chain_ok) return false;
  }
  return true;
}

bool check_witness(const NashWitness& p, const Jet& f) {
  std::map<std::string, Jet> assign;
  for (const auto& v : p.poly.vars()) {
    if (v == p.var) continue;
    assign.emplace(v, Jet::coordinate(v, f.vars(), f.order()));
  }
  assign.emplace(p.var, f);
  return eval_poly_at_jets(p.poly, assign).is_zero();
}

int check_membership(const std::vector<MPoly>& equations,
                     const std::map<std::string, Jet>& assign, int order) {
  int defect = order + 1;
  for (const auto& q : equations) {
    Jet v = eval_poly_at_jets(q, assign);
    if (!v.is_zero()) defect = std::min(defect, v.valuation());
  }
  return defect;
}

namespace {

std::vector<std::map<std::string, std::complex<double>>> sample_points(
    const std::vector<std::string>& vars, double radius, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    // deterministic uniform draw in [-1, 1]
    return static_cast<double>(rng() % 2000001) / 1000000.0 - 1.0;
  };
  double box = radius / std::sqrt(2.0);
  std::vector<std::map<std::string, std::complex<double>>> pts;
  for (int s = 0; s < samples; ++s) {
    std::map<std::string, std::complex<double>> p;
    for (const auto& v : vars) p.emplace(v, std::complex<double>(draw() * box, draw() * box));
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

double sup_error(const MapJet& f, const MapJet& g, double radius, int samples,
                 std::uint64_t seed) {
  if (f.size() != g.size()) throw std::invalid_argument("sup_error: component count mismatch");
  auto pts = sample_points(f.vars(), radius, samples, seed);
  double worst = 0.0;
  for (const auto& p : pts)
    for (size_t j = 0; j < f.size(); ++j)
      worst = std::max(worst, std::abs(f.components[j].eval(p) - g.components[j].eval(p)));
  return worst;
}

std::vector<double> convergence_metrics(const MapJet& f, const ApproxResult& result,
                                        double radius, int samples, std::uint64_t seed) {
  std::vector<double> out;
  for (const auto& e : result.entries)
    out.push_back(sup_error(f, e.approximant, radius, samples, seed));
  return out;
}

bool chain_check_1d(const Jet& u, const std::vector<Jet>& u_nu) {
  if (u.vars().size() != 1) throw std::invalid_argument("chain_check_1d: one-variable jets only");
  if (u.is_zero()) throw std::invalid_argument("chain_check_1d: u vanishes to jet order");
  int alpha0 = u.valuation();
  for (const auto& v : u_nu) {
    if (v.is_zero()) return false;
    if (v.valuation() < alpha0) return false;
    // unit cofactor: the x^alpha0 coefficient must be nonzero
    Exponents e{alpha0};
    auto it = v.terms().find(e);
    if (it == v.terms().end() || it->second.is_zero()) return false;
  }
  return true;
}

VerificationReport verify_result(const std::vector<MPoly>& equations,
                                 const std::vector<std::string>& x_vars,
                                 const std::vector<std::string>& unknowns, const MapJet& f,
                                 const ApproxResult& result, double radius, int samples,
                                 std::uint64_t seed) {
  VerificationReport report;
  report.jet_order = result.jet_order;
  bool chain_possible = x_vars.size() == 1 && result.has_u && !result.u.is_zero();
  for (const auto& entry : result.entries) {
    VerificationEntry v;
    v.nu = entry.nu;
    for (size_t j = 0; j < entry.witnesses.size(); ++j)
      v.witness_ok.push_back(check_witness(entry.witnesses[j], entry.approximant.components[j]));
    std::map<std::string, Jet> assign;
    for (const auto& xv : x_vars)
      assign.emplace(xv, Jet::coordinate(xv, x_vars, result.jet_order));
    for (size_t j = 0; j < unknowns.size(); ++j)
      assign.emplace(unknowns[j], entry.approximant.components[j]);
    v.membership_defect_order = check_membership(equations, assign, result.jet_order);
    v.sup_error = sup_error(f, entry.approximant, radius, samples, seed);
    if (chain_possible && entry.has_u) {
      v.has_chain = true;
      v.chain_ok = chain_check_1d(result.u, {entry.u_composed});
    }
    report.entries.push_back(std::move(v));
  }
  return report;
}

}  // namespace nashx
