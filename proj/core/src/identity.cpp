#include "nashx/identity.hpp"

#include <cassert>
#include <stdexcept>

namespace nashx {

std::pair<MPoly, MPoly> divmod_monic_in_var(const MPoly& p, const MPoly& divisor,
                                            const std::string& var) {
  int dd = divisor.degree(var);
  if (dd < 0) throw std::invalid_argument("divmod_monic_in_var: zero divisor");
  {
    MPoly lead = divisor.coeff(var, dd);
    if (!lead.is_constant() || !(lead.constant_term() == Scalar(1)))
      throw std::invalid_argument("divmod_monic_in_var: divisor not monic in " + var);
  }
  std::vector<std::string> vars = merged_vars(p.vars(), divisor.vars());
  MPoly d = divisor.aligned_to(vars);
  MPoly r = p.aligned_to(vars);
  MPoly q = MPoly().aligned_to(vars);
  MPoly x = MPoly::variable(var, vars);
  int dr = r.degree(var);
  while (dr >= dd) {
    MPoly c = r.coeff(var, dr).aligned_to(vars);
    MPoly shift = c * x.pow(dr - dd);
    q = q + shift;
    r = r - shift * d;
    int nd = r.degree(var);
    assert(nd < dr);
    dr = nd;
  }
  return {q, r};
}

DivisionIdentity build_division_identity(const MPoly& r,
                                         const std::vector<std::string>& y_vars,
                                         const std::vector<int>& factor_degrees,
                                         const std::vector<int>& multiplicities,
                                         const std::string& var) {
  if (factor_degrees.size() != multiplicities.size())
    throw std::invalid_argument("build_division_identity: degree/multiplicity mismatch");
  if (factor_degrees.empty())
    throw std::invalid_argument("build_division_identity: no factors");
  int total = 0;
  for (size_t l = 0; l < factor_degrees.size(); ++l) {
    if (factor_degrees[l] < 1 || multiplicities[l] < 1)
      throw std::invalid_argument("build_division_identity: degrees/multiplicities must be >= 1");
    total += factor_degrees[l] * multiplicities[l];
  }

  DivisionIdentity id;
  id.var = var;
  std::vector<std::string> all_vars{var};
  for (size_t l = 0; l < factor_degrees.size(); ++l)
    for (int j = 0; j < factor_degrees[l]; ++j)
      id.a_vars.push_back("a" + std::to_string(l) + "_" + std::to_string(j));
  for (size_t j = 0; j < y_vars.size(); ++j)
    for (int k = 0; k < total; ++k)
      id.b_vars.push_back("b" + std::to_string(j) + "_" + std::to_string(k));
  for (size_t j = 0; j < y_vars.size(); ++j) id.s_vars.push_back("s" + std::to_string(j));
  all_vars = merged_vars(all_vars, id.a_vars);
  all_vars = merged_vars(all_vars, id.b_vars);
  all_vars = merged_vars(all_vars, id.s_vars);

  MPoly x = MPoly::variable(var, all_vars);
  size_t a_at = 0;
  MPoly product = MPoly::constant(Scalar(1)).aligned_to(all_vars);
  for (size_t l = 0; l < factor_degrees.size(); ++l) {
    MPoly pl = x.pow(factor_degrees[l]);
    for (int j = 0; j < factor_degrees[l]; ++j)
      pl = pl + MPoly::variable(id.a_vars[a_at++], all_vars) * x.pow(j);
    id.factors.push_back(pl);
    product = product * pl.pow(multiplicities[l]);
  }
  id.product = product;

  size_t b_at = 0;
  for (size_t j = 0; j < y_vars.size(); ++j) {
    MPoly w = MPoly().aligned_to(all_vars);
    for (int k = 0; k < total; ++k)
      w = w + MPoly::variable(id.b_vars[b_at++], all_vars) * x.pow(k);
    id.alphas.push_back(product * MPoly::variable(id.s_vars[j], all_vars) + w);
  }

  std::map<std::string, MPoly> subst;
  for (size_t j = 0; j < y_vars.size(); ++j) subst.emplace(y_vars[j], id.alphas[j]);
  MPoly pulled = r.aligned_to(y_vars).substitute(subst);

  auto [q, rem] = divmod_monic_in_var(pulled, product, var);
  id.quotient = q;
  for (int k = 0; k < total; ++k) {
    MPoly tk = rem.coeff(var, k);
    if (tk.degree(var) >= 0 && tk.degree(var) > 0)
      throw std::logic_error("build_division_identity: T depends on the distinguished variable");
    for (const auto& s : id.s_vars)
      if (tk.degree(s) > 0)
        throw std::logic_error("build_division_identity: T depends on an abstract quotient");
    std::vector<std::string> ab = merged_vars(id.a_vars, id.b_vars);
    id.t_polys.push_back(tk.aligned_to(ab));
  }
  return id;
}

}  // namespace nashx
