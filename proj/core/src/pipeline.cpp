#include "nashx/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

namespace nashx {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t attempt) {
  std::uint64_t v = seed ^ (stage * 0x9e3779b97f4a7c15ULL) ^ (attempt * 0xbf58476d1ce4e5b9ULL);
  v ^= v >> 30;
  v *= 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return v;
}

MPoly rename_var(const MPoly& p, const std::string& from, const std::string& to) {
  if (from == to) return p;
  std::map<std::string, MPoly> repl;
  repl.emplace(from, MPoly::variable(to));
  return p.substitute(repl).pruned();
}

std::string fresh_witness_var(const std::vector<std::string>& taken) {
  for (const std::string& cand : {"z", "w", "zz", "_z"})
    if (std::find(taken.begin(), taken.end(), cand) == taken.end()) return cand;
  return "_zvar";
}

Jet truncation_jet(const Jet& f, int nu) {
  return Jet::from_poly(f.truncate_to_poly(nu), f.vars(), f.order());
}

bool is_constant_jet(const Jet& f) {
  return (f - Jet::constant(f.constant_term(), f.vars(), f.order())).is_zero();
}

struct WitnessCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NashWitness finalize_witness(const MPoly& raw, const std::string& z_var,
                             const Jet& value, const std::vector<std::string>& x_vars) {
  MPoly p = squarefree_part(raw, z_var);
  p = make_monic_in(p, z_var);
  NashWitness w{z_var, p, p.degree(z_var)};
  std::map<std::string, Jet> assign;
  for (const auto& x : x_vars)
    assign.emplace(x, Jet::coordinate(x, value.vars(), value.order()));
  assign.emplace(z_var, value);
  Jet defect = eval_poly_at_jets(p.aligned_to(merged_vars(x_vars, {z_var})), assign);
  if (!defect.is_zero())
    throw WitnessCheckFailure("witness fails to annihilate its jet (defect valuation " +
                              std::to_string(defect.valuation()) + ")");
  return w;
}

}  // namespace

MPoly make_monic_in(const MPoly& p, const std::string& var) {
  int d = p.degree(var);
  if (d < 0) throw std::invalid_argument("make_monic_in: zero polynomial");
  MPoly lead = p.coeff(var, d);
  if (!lead.is_constant())
    throw std::runtime_error("make_monic_in: leading coefficient in " + var + " is not constant");
  return (p * lead.constant_term().inverse()).pruned();
}

Jet assemble_approximant(const MPoly& h_trunc,
                         const std::vector<std::pair<DistinguishedPoly, int>>& factors,
                         const std::vector<Jet>& remainder_coeffs,
                         const std::vector<std::string>& x_vars, const std::string& var,
                         int order) {
  Jet xn = Jet::coordinate(var, x_vars, order);
  Jet prod = Jet::constant(Scalar(1), x_vars, order);
  for (const auto& [w, k] : factors) {
    Jet wj = w.to_jet(order).aligned_to(x_vars);
    for (int i = 0; i < k; ++i) prod = prod * wj;
  }
  Jet h = Jet::from_poly(h_trunc, x_vars, order);
  Jet out = h * prod;
  Jet xpow = Jet::constant(Scalar(1), x_vars, order);
  for (size_t k = 0; k < remainder_coeffs.size(); ++k) {
    if (k > 0) xpow = xpow * xn;
    out = out + remainder_coeffs[k].aligned_to(x_vars) * xpow;
  }
  return out;
}

NashWitness annihilating_polynomial(const MPoly& expr, const std::string& z_var,
                                    const std::vector<std::string>& x_vars,
                                    const std::map<std::string, MPoly>& coeff_witnesses) {
  MPoly acc = MPoly::variable(z_var) - expr;
  for (const auto& [sym, q] : coeff_witnesses) {
    if (acc.degree(sym) <= 0) continue;
    acc = resultant(acc, q, sym).pruned();
  }
  for (const auto& [sym, q] : coeff_witnesses)
    if (acc.degree(sym) > 0)
      throw std::runtime_error("annihilating_polynomial: symbol " + sym + " survived elimination");
  MPoly p = make_monic_in(squarefree_part(acc, z_var), z_var);
  (void)x_vars;
  return NashWitness{z_var, p, p.degree(z_var)};
}

std::vector<NashWitness> project_tail(const VarietyPresentation& v, int m,
                                      const std::vector<std::string>& x_vars,
                                      const std::vector<NashWitness>& base_witnesses,
                                      const std::string& witness_var, long budget) {
  int s = v.ambient_dim() - m;
  std::vector<NashWitness> out;
  if (s <= 0) return out;
  std::vector<MPoly> gens = v.generators;
  for (size_t i = 0; i < base_witnesses.size() && static_cast<int>(i) < m; ++i)
    gens.push_back(rename_var(base_witnesses[i].poly, base_witnesses[i].var,
                              v.ambient_vars[i]));
  for (int t = m; t < v.ambient_dim(); ++t) {
    std::vector<std::string> keep = x_vars;
    keep.push_back(v.ambient_vars[static_cast<size_t>(t)]);
    auto elim = buchberger_eliminate(gens, keep, budget);
    UnitaryWitness w;
    if (!find_unitary_witness(elim, v.ambient_vars[static_cast<size_t>(t)], x_vars, &w))
      throw std::runtime_error("project_tail: no unitary witness for " +
                               v.ambient_vars[static_cast<size_t>(t)]);
    MPoly p = make_monic_in(squarefree_part(w.poly, v.ambient_vars[static_cast<size_t>(t)]),
                            v.ambient_vars[static_cast<size_t>(t)]);
    p = rename_var(p, v.ambient_vars[static_cast<size_t>(t)], witness_var);
    out.push_back(NashWitness{witness_var, p, p.degree(witness_var)});
  }
  return out;
}

std::vector<Jet> solve_fiber_on_variety(const std::vector<MPoly>& gens,
                                        const std::vector<std::string>& ambient_vars, int m,
                                        const std::vector<Jet>& base,
                                        const std::vector<Scalar>& fiber0,
                                        const std::vector<std::string>& x_vars, int order) {
  int s = static_cast<int>(ambient_vars.size()) - m;
  if (static_cast<int>(fiber0.size()) != s || static_cast<int>(base.size()) != m)
    throw std::invalid_argument("solve_fiber_on_variety: arity mismatch");
  if (s == 0) return {};

  std::map<std::string, Scalar> point0;
  for (int j = 0; j < m; ++j) point0.emplace(ambient_vars[static_cast<size_t>(j)], base[static_cast<size_t>(j)].constant_term());
  for (int i = 0; i < s; ++i) point0.emplace(ambient_vars[static_cast<size_t>(m + i)], fiber0[static_cast<size_t>(i)]);

  // square subsystem with invertible fiber Jacobian at the constant point
  std::vector<int> chosen;
  std::vector<std::vector<Scalar>> jinv;
  std::vector<int> idx;
  std::function<bool(int)> pick = [&](int start) {
    if (static_cast<int>(idx.size()) == s) {
      std::vector<std::vector<Scalar>> jac(static_cast<size_t>(s), std::vector<Scalar>(static_cast<size_t>(s)));
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c)
          jac[static_cast<size_t>(r)][static_cast<size_t>(c)] =
              gens[static_cast<size_t>(idx[static_cast<size_t>(r)])]
                  .derivative(ambient_vars[static_cast<size_t>(m + c)])
                  .eval(point0);
      try {
        jinv = invert_matrix(jac);
      } catch (const std::domain_error&) {
        return false;
      }
      chosen = idx;
      return true;
    }
    for (int g = start; g < static_cast<int>(gens.size()); ++g) {
      idx.push_back(g);
      if (pick(g + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  if (!pick(0))
    throw PrecisionInconclusive(
        "solve_fiber_on_variety: no square subsystem with invertible fiber Jacobian");

  std::vector<Jet> z;
  for (int i = 0; i < s; ++i) z.push_back(Jet::constant(fiber0[static_cast<size_t>(i)], x_vars, order));

  for (int round = 0; round <= order; ++round) {
    std::map<std::string, Jet> assign;
    for (int j = 0; j < m; ++j) assign.emplace(ambient_vars[static_cast<size_t>(j)], base[static_cast<size_t>(j)]);
    for (int i = 0; i < s; ++i) assign.emplace(ambient_vars[static_cast<size_t>(m + i)], z[static_cast<size_t>(i)]);
    std::vector<Jet> res;
    bool all_zero = true;
    for (int r = 0; r < s; ++r) {
      Jet v = eval_poly_at_jets(gens[static_cast<size_t>(chosen[static_cast<size_t>(r)])], assign);
      if (!v.is_zero()) all_zero = false;
      res.push_back(v);
    }
    if (all_zero) break;
    for (int i = 0; i < s; ++i) {
      Jet delta(x_vars, order);
      for (int r = 0; r < s; ++r)
        delta = delta + res[static_cast<size_t>(r)] * jinv[static_cast<size_t>(i)][static_cast<size_t>(r)];
      z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] - delta;
    }
  }

  std::map<std::string, Jet> assign;
  for (int j = 0; j < m; ++j) assign.emplace(ambient_vars[static_cast<size_t>(j)], base[static_cast<size_t>(j)]);
  for (int i = 0; i < s; ++i) assign.emplace(ambient_vars[static_cast<size_t>(m + i)], z[static_cast<size_t>(i)]);
  for (const auto& g : gens)
    if (!eval_poly_at_jets(g, assign).is_zero())
      throw PrecisionInconclusive("solve_fiber_on_variety: residual generator does not vanish");
  return z;
}

ApproxResult base_case_1d(const MapJet& f, const MPoly& r,
                          const std::vector<std::string>& unknowns, int nu_min, int nu_max) {
  if (f.size() == 0 || f.vars().size() != 1)
    throw std::invalid_argument("base_case_1d: expected a one-variable map jet");
  if (f.size() != unknowns.size())
    throw std::invalid_argument("base_case_1d: component/unknown count mismatch");
  const std::vector<std::string>& x = f.vars();
  int order = f.order();

  std::map<std::string, Jet> assign;
  assign.emplace(x[0], Jet::coordinate(x[0], x, order));
  for (size_t j = 0; j < unknowns.size(); ++j) assign.emplace(unknowns[j], f.components[j]);
  Jet u = eval_poly_at_jets(r, assign);
  if (u.is_zero())
    throw PrecisionInconclusive("base_case_1d: R(x, f(x)) vanishes to jet order");
  int alpha0 = u.valuation();

  std::vector<std::string> taken = x;
  taken.insert(taken.end(), unknowns.begin(), unknowns.end());
  std::string wvar = fresh_witness_var(taken);

  ApproxResult result;
  result.jet_order = order;
  result.reg_order = alpha0;
  result.witness_var = wvar;
  result.u = u;
  result.has_u = true;

  MPoly xp = MPoly::variable(x[0]).pow(alpha0);
  Jet w = Jet::from_poly(xp, x, order);
  std::vector<MPoly> tails;  // r_j
  std::vector<Jet> quots;    // H_j
  for (size_t j = 0; j < f.size(); ++j) {
    MPoly rj = alpha0 > 0 ? f.components[j].truncate_to_poly(alpha0 - 1) : MPoly();
    tails.push_back(rj);
    Jet num = f.components[j] - Jet::from_poly(rj, x, order);
    quots.push_back(alpha0 == 0 ? num : jet_exact_divide(num, w));
  }

  for (int nu = nu_min; nu <= nu_max; ++nu) {
    NuEntry entry;
    entry.nu = nu;
    std::vector<Jet> comps;
    std::map<std::string, Jet> assign_nu;
    assign_nu.emplace(x[0], Jet::coordinate(x[0], x, order));
    for (size_t j = 0; j < f.size(); ++j) {
      MPoly poly = xp * quots[j].truncate_to_poly(nu) + tails[j];
      Jet comp = Jet::from_poly(poly, x, order);
      comps.push_back(comp);
      entry.witnesses.push_back(
          NashWitness{wvar, MPoly::variable(wvar) - poly, 1});
      assign_nu.emplace(unknowns[j], comp);
    }
    entry.approximant = MapJet(comps);
    entry.u_composed = eval_poly_at_jets(r, assign_nu);
    entry.has_u = true;
    result.entries.push_back(std::move(entry));
  }
  return result;
}

namespace {

// ---- the recursive pipeline --------------------------------------------

struct Stage {
  const char* name;
  std::uint64_t seed;
  [[noreturn]] void fail(const std::string& msg) const { throw PipelineError(name, seed, msg); }
};

void trace(const std::string& msg) {
  static const bool on = std::getenv("NASHX_TRACE") != nullptr;
  if (on) std::cerr << "[nashx] " << msg << "\n";
}

std::vector<Jet> matrix_times_components(const std::vector<std::vector<Scalar>>& m,
                                         const std::vector<Jet>& f) {
  std::vector<Jet> out;
  for (size_t i = 0; i < m.size(); ++i) {
    Jet acc(f.front().vars(), f.front().order());
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j].is_zero()) continue;
      acc = acc + f[j] * m[i][j];
    }
    out.push_back(acc);
  }
  return out;
}

void apply_graph_correction(std::vector<Jet>& comps, std::vector<NashWitness>& wits, int n,
                            const std::vector<std::string>& x_vars, const std::string& wvar,
                            long budget) {
  std::vector<Jet> phi(comps.begin(), comps.begin() + n);
  for (const auto& c : phi)
    if (!c.constant_term().is_zero())
      throw std::runtime_error("graph correction: first-block component does not vanish at 0");
  MapJet psi = invert_map_jet(MapJet(phi));
  std::map<std::string, Jet> inner;
  for (int i = 0; i < n; ++i) inner.emplace(x_vars[static_cast<size_t>(i)], psi.components[static_cast<size_t>(i)]);

  std::vector<NashWitness> old = wits;
  for (size_t j = static_cast<size_t>(n); j < comps.size(); ++j) comps[j] = comps[j].compose(inner);
  for (int i = 0; i < n; ++i) {
    comps[static_cast<size_t>(i)] = Jet::coordinate(x_vars[static_cast<size_t>(i)], x_vars, comps.front().order());
    wits[static_cast<size_t>(i)] =
        NashWitness{wvar, MPoly::variable(wvar) - MPoly::variable(x_vars[static_cast<size_t>(i)]), 1};
  }

  std::vector<std::string> xt;
  for (int i = 0; i < n; ++i) xt.push_back("_xt" + std::to_string(i));
  std::map<std::string, MPoly> to_tilde;
  for (int i = 0; i < n; ++i) to_tilde.emplace(x_vars[static_cast<size_t>(i)], MPoly::variable(xt[static_cast<size_t>(i)]));

  for (size_t j = static_cast<size_t>(n); j < comps.size(); ++j) {
    std::vector<MPoly> gens;
    for (int k = 0; k < n; ++k) {
      MPoly g = old[static_cast<size_t>(k)].poly.substitute(to_tilde);
      g = rename_var(g, old[static_cast<size_t>(k)].var, x_vars[static_cast<size_t>(k)]);
      gens.push_back(g.pruned());
    }
    gens.push_back(old[j].poly.substitute(to_tilde).pruned());
    std::vector<std::string> keep = x_vars;
    keep.push_back(wvar);
    auto elim = buchberger_eliminate(gens, keep, budget);
    UnitaryWitness w;
    if (!find_unitary_witness(elim, wvar, x_vars, &w))
      throw std::runtime_error("graph correction: no unitary corrected witness");
    wits[j] = finalize_witness(w.poly, wvar, comps[j], x_vars);
  }
}

}  // namespace

ApproxResult approximate(const NashProblem& problem) {
  const int order = problem.jet_order;
  const std::vector<std::string>& x = problem.x_vars;
  const int n = static_cast<int>(x.size());
  const std::uint64_t seed = problem.seed;

  Stage input{"input", seed};
  if (problem.f.size() != problem.unknowns.size())
    input.fail("one branch jet per unknown required");
  if (problem.f.size() == 0) input.fail("no unknowns");
  if (problem.nu_min > problem.nu_max || problem.nu_min < 0) input.fail("bad nu range");
  for (const auto& c : problem.f.components) {
    if (c.order() != order) input.fail("branch jet order mismatch");
    if (c.vars() != x) input.fail("branch jet variables mismatch");
  }

  std::vector<std::string> ambient = problem.variety.ambient_vars;
  std::vector<Jet> big;
  if (problem.graph_mode) {
    std::vector<std::string> expect = x;
    expect.insert(expect.end(), problem.unknowns.begin(), problem.unknowns.end());
    if (ambient != expect) input.fail("graph mode expects ambient vars = x ++ unknowns");
    for (const auto& xi : x) big.push_back(Jet::coordinate(xi, x, order));
    for (const auto& c : problem.f.components) big.push_back(c);
  } else {
    if (ambient != problem.unknowns) input.fail("ambient vars must equal the unknowns");
    big = problem.f.components;
  }
  const int mhat = static_cast<int>(ambient.size());

  std::vector<std::string> taken = x;
  taken.insert(taken.end(), ambient.begin(), ambient.end());
  const std::string wvar = fresh_witness_var(taken);

  ApproxResult result;
  result.jet_order = order;
  result.graph_mode = problem.graph_mode;
  result.witness_var = wvar;

  auto push_plain_entries = [&](bool constants) {
    for (int nu = problem.nu_min; nu <= problem.nu_max; ++nu) {
      NuEntry entry;
      entry.nu = nu;
      std::vector<Jet> comps;
      for (size_t j = 0; j < problem.f.size(); ++j) {
        Jet c = constants ? problem.f.components[j] : truncation_jet(problem.f.components[j], nu);
        comps.push_back(c);
        MPoly poly = MPoly::variable(wvar) -
                     (constants ? MPoly::constant(c.constant_term()) : c.truncate_to_poly(order));
        entry.witnesses.push_back(NashWitness{wvar, poly, 1});
      }
      entry.approximant = MapJet(comps);
      result.entries.push_back(std::move(entry));
    }
  };

  // jet-level membership of the branch
  {
    std::map<std::string, Jet> assign;
    for (int j = 0; j < mhat; ++j) assign.emplace(ambient[static_cast<size_t>(j)], big[static_cast<size_t>(j)]);
    for (const auto& g : problem.variety.generators)
      if (!eval_poly_at_jets(g, assign).is_zero())
        input.fail("branch does not satisfy the equations at jet level");
  }

  bool no_constraints = true;
  for (const auto& g : problem.variety.generators)
    if (!g.is_zero()) no_constraints = false;
  if (no_constraints) {
    push_plain_entries(false);
    result.base_dim = mhat;
    return result;
  }

  bool all_const = true;
  for (const auto& c : problem.f.components)
    if (!is_constant_jet(c)) all_const = false;
  if (all_const && !problem.graph_mode) {
    push_plain_entries(true);
    return result;
  }

  // step 1.  If every generator dies under pinning the identically-zero
  // components to zero, the branch lies on that coordinate plane inside the
  // variety; approximating on the plane keeps the constraints exact and the
  // plane is smooth, so no descent is needed.
  VarietyPresentation v;
  bool pinned = false;
  {
    std::map<std::string, MPoly> pin;
    std::vector<std::string> zvars;
    for (int j = 0; j < mhat; ++j)
      if (big[static_cast<size_t>(j)].is_zero()) {
        zvars.push_back(ambient[static_cast<size_t>(j)]);
        pin.emplace(ambient[static_cast<size_t>(j)], MPoly());
      }
    if (!zvars.empty()) {
      bool kills_all = true;
      for (const auto& g : problem.variety.generators)
        if (!g.substitute(pin).is_zero()) {
          kills_all = false;
          break;
        }
      if (kills_all) {
        v.ambient_vars = ambient;
        for (const auto& z : zvars)
          v.generators.push_back(MPoly::variable(z).aligned_to(ambient));
        v.codim = static_cast<int>(zvars.size());
        pinned = true;
        trace("pinned zero components: codim " + std::to_string(v.codim));
      }
    }
  }
  if (!pinned) {
    trace("singular_descent");
    try {
      v = singular_descent(problem.variety, MapJet(big));
    } catch (const std::exception& e) {
      throw PipelineError("singular_descent", seed, e.what());
    }
  }
  const int m = v.ambient_dim() - v.codim;
  if (m < 0) throw PipelineError("singular_descent", seed, "variety reduced to a point");
  result.base_dim = m;

  // step 2
  trace("properize (m = " + std::to_string(m) + ", ambient " + std::to_string(mhat) + ")");
  LinearChange mchg;
  try {
    mchg = properize(v, m, derive_seed(seed, 11, 0), problem.budgets);
  } catch (const std::exception& e) {
    throw PipelineError("properize", seed, e.what());
  }
  std::vector<MPoly> gens_hat;
  for (const auto& g : v.generators) gens_hat.push_back(mchg.apply(g.aligned_to(ambient), ambient));
  VarietyPresentation vhat{ambient, gens_hat, v.codim};
  std::vector<Jet> fhat = matrix_times_components(mchg.inverse_matrix(), big);

  // steps 3-4
  trace("choose_form");
  BranchedCoverData cover;
  std::vector<Jet> base_f(fhat.begin(), fhat.begin() + m);
  try {
    cover = choose_form_and_discriminant(vhat, m, base_f, derive_seed(seed, 12, 0), problem.budgets);
  } catch (const std::exception& e) {
    throw PipelineError("choose_form", seed, e.what());
  }

  Jet u;
  {
    std::map<std::string, Jet> assign;
    for (int j = 0; j < m; ++j) assign.emplace(ambient[static_cast<size_t>(j)], fhat[static_cast<size_t>(j)]);
    u = eval_poly_at_jets(cover.discriminant, assign);
  }
  if (u.is_zero())
    throw PipelineError("compose_u", seed, "R(rho(f)) vanishes to jet order (precision inconclusive)");

  // step 5 (regularity)
  LinearChange jchg;
  int d = 0;
  try {
    auto reg = regularize(u, derive_seed(seed, 13, 0));
    jchg = reg.first;
    d = reg.second;
  } catch (const std::exception& e) {
    throw PipelineError("regularize", seed, e.what());
  }
  result.reg_order = d;
  trace("regularized, d = " + std::to_string(d));

  std::vector<std::vector<int>> witness_degrees(static_cast<size_t>(mhat));

  if (d == 0) {
    // regular point of the cover: base components approximate freely, the
    // fiber block is re-solved on the variety so membership stays exact.
    result.u = u;
    result.has_u = true;
    std::vector<Scalar> fiber0;
    for (int i = m; i < mhat; ++i) fiber0.push_back(fhat[static_cast<size_t>(i)].constant_term());

    std::vector<std::string> tv;
    for (int j = 0; j < mhat; ++j) tv.push_back("_t" + std::to_string(j));
    std::map<std::string, MPoly> amb_to_tv;
    for (int j = 0; j < mhat; ++j) amb_to_tv.emplace(ambient[static_cast<size_t>(j)], MPoly::variable(tv[static_cast<size_t>(j)]));
    std::vector<MPoly> ideal0;
    for (const auto& g : v.generators) ideal0.push_back(g.substitute(amb_to_tv).pruned());

    for (int nu = problem.nu_min; nu <= problem.nu_max; ++nu) {
      NuEntry entry;
      entry.nu = nu;
      std::vector<MPoly> basepolys;
      std::vector<Jet> base_nu;
      for (int j = 0; j < m; ++j) {
        basepolys.push_back(fhat[static_cast<size_t>(j)].truncate_to_poly(nu));
        base_nu.push_back(Jet::from_poly(basepolys.back(), x, order));
      }
      trace("fiber solve nu = " + std::to_string(nu));
      std::vector<Jet> fiber_nu;
      try {
        fiber_nu = solve_fiber_on_variety(gens_hat, ambient, m, base_nu, fiber0, x, order);
      } catch (const std::exception& e) {
        throw PipelineError("fiber_solve", seed, e.what());
      }
      std::vector<Jet> fhat_nu = base_nu;
      fhat_nu.insert(fhat_nu.end(), fiber_nu.begin(), fiber_nu.end());
      std::vector<Jet> f_nu = matrix_times_components(mchg.matrix(), fhat_nu);

      std::vector<MPoly> ideal = ideal0;
      for (int j = 0; j < m; ++j) {
        MPoly pin;
        for (int k = 0; k < mhat; ++k) {
          const Scalar& c = mchg.inverse_matrix()[static_cast<size_t>(j)][static_cast<size_t>(k)];
          if (c.is_zero()) continue;
          pin = pin + MPoly::variable(tv[static_cast<size_t>(k)]) * c;
        }
        pin = pin - basepolys[static_cast<size_t>(j)];
        ideal.push_back(pin.pruned());
      }

      for (int i = 0; i < mhat; ++i) {
        std::vector<std::string> keep = x;
        keep.push_back(tv[static_cast<size_t>(i)]);
        std::vector<MPoly> elim;
        try {
          elim = buchberger_eliminate(ideal, keep, problem.budgets.elimination);
        } catch (const std::exception& e) {
          throw PipelineError("witness_elimination", seed, e.what());
        }
        UnitaryWitness w;
        if (!find_unitary_witness(elim, tv[static_cast<size_t>(i)], x, &w))
          throw PipelineError("witness_elimination", seed,
                              "no unitary witness for component " + ambient[static_cast<size_t>(i)]);
        MPoly raw = rename_var(w.poly, tv[static_cast<size_t>(i)], wvar);
        NashWitness nw;
        try {
          nw = finalize_witness(raw, wvar, f_nu[static_cast<size_t>(i)], x);
        } catch (const std::exception& e) {
          throw PipelineError("witness_check", seed, e.what());
        }
        witness_degrees[static_cast<size_t>(i)].push_back(nw.degree);
        entry.witnesses.push_back(std::move(nw));
      }

      {
        std::map<std::string, Jet> assign;
        for (int j = 0; j < m; ++j) assign.emplace(ambient[static_cast<size_t>(j)], fhat_nu[static_cast<size_t>(j)]);
        entry.u_composed = eval_poly_at_jets(cover.discriminant, assign);
        entry.has_u = true;
      }

      if (problem.graph_mode) {
        try {
          apply_graph_correction(f_nu, entry.witnesses, n, x, wvar, problem.budgets.elimination);
        } catch (const std::exception& e) {
          throw PipelineError("graph_correction", seed, e.what());
        }
        entry.approximant =
            MapJet(std::vector<Jet>(f_nu.begin() + n, f_nu.end()));
        entry.witnesses.erase(entry.witnesses.begin(), entry.witnesses.begin() + n);
      } else {
        entry.approximant = MapJet(f_nu);
      }
      result.entries.push_back(std::move(entry));
    }
  } else {
    // ramified case: Weierstrass machinery plus the coefficient recursion.
    const std::string xn = x.back();
    std::vector<std::string> xprime(x.begin(), x.end() - 1);

    std::vector<Jet> fcheck;
    for (const auto& c : fhat) fcheck.push_back(c.linear_change(jchg));
    Jet ucheck = u.linear_change(jchg);
    result.u = ucheck;
    result.has_u = true;

    trace("weierstrass preparation/division");
    DistinguishedPoly w;
    std::vector<std::pair<DistinguishedPoly, int>> factors;
    std::vector<DivisionResult> divs;
    try {
      auto prep = prepare(ucheck, d);
      w = prep.second;
      factors = optimal_factorization(w);
      for (int j = 0; j < m; ++j) divs.push_back(divide(fcheck[static_cast<size_t>(j)], w));
    } catch (const std::exception& e) {
      throw PipelineError("weierstrass", seed, e.what());
    }

    std::vector<int> degrees, mults;
    for (const auto& [wl, k] : factors) {
      degrees.push_back(wl.degree());
      mults.push_back(k);
    }

    trace("division identity");
    std::vector<std::string> base_names(ambient.begin(), ambient.begin() + m);
    DivisionIdentity ident;
    try {
      ident = build_division_identity(cover.discriminant.aligned_to(base_names), base_names,
                                      degrees, mults, xn);
    } catch (const std::exception& e) {
      throw PipelineError("division_identity", seed, e.what());
    }

    // flattened coefficient map g in x'
    std::vector<std::string> sym_names = ident.a_vars;
    std::vector<Jet> g_comps;
    for (size_t l = 0; l < factors.size(); ++l)
      for (int j = 0; j < degrees[l]; ++j)
        g_comps.push_back(factors[l].first.coeffs[static_cast<size_t>(j)]);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < d; ++k) g_comps.push_back(divs[static_cast<size_t>(j)].remainder_coeffs[static_cast<size_t>(k)]);
    sym_names.insert(sym_names.begin() + static_cast<long>(ident.a_vars.size()), ident.b_vars.begin(),
                     ident.b_vars.end());

    // the identity's constraint holds on g up to the precision Weierstrass
    // division can deliver; anything worse means N was too small
    std::vector<MPoly> t_nonzero;
    {
      std::map<std::string, Jet> assign;
      for (size_t c = 0; c < sym_names.size(); ++c)
        assign.emplace(sym_names[c], g_comps[c].aligned_to(xprime.empty() ? std::vector<std::string>{xn} : xprime));
      for (const auto& t : ident.t_polys) {
        if (t.is_zero()) continue;
        t_nonzero.push_back(t);
        Jet defect = eval_poly_at_jets(t, assign);
        if (!defect.is_zero() && defect.valuation() <= order - d)
          throw PipelineError("division_identity", seed,
                              "T(g) fails to vanish to the computable order (precision inconclusive)");
      }
    }

    // step 9: recursion on the coefficient map
    std::vector<std::vector<Jet>> g_nu;            // per nu entry, per symbol
    std::vector<std::map<std::string, MPoly>> q_nu;  // per nu entry, symbol -> witness poly
    int nu_count = problem.nu_max - problem.nu_min + 1;
    bool g_const = true;
    for (const auto& c : g_comps)
      if (!is_constant_jet(c)) g_const = false;

    if (g_const || n == 1) {
      for (int e = 0; e < nu_count; ++e) {
        g_nu.push_back(g_comps);
        std::map<std::string, MPoly> qs;
        for (size_t c = 0; c < sym_names.size(); ++c)
          qs.emplace(sym_names[c],
                     MPoly::variable(sym_names[c]) - MPoly::constant(g_comps[c].constant_term()));
        q_nu.push_back(std::move(qs));
      }
    } else if (t_nonzero.empty()) {
      for (int e = 0; e < nu_count; ++e) {
        int nu = problem.nu_min + e;
        std::vector<Jet> comps;
        std::map<std::string, MPoly> qs;
        for (size_t c = 0; c < sym_names.size(); ++c) {
          comps.push_back(truncation_jet(g_comps[c], nu));
          qs.emplace(sym_names[c], MPoly::variable(sym_names[c]) - comps.back().truncate_to_poly(order));
        }
        g_nu.push_back(std::move(comps));
        q_nu.push_back(std::move(qs));
      }
    } else {
      // Order the recursion unknowns so the coefficients the identity does
      // not constrain sit in the base block, and present {T=0} as a declared
      // complete intersection in the constrained block.
      std::vector<bool> involved(sym_names.size(), false);
      for (const auto& t : t_nonzero)
        for (size_t c = 0; c < sym_names.size(); ++c)
          if (t.degree(sym_names[c]) > 0) involved[c] = true;
      std::vector<size_t> perm;
      for (size_t c = 0; c < sym_names.size(); ++c)
        if (!involved[c]) perm.push_back(c);
      for (size_t c = 0; c < sym_names.size(); ++c)
        if (involved[c]) perm.push_back(c);

      NashProblem sub;
      sub.x_vars = xprime;
      for (size_t c : perm) {
        sub.unknowns.push_back(sym_names[c]);
        sub.f.components.push_back(g_comps[c].aligned_to(xprime));
      }
      sub.variety.ambient_vars = sub.unknowns;
      for (const auto& t : t_nonzero) sub.variety.generators.push_back(t.aligned_to(sub.unknowns));
      sub.variety.codim = std::min<int>(static_cast<int>(t_nonzero.size()),
                                        static_cast<int>(sub.unknowns.size()));
      sub.graph_mode = false;
      sub.jet_order = order;
      sub.nu_min = problem.nu_min;
      sub.nu_max = problem.nu_max;
      sub.seed = derive_seed(seed, 15, 0);
      sub.budgets = problem.budgets;
      trace("recursing on " + std::to_string(sub.unknowns.size()) + " coefficients, " +
            std::to_string(t_nonzero.size()) + " constraints, n' = " +
            std::to_string(xprime.size()));
      ApproxResult rec = approximate(sub);
      for (const auto& entry : rec.entries) {
        std::vector<Jet> comps(sym_names.size(), Jet());
        std::map<std::string, MPoly> qs;
        for (size_t c = 0; c < sym_names.size(); ++c) {
          comps[perm[c]] = entry.approximant.components[c];
          qs.emplace(sym_names[perm[c]],
                     rename_var(entry.witnesses[c].poly, entry.witnesses[c].var,
                                sym_names[perm[c]]));
        }
        g_nu.push_back(std::move(comps));
        q_nu.push_back(std::move(qs));
      }
    }

    // step 10: assembly and witnesses
    for (int e = 0; e < nu_count; ++e) {
      int nu = problem.nu_min + e;
      trace("assemble nu = " + std::to_string(nu));
      NuEntry entry;
      entry.nu = nu;

      std::vector<std::pair<DistinguishedPoly, int>> factors_nu;
      {
        size_t at = 0;
        for (size_t l = 0; l < factors.size(); ++l) {
          DistinguishedPoly wl;
          wl.xprime_vars = xprime;
          wl.var = xn;
          for (int j = 0; j < degrees[l]; ++j) wl.coeffs.push_back(g_nu[static_cast<size_t>(e)][at++]);
          factors_nu.emplace_back(std::move(wl), mults[l]);
        }
      }
      size_t b_start = ident.a_vars.size();

      // abstract product for the witness expressions
      MPoly prod_sym = MPoly::constant(Scalar(1));
      {
        size_t at = 0;
        for (size_t l = 0; l < factors.size(); ++l) {
          MPoly pl = MPoly::variable(xn).pow(degrees[l]);
          for (int j = 0; j < degrees[l]; ++j)
            pl = pl + MPoly::variable(ident.a_vars[at++]) * MPoly::variable(xn).pow(j);
          prod_sym = prod_sym * pl.pow(mults[l]);
        }
      }

      std::vector<Jet> fcheck_nu;
      std::vector<NashWitness> wits;
      for (int j = 0; j < m; ++j) {
        MPoly hpoly = divs[static_cast<size_t>(j)].quotient.truncate_to_poly(nu);
        std::vector<Jet> rem;
        for (int k = 0; k < d; ++k)
          rem.push_back(g_nu[static_cast<size_t>(e)][b_start + static_cast<size_t>(j) * static_cast<size_t>(d) + static_cast<size_t>(k)]);
        fcheck_nu.push_back(assemble_approximant(hpoly, factors_nu, rem, x, xn, order));

        MPoly expr = hpoly * prod_sym;
        for (int k = 0; k < d; ++k)
          expr = expr + MPoly::variable(sym_names[b_start + static_cast<size_t>(j) * static_cast<size_t>(d) + static_cast<size_t>(k)]) *
                            MPoly::variable(xn).pow(k);
        NashWitness nw;
        try {
          nw = annihilating_polynomial(expr, wvar, x, q_nu[static_cast<size_t>(e)]);
        } catch (const std::exception& ex) {
          throw PipelineError("annihilate", seed, ex.what());
        }
        wits.push_back(std::move(nw));
      }

      {
        std::map<std::string, Jet> assign;
        for (int j = 0; j < m; ++j) assign.emplace(ambient[static_cast<size_t>(j)], fcheck_nu[static_cast<size_t>(j)]);
        entry.u_composed = eval_poly_at_jets(cover.discriminant, assign);
        entry.has_u = true;
      }

      // undo J (domain) on the assembled base block
      LinearChange jinv = jchg.inverse();
      std::vector<Jet> fhat_nu;
      for (int j = 0; j < m; ++j) {
        fhat_nu.push_back(fcheck_nu[static_cast<size_t>(j)].linear_change(jinv));
        if (!jchg.is_identity()) wits[static_cast<size_t>(j)].poly = jinv.apply(wits[static_cast<size_t>(j)].poly, x);
      }

      // the fiber block is the point of the variety over the approximated
      // base, so membership stays exact
      bool base_exact = true;
      for (int j = 0; j < m; ++j)
        if (!(fhat_nu[static_cast<size_t>(j)] - fhat[static_cast<size_t>(j)]).is_zero()) base_exact = false;
      if (base_exact) {
        for (int i = m; i < mhat; ++i) fhat_nu.push_back(fhat[static_cast<size_t>(i)]);
      } else {
        trace("fiber solve nu = " + std::to_string(nu));
        std::vector<Scalar> fiber0;
        for (int i = m; i < mhat; ++i) fiber0.push_back(fhat[static_cast<size_t>(i)].constant_term());
        std::vector<Jet> base_nu(fhat_nu.begin(), fhat_nu.begin() + m);
        std::vector<Jet> fiber_nu;
        try {
          fiber_nu = solve_fiber_on_variety(gens_hat, ambient, m, base_nu, fiber0, x, order);
        } catch (const std::exception& ex) {
          throw PipelineError("fiber_solve", seed, ex.what());
        }
        fhat_nu.insert(fhat_nu.end(), fiber_nu.begin(), fiber_nu.end());
      }

      // fiber witnesses: project the variety cut down by the base witnesses
      {
        std::vector<std::string> tv;
        for (int j = 0; j < mhat; ++j) tv.push_back("_t" + std::to_string(j));
        std::map<std::string, MPoly> amb_to_tv;
        for (int j = 0; j < mhat; ++j)
          amb_to_tv.emplace(ambient[static_cast<size_t>(j)], MPoly::variable(tv[static_cast<size_t>(j)]));
        std::vector<MPoly> cut;
        for (const auto& g : gens_hat) cut.push_back(g.substitute(amb_to_tv).pruned());
        for (int j = 0; j < m; ++j)
          cut.push_back(rename_var(wits[static_cast<size_t>(j)].poly, wvar, tv[static_cast<size_t>(j)]));
        for (int i = m; i < mhat; ++i) {
          std::vector<std::string> keep = x;
          keep.push_back(tv[static_cast<size_t>(i)]);
          std::vector<MPoly> elim;
          try {
            elim = buchberger_eliminate(cut, keep, problem.budgets.elimination);
          } catch (const std::exception& ex) {
            throw PipelineError("witness_elimination", seed, ex.what());
          }
          UnitaryWitness uw;
          if (!find_unitary_witness(elim, tv[static_cast<size_t>(i)], x, &uw))
            throw PipelineError("witness_elimination", seed,
                                "no unitary witness for component " + ambient[static_cast<size_t>(i)]);
          MPoly raw = rename_var(uw.poly, tv[static_cast<size_t>(i)], wvar);
          wits.push_back(NashWitness{wvar, raw, raw.degree(wvar)});
        }
      }
      std::vector<Jet> f_nu = matrix_times_components(mchg.matrix(), fhat_nu);

      std::vector<NashWitness> final_wits;
      if (mchg.is_identity()) {
        final_wits = wits;
      } else {
        std::vector<std::string> tv;
        for (int j = 0; j < mhat; ++j) tv.push_back("_t" + std::to_string(j));
        std::vector<MPoly> base_ideal;
        for (int j = 0; j < mhat; ++j)
          base_ideal.push_back(rename_var(wits[static_cast<size_t>(j)].poly, wvar, tv[static_cast<size_t>(j)]));
        for (int i = 0; i < mhat; ++i) {
          MPoly combo = MPoly::variable(wvar);
          for (int j = 0; j < mhat; ++j) {
            const Scalar& c = mchg.matrix()[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c.is_zero()) continue;
            combo = combo - MPoly::variable(tv[static_cast<size_t>(j)]) * c;
          }
          std::vector<MPoly> gens = base_ideal;
          gens.push_back(combo.pruned());
          std::vector<std::string> keep = x;
          keep.push_back(wvar);
          std::vector<MPoly> elim;
          try {
            elim = buchberger_eliminate(gens, keep, problem.budgets.elimination);
          } catch (const std::exception& ex) {
            throw PipelineError("witness_elimination", seed, ex.what());
          }
          UnitaryWitness uw;
          if (!find_unitary_witness(elim, wvar, x, &uw))
            throw PipelineError("witness_elimination", seed,
                                "no unitary witness for component " + ambient[static_cast<size_t>(i)]);
          final_wits.push_back(NashWitness{wvar, uw.poly, uw.poly.degree(wvar)});
        }
      }

      for (int i = 0; i < mhat; ++i) {
        NashWitness nw;
        try {
          nw = finalize_witness(final_wits[static_cast<size_t>(i)].poly, wvar, f_nu[static_cast<size_t>(i)], x);
        } catch (const std::exception& ex) {
          throw PipelineError("witness_check", seed, ex.what());
        }
        witness_degrees[static_cast<size_t>(i)].push_back(nw.degree);
        final_wits[static_cast<size_t>(i)] = std::move(nw);
      }

      if (problem.graph_mode) {
        try {
          apply_graph_correction(f_nu, final_wits, n, x, wvar, problem.budgets.elimination);
        } catch (const std::exception& ex) {
          throw PipelineError("graph_correction", seed, ex.what());
        }
        entry.approximant = MapJet(std::vector<Jet>(f_nu.begin() + n, f_nu.end()));
        final_wits.erase(final_wits.begin(), final_wits.begin() + n);
      } else {
        entry.approximant = MapJet(f_nu);
      }
      entry.witnesses = std::move(final_wits);
      result.entries.push_back(std::move(entry));
    }
  }

  for (const auto& degs : witness_degrees)
    for (size_t i = 1; i < degs.size(); ++i)
      if (degs[i] != degs[0])
        throw PipelineError("annihilate", seed, "witness degree varies with nu");

  return result;
}

}  // namespace nashx
