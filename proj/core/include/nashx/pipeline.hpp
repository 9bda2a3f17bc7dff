#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashx/identity.hpp"
#include "nashx/variety.hpp"
#include "nashx/weierstrass.hpp"

namespace nashx {

/// Unitary annihilating polynomial in one z-variable with coefficients in
/// Q(i)[x]; certifies that the associated jet is (approximately) Nash.
struct NashWitness {
  std::string var;
  MPoly poly;  // unitary in var
  int degree = 0;
};

struct NuEntry {
  int nu = 0;
  MapJet approximant;  // unknown components (graph mode) or all ambient components
  std::vector<NashWitness> witnesses;
  Jet u_composed;  // R(rho(f^nu)) in the working coordinates, when computed
  bool has_u = false;
};

struct ApproxResult {
  int jet_order = 0;
  int base_dim = 0;   // m
  int reg_order = 0;  // d = valuation of the regularized u
  bool graph_mode = false;
  std::string witness_var;
  Jet u;  // R(rho(f)) in the working coordinates, when computed
  bool has_u = false;
  std::vector<NuEntry> entries;
};

struct PipelineError : std::runtime_error {
  std::string stage;
  std::uint64_t seed = 0;
  PipelineError(std::string stage_, std::uint64_t seed_, const std::string& message)
      : std::runtime_error("[" + stage_ + " seed=" + std::to_string(seed_) + "] " + message),
        stage(std::move(stage_)),
        seed(seed_) {}
};

struct NashProblem {
  std::vector<std::string> x_vars;    // domain variables of the branch jets
  std::vector<std::string> unknowns;  // names of the approximated components
  /// Zero set the branch lies on. Non-graph mode: ambient vars = unknowns.
  /// Graph mode: equations mention x_vars too; ambient vars = x_vars ++ unknowns.
  VarietyPresentation variety;
  bool graph_mode = false;
  MapJet f;  // one branch jet per unknown, in x_vars
  int jet_order = 12;
  int nu_min = 2;
  int nu_max = 8;
  std::uint64_t seed = 42;
  GenericityBudgets budgets;
};

/// The full recursive pipeline.
ApproxResult approximate(const NashProblem& problem);

/// One-variable base case: u = R(x, f(x)) = x^alpha0 * unit; each component
/// is split as f_j = x^alpha0 * H_j + r_j and approximated by truncating H_j.
/// R lives in (x, unknown) variables matched positionally to f's components.
ApproxResult base_case_1d(const MapJet& f, const MPoly& r,
                          const std::vector<std::string>& unknowns, int nu_min, int nu_max);

/// f_i^nu = H_i^nu * prod W_l^{k_l} + r_i^nu as a jet over x_vars.
Jet assemble_approximant(const MPoly& h_trunc,
                         const std::vector<std::pair<DistinguishedPoly, int>>& factors,
                         const std::vector<Jet>& remainder_coeffs,
                         const std::vector<std::string>& x_vars, const std::string& var,
                         int order);

/// Witness for z = expr(x, t_1..t_c) where each symbol t carries a unitary
/// witness Q(x', t): iterated resultants, then squarefree + monic in z_var.
NashWitness annihilating_polynomial(const MPoly& expr, const std::string& z_var,
                                    const std::vector<std::string>& x_vars,
                                    const std::map<std::string, MPoly>& coeff_witnesses);

/// Step 11: witnesses for the tail coordinates of V^nu = V cap {P_i(x,z_i)},
/// one per fiber variable past the first m, via elimination.
std::vector<NashWitness> project_tail(const VarietyPresentation& v, int m,
                                      const std::vector<std::string>& x_vars,
                                      const std::vector<NashWitness>& base_witnesses,
                                      const std::string& witness_var, long budget);

/// Solve the fiber block of gens = 0 for jets, given base-component jets and
/// exact initial fiber values with invertible square Jacobian.
std::vector<Jet> solve_fiber_on_variety(const std::vector<MPoly>& gens,
                                        const std::vector<std::string>& ambient_vars, int m,
                                        const std::vector<Jet>& base,
                                        const std::vector<Scalar>& fiber0,
                                        const std::vector<std::string>& x_vars, int order);

/// Normalize to leading coefficient 1 in var; the leading coefficient must
/// be a nonzero constant.
MPoly make_monic_in(const MPoly& p, const std::string& var);

}  // namespace nashx
