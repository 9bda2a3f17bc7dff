#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nashx/jet.hpp"

namespace nashx {

/// Raised when a result cannot be certified at the working jet order.
struct PrecisionInconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Polynomial unitary in a distinguished variable with jet coefficients in
/// the remaining variables. Distinguished means every coefficient vanishes
/// at the origin; the general unitary variant relaxes that.
struct DistinguishedPoly {
  std::vector<std::string> xprime_vars;
  std::string var;
  /// coeffs[k] is the coefficient of var^k, k = 0..d-1 (leading 1 implicit).
  std::vector<Jet> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()); }
  bool is_distinguished() const;
  std::vector<std::string> full_vars() const;
  Jet to_jet(int order) const;
  MPoly truncate_to_poly(int nu) const;
  DistinguishedPoly derivative_in_var() const;  // not monic; helper for checks
  std::string str() const;
};

struct DivisionResult {
  Jet quotient;                      // H
  std::vector<Jet> remainder_coeffs; // coefficient of var^k, k = 0..d-1, jets in x'
  Jet remainder_jet(const std::vector<std::string>& full_vars, const std::string& var,
                    int order) const;
};

/// Linear change after which the last-variable slice of u has finite
/// valuation equal to jet_order(u). Returns the change and that order d.
std::pair<LinearChange, int> regularize(const Jet& u, std::uint64_t seed);

/// Weierstrass preparation u = unit * W to jet order, for u regular of
/// order d in its last variable. Graded Hensel lifting along x'-degree.
std::pair<Jet, DistinguishedPoly> prepare(const Jet& u, int d);

/// Weierstrass division f = W * H + r with deg_var(r) < deg(W).
DivisionResult divide(const Jet& f, const DistinguishedPoly& w);

/// W = prod W_l^{k_l} with each W_l squarefree (disc != 0 to jet order) and
/// pairwise coprime; Yun's algorithm over the jet coefficient ring with an
/// order-stability check.
std::vector<std::pair<DistinguishedPoly, int>> optimal_factorization(const DistinguishedPoly& w);

}  // namespace nashx
