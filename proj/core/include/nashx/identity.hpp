#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nashx/mpoly.hpp"

namespace nashx {

// Division-with-remainder by a polynomial that is monic in `var`.
// Exact over the coefficient ring; returns (quotient, remainder) with
// deg_var(remainder) < deg_var(divisor).
std::pair<MPoly, MPoly> divmod_monic_in_var(const MPoly& p, const MPoly& divisor,
                                            const std::string& var);

// The symbolic division identity behind the coefficient recursion.
//
// With abstract monic factors P_l = var^{d_l} + sum_j a_{l,j} var^j and
// P = prod P_l^{k_l} of degree D, each y_j is replaced by its division form
// alpha_j = P * S_j + w_j,  w_j = sum_{k<D} b_{j,k} var^k.
// Substituting into r and dividing by P gives
//   r(alpha) = P * quotient + sum_{k<D} T_k var^k,
// where every T_k lives in the a/b coefficient variables only.
struct DivisionIdentity {
  std::string var;
  std::vector<std::string> a_vars;  // flattened a_{l,j}, factor-major
  std::vector<std::string> b_vars;  // flattened b_{j,k}, component-major
  std::vector<std::string> s_vars;  // one abstract quotient symbol per y_j
  std::vector<MPoly> factors;       // P_l, monic in var
  MPoly product;                    // P = prod P_l^{k_l}
  std::vector<MPoly> alphas;        // alpha_j
  MPoly quotient;                   // involves the S_j in general
  std::vector<MPoly> t_polys;       // T_0 .. T_{D-1}, a/b variables only
};

DivisionIdentity build_division_identity(const MPoly& r,
                                         const std::vector<std::string>& y_vars,
                                         const std::vector<int>& factor_degrees,
                                         const std::vector<int>& multiplicities,
                                         const std::string& var);

}  // namespace nashx
