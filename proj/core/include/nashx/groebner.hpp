#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nashx/mpoly.hpp"

namespace nashx {

struct EliminationBudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reduced lexicographic Groebner basis; order_vars ranks variables from
/// greatest to least. budget bounds the number of S-polynomial reductions.
std::vector<MPoly> groebner_basis(const std::vector<MPoly>& gens,
                                  const std::vector<std::string>& order_vars, long budget);

/// Generators of the elimination ideal in keep_vars (lex basis, eliminated
/// variables ranked above the kept ones; kept order preserved).
std::vector<MPoly> buchberger_eliminate(const std::vector<MPoly>& gens,
                                        const std::vector<std::string>& keep_vars, long budget);

/// Among basis elements using only (var, coeff_vars), those unitary in var:
/// leading monomial a pure power of var under lex var > coeff vars.
/// Returns the one of minimal positive var-degree, or an empty optional.
struct UnitaryWitness {
  MPoly poly;
  int var_degree;
};
bool find_unitary_witness(const std::vector<MPoly>& basis, const std::string& var,
                          const std::vector<std::string>& coeff_vars, UnitaryWitness* out);

}  // namespace nashx
