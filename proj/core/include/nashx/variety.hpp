#pragma once

#include <cstdint>
#include <optional>

#include "nashx/groebner.hpp"
#include "nashx/jet.hpp"
#include "nashx/weierstrass.hpp"

namespace nashx {

/// Generator presentation of an algebraic variety with projection
/// bookkeeping: when a projection is fixed, the first base_count ambient
/// variables form the base block and the rest the fiber block.
struct VarietyPresentation {
  std::vector<std::string> ambient_vars;
  std::vector<MPoly> generators;
  int codim = 1;

  int ambient_dim() const { return static_cast<int>(ambient_vars.size()); }
  int dim() const { return ambient_dim() - codim; }
};

struct BranchedCoverData {
  std::vector<Scalar> form;  // L, length s
  std::string z_var;
  MPoly optimal_poly;   // P(y, z), unitary and squarefree in z_var
  MPoly discriminant;   // R(y) = disc_z P
  int fiber_count = 0;  // t = deg_z P
};

struct GenericityBudgets {
  int retries = 16;
  long elimination = 200000;
};

/// Jacobian-minor presentation of the singular locus (generators plus all
/// codim x codim minors).
std::vector<MPoly> singular_locus_generators(const VarietyPresentation& v);

/// Smallest member of the chain V >= Sing(V) >= ... still containing the
/// image of f, tested by jet-level vanishing of composed generators.
VarietyPresentation singular_descent(const VarietyPresentation& v, const MapJet& f);

/// Linear change of the ambient coordinates after which the projection to
/// the first m coordinates is proper on V (syntactic Noether-position
/// witnesses, one unitary element per fiber variable).
LinearChange properize(const VarietyPresentation& v, int m, std::uint64_t seed,
                       const GenericityBudgets& budgets = {});

/// Number of fiber points over a random rational base point off the
/// discriminant locus; cross-checked at two sample points.
int generic_fiber_count(const VarietyPresentation& v, int m, std::uint64_t seed,
                        const GenericityBudgets& budgets = {});

/// Steps 3-4: a generic linear form on the fiber block whose optimal
/// polynomial has degree equal to the generic fiber count, plus its
/// discriminant. base_f = jets of the first m components of f (used to
/// reject forms with R o rho o f vanishing to jet order).
BranchedCoverData choose_form_and_discriminant(const VarietyPresentation& v, int m,
                                               const std::vector<Jet>& base_f,
                                               std::uint64_t seed,
                                               const GenericityBudgets& budgets = {});

/// First m (or fewer) values probed: smallest m for which the projection can
/// be made proper; equals dim V for the supported input classes.
int probe_dimension(const VarietyPresentation& v, std::uint64_t seed,
                    const GenericityBudgets& budgets = {});

/// Parse "variety vars=y;z1,z2 eq z1^2 - y eq z2^2 - y - 1 codim=2".
/// The semicolon splits base and fiber blocks; returns the presentation and
/// the base block size.
std::pair<VarietyPresentation, int> parse_variety(const std::string& text);

}  // namespace nashx
