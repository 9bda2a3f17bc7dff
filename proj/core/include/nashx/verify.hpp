#pragma once

#include <cstdint>
#include <vector>

#include "nashx/pipeline.hpp"

namespace nashx {

struct VerificationEntry {
  int nu = 0;
  std::vector<bool> witness_ok;
  /// Least total degree where some equation composed with f^nu has a nonzero
  /// coefficient; N+1 is the sentinel "exact to jet order".
  int membership_defect_order = 0;
  double sup_error = 0.0;
  bool has_chain = false;
  bool chain_ok = false;
};

struct VerificationReport {
  int jet_order = 0;
  std::vector<VerificationEntry> entries;
  bool all_ok() const;
};

/// P(x, f(x)) == 0 to jet order, exactly.
bool check_witness(const NashWitness& p, const Jet& f);

/// Defect order of the composed system; sentinel = (common jet order) + 1.
int check_membership(const std::vector<MPoly>& equations,
                     const std::map<std::string, Jet>& assign, int order);

/// Max over seeded sample points in the closed polydisc of radius `radius`
/// of the max-norm distance |f(x) - g(x)| between jet evaluations.
double sup_error(const MapJet& f, const MapJet& g, double radius, int samples,
                 std::uint64_t seed);

std::vector<double> convergence_metrics(const MapJet& f, const ApproxResult& result,
                                        double radius, int samples, std::uint64_t seed);

/// n = 1 local chain preservation: every u_nu is divisible by x^{alpha0}
/// (alpha0 = valuation of u) with a unit cofactor.
bool chain_check_1d(const Jet& u, const std::vector<Jet>& u_nu);

/// Everything at once for a pipeline run. `equations` are the original
/// equations in (x_vars in graph mode, plus) unknown variables.
VerificationReport verify_result(const std::vector<MPoly>& equations,
                                 const std::vector<std::string>& x_vars,
                                 const std::vector<std::string>& unknowns, const MapJet& f,
                                 const ApproxResult& result, double radius, int samples,
                                 std::uint64_t seed);

}  // namespace nashx
