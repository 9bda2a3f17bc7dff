#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "nashx/linear_change.hpp"
#include "nashx/mpoly.hpp"

namespace nashx {

/// Truncated multivariate power series at the origin: all monomials of total
/// degree <= order are stored exactly, everything above is unknown.
class Jet {
 public:
  Jet() = default;
  Jet(std::vector<std::string> vars, int order) : vars_(std::move(vars)), order_(order) {}

  static Jet constant(const Scalar& c, std::vector<std::string> vars, int order);
  static Jet coordinate(const std::string& name, std::vector<std::string> vars, int order);
  /// Truncation of a polynomial; every variable of p must be in vars.
  static Jet from_poly(const MPoly& p, const std::vector<std::string>& vars, int order);

  const std::vector<std::string>& vars() const { return vars_; }
  int order() const { return order_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Scalar constant_term() const;

  /// Valuation: least total degree with a nonzero coefficient;
  /// order()+1 as a sentinel ("vanishes to jet order") for the zero jet.
  int valuation() const;

  void add_term(const Exponents& e, const Scalar& c);

  Jet operator-() const;
  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator*(const Scalar& c) const;
  bool operator==(const Jet& o) const;
  bool operator!=(const Jet& o) const { return !(*this == o); }

  Jet truncated(int order) const;
  /// Polynomial of all terms of total degree <= nu.
  MPoly truncate_to_poly(int nu) const;
  MPoly to_poly() const { return truncate_to_poly(order_); }

  /// Multiplicative inverse; requires a nonzero constant term.
  Jet invert_unit() const;

  /// Substitute each variable by a jet with vanishing constant term.
  Jet compose(const std::map<std::string, Jet>& inner) const;

  Jet derivative(const std::string& var) const;

  /// p(M x): composition with an invertible linear change on this jet's tuple.
  Jet linear_change(const LinearChange& m) const;

  Jet aligned_to(const std::vector<std::string>& vars) const;

  std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;

  std::string str() const;

 private:
  std::vector<std::string> vars_;
  int order_ = 0;
  std::map<Exponents, Scalar> terms_;
};

/// Exact quotient a / b in the power-series ring, to the order it is
/// determined (a.order - valuation(b)). Throws std::domain_error when the
/// stored terms are not exactly divisible.
Jet jet_exact_divide(const Jet& a, const Jet& b);

/// Evaluate a polynomial with every variable assigned a jet.
Jet eval_poly_at_jets(const MPoly& p, const std::map<std::string, Jet>& assign);

/// Tuple of jets over common variables and order.
struct MapJet {
  std::vector<Jet> components;

  MapJet() = default;
  explicit MapJet(std::vector<Jet> comps);

  int order() const { return components.empty() ? 0 : components.front().order(); }
  const std::vector<std::string>& vars() const { return components.front().vars(); }
  size_t size() const { return components.size(); }
};

/// Formal inverse psi with phi o psi = id to jet order.
/// Requires phi(0) = 0, square (n components over n variables), and an
/// invertible linear part.
MapJet invert_map_jet(const MapJet& phi);

/// Parse "jet N=12 vars=x1,x2 : 1 + x1 + 1/2*x1^2".
Jet parse_jet(const std::string& text);

}  // namespace nashx
