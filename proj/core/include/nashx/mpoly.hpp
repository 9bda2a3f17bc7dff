#pragma once

#include <map>
#include <string>
#include <vector>

#include "nashx/scalar.hpp"

namespace nashx {

using Exponents = std::vector<int>;

/// Exact multivariate polynomial over Gaussian rationals.
///
/// Terms map exponent vectors (aligned with the ordered variable list) to
/// nonzero coefficients; zero coefficients are never stored.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(const Scalar& c, std::vector<std::string> vars = {});
  static MPoly variable(const std::string& name, std::vector<std::string> vars);
  static MPoly variable(const std::string& name) { return variable(name, {name}); }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;

  int total_degree() const;             // -1 for the zero polynomial
  int degree(const std::string& var) const;

  /// Coefficient of var^k, as a polynomial over the same variable list.
  MPoly coeff(const std::string& var, int k) const;
  /// Leading coefficient in var.
  MPoly lead_coeff(const std::string& var) const;
  bool is_unitary_in(const std::string& var) const;

  void set_term(const Exponents& e, const Scalar& c);
  void add_term(const Exponents& e, const Scalar& c);

  /// Re-express over a variable list that must contain every used variable.
  MPoly aligned_to(const std::vector<std::string>& vars) const;
  /// Drop variables that do not occur (keeps relative order).
  MPoly pruned() const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Scalar& c) const;
  MPoly pow(int k) const;
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  /// Simultaneous substitution of variables by polynomials.
  MPoly substitute(const std::map<std::string, MPoly>& repl) const;

  MPoly derivative(const std::string& var) const;

  Scalar eval(const std::map<std::string, Scalar>& point) const;
  std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;

  /// Canonical text form; monomials sorted, suitable for byte-stable reports.
  std::string str() const;

 private:
  std::vector<std::string> vars_;
  std::map<Exponents, Scalar> terms_;

  int var_index(const std::string& var) const;  // -1 if absent
};

/// Quotient of an exact division; throws std::domain_error if not exact.
MPoly exact_divide(const MPoly& a, const MPoly& b);

/// Sylvester resultant of a and b eliminating var, by fraction-free
/// (Bareiss) elimination.
MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var);

/// Discriminant with the convention disc(z^2 + b z + c) = b^2 - 4 c.
/// Requires p unitary in var.
MPoly discriminant(const MPoly& p, const std::string& var);

/// gcd over Q(i)[vars], normalized with unit leading rational coefficient.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

/// p divided by gcd(p, dp/dvar); keeps every distinct factor once.
MPoly squarefree_part(const MPoly& p, const std::string& var);

/// Parse the shared polynomial syntax, e.g. "z^2 - 1/2*i*x1".
/// Throws std::runtime_error with position info on bad input.
MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b);

}  // namespace nashx
