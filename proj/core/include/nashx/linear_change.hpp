#pragma once

#include <cstdint>
#include <vector>

#include "nashx/mpoly.hpp"

namespace nashx {

/// Invertible linear change of coordinates with exact inverse.
///
/// Applying the change to a polynomial p in variables (v_1..v_n) yields
/// p(M x), i.e. each v_i is replaced by sum_j M[i][j] v_j.
class LinearChange {
 public:
  LinearChange() = default;
  LinearChange(std::vector<std::vector<Scalar>> matrix, std::uint64_t seed);

  static LinearChange identity(int dim);
  int dim() const { return static_cast<int>(matrix_.size()); }
  std::uint64_t seed() const { return seed_; }

  const std::vector<std::vector<Scalar>>& matrix() const { return matrix_; }
  const std::vector<std::vector<Scalar>>& inverse_matrix() const { return inverse_; }

  LinearChange inverse() const;
  bool is_identity() const;

  /// p(M x) over the given ordered variable tuple (length == dim).
  MPoly apply(const MPoly& p, const std::vector<std::string>& tuple) const;

  /// Image of a component vector: (M f)_i = sum_j M[i][j] f_j for MPoly lists.
  std::vector<MPoly> apply_to_components(const std::vector<MPoly>& f) const;

 private:
  std::vector<std::vector<Scalar>> matrix_;
  std::vector<std::vector<Scalar>> inverse_;
  std::uint64_t seed_ = 0;
};

/// Exact inverse of a square Scalar matrix; throws std::domain_error if singular.
std::vector<std::vector<Scalar>> invert_matrix(const std::vector<std::vector<Scalar>>& m);

/// Deterministic random integer matrix with entries in [-bound, bound],
/// retried (by advancing the generator) until invertible.
LinearChange random_linear_change(int dim, std::uint64_t seed, int bound);

}  // namespace nashx
