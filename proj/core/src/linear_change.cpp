#include "nashx/linear_change.hpp"

#include <random>
#include <stdexcept>

namespace nashx {

std::vector<std::vector<Scalar>> invert_matrix(const std::vector<std::vector<Scalar>>& m) {
  size_t n = m.size();
  std::vector<std::vector<Scalar>> a = m;
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("invert_matrix: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Scalar inv_p = a[col][col].inverse();
    for (size_t j = 0; j < n; ++j) {
      a[col][j] *= inv_p;
      inv[col][j] *= inv_p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

LinearChange::LinearChange(std::vector<std::vector<Scalar>> matrix, std::uint64_t seed)
    : matrix_(std::move(matrix)), seed_(seed) {
  inverse_ = invert_matrix(matrix_);
}

LinearChange LinearChange::identity(int dim) {
  std::vector<std::vector<Scalar>> m(static_cast<size_t>(dim),
                                     std::vector<Scalar>(static_cast<size_t>(dim)));
  for (int i = 0; i < dim; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Scalar(1);
  return LinearChange(std::move(m), 0);
}

LinearChange LinearChange::inverse() const {
  LinearChange out;
  out.matrix_ = inverse_;
  out.inverse_ = matrix_;
  out.seed_ = seed_;
  return out;
}

bool LinearChange::is_identity() const {
  for (size_t i = 0; i < matrix_.size(); ++i)
    for (size_t j = 0; j < matrix_.size(); ++j) {
      Scalar want = (i == j) ? Scalar(1) : Scalar(0);
      if (matrix_[i][j] != want) return false;
    }
  return true;
}

MPoly LinearChange::apply(const MPoly& p, const std::vector<std::string>& tuple) const {
  if (static_cast<int>(tuple.size()) != dim())
    throw std::invalid_argument("LinearChange::apply: tuple arity mismatch");
  std::map<std::string, MPoly> repl;
  for (size_t i = 0; i < tuple.size(); ++i) {
    MPoly row(tuple);
    for (size_t j = 0; j < tuple.size(); ++j) {
      if (matrix_[i][j].is_zero()) continue;
      row = row + MPoly::variable(tuple[j], tuple) * matrix_[i][j];
    }
    repl[tuple[i]] = row;
  }
  return p.substitute(repl);
}

std::vector<MPoly> LinearChange::apply_to_components(const std::vector<MPoly>& f) const {
  if (static_cast<int>(f.size()) != dim())
    throw std::invalid_argument("LinearChange: component arity mismatch");
  std::vector<MPoly> out;
  out.reserve(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    MPoly acc;
    for (size_t j = 0; j < f.size(); ++j) {
      if (matrix_[i][j].is_zero()) continue;
      acc = acc + f[j] * matrix_[i][j];
    }
    out.push_back(acc);
  }
  return out;
}

LinearChange random_linear_change(int dim, std::uint64_t seed, int bound) {
  if (bound < 1) throw std::invalid_argument("random_linear_change: bound must be >= 1");
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    // avoid std::uniform_int_distribution: its output is not portable
    auto span = static_cast<std::uint64_t>(2 * bound + 1);
    return static_cast<long>(rng() % span) - bound;
  };
  for (int attempt = 0; attempt < 1024; ++attempt) {
    std::vector<std::vector<Scalar>> m(static_cast<size_t>(dim),
                                       std::vector<Scalar>(static_cast<size_t>(dim)));
    for (auto& row : m)
      for (auto& e : row) e = Scalar(draw());
    try {
      return LinearChange(std::move(m), seed);
    } catch (const std::domain_error&) {
      // singular draw; try again deterministically
    }
  }
  throw std::runtime_error("random_linear_change: retry budget exhausted");
}

}  // namespace nashx
