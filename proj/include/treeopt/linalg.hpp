#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace treeopt {

class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Lower-triangular L with positive diagonal such that L L^T is the factored matrix.
template <typename Scalar>
class CholeskyFactor {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CholeskyFactor() = default;
  explicit CholeskyFactor(Matrix lower) : l_(std::move(lower)) {}

  Eigen::Index dim() const { return l_.rows(); }
  const Matrix& matrix_l() const { return l_; }
  Matrix reconstruct() const { return l_ * l_.transpose(); }

  // In-place rank-one update; see chol_update for the value-returning form.
  void rank_one_update(Vector x) {
    if (x.size() != dim()) throw DimensionMismatch("rank-one update: vector length != factor dim");
    const Eigen::Index n = dim();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (x(k) == Scalar(0)) continue;
      const Scalar lkk = l_(k, k);
      const Scalar r = std::hypot(lkk, x(k));
      const Scalar c = r / lkk;
      const Scalar s = x(k) / lkk;
      l_(k, k) = r;
      const Eigen::Index tail = n - k - 1;
      if (tail > 0) {
        auto col = l_.col(k).tail(tail);
        auto xt = x.tail(tail);
        col = (col + s * xt) / c;
        xt = c * xt - s * col;
      }
    }
  }

 private:
  Matrix l_;
};

using Cholesky = CholeskyFactor<double>;

/// Plain column Cholesky. Pivots at or below 1e-12 * max|diag| raise NotPositiveDefinite.
template <typename Derived>
CholeskyFactor<typename Derived::Scalar> cholesky(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename CholeskyFactor<Scalar>::Matrix;
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("cholesky: matrix is not square");
  Matrix l = Matrix::Zero(n, n);
  if (n == 0) return CholeskyFactor<Scalar>(std::move(l));

  const Scalar scale = m.diagonal().cwiseAbs().maxCoeff();
  const Scalar threshold = Scalar(1e-12) * scale;
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > threshold) {
    throw std::invalid_argument("cholesky: matrix is not symmetric");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar pivot = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > threshold)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(static_cast<double>(pivot)) +
                                " at column " + std::to_string(j));
    }
    const Scalar ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    const Eigen::Index below = n - j - 1;
    if (below > 0) {
      l.col(j).tail(below) =
          (m.col(j).tail(below) - l.bottomLeftCorner(below, j) * l.row(j).head(j).transpose()) / ljj;
    }
  }
  return CholeskyFactor<Scalar>(std::move(l));
}

/// Factor of L L^T + x x^T in O(dim^2).
template <typename Scalar, typename Derived>
CholeskyFactor<Scalar> chol_update(CholeskyFactor<Scalar> f, const Eigen::MatrixBase<Derived>& x) {
  f.rank_one_update(x);
  return f;
}

/// Solves L x = b by forward substitution.
template <typename Scalar, typename Derived>
typename CholeskyFactor<Scalar>::Vector forward_solve(const CholeskyFactor<Scalar>& f,
                                                      const Eigen::MatrixBase<Derived>& b) {
  if (b.size() != f.dim()) throw DimensionMismatch("forward_solve: rhs length != factor dim");
  return f.matrix_l().template triangularView<Eigen::Lower>().solve(b);
}

template <typename Scalar>
Scalar logdet(const CholeskyFactor<Scalar>& f) {
  return Scalar(2) * f.matrix_l().diagonal().array().log().sum();
}

}  // namespace treeopt
