#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mulam/rng.hpp"
#include "mulam/vec.hpp"

namespace mulam {

/// Dense row-major matrix. Sized for this library's needs: square matrices up
/// to dim 8 plus tall least-squares design matrices.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  /// A x.
  Vec apply(const Vec& x) const;

  Mat mul(const Mat& b) const;
  Mat transpose() const;

  double max_abs() const;
  bool all_finite() const;

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

inline Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("Mat operator-: shape mismatch");
  Mat r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
Vec solve_linear(Mat a, Vec b);

/// Explicit inverse; throws SingularMatrixError when no inverse exists.
Mat inverse(const Mat& a);

/// 1-norm condition estimate ||A||_1 ||A^-1||_1; +inf when A is singular.
double cond1_estimate(const Mat& a);

/// Least squares: minimize ||X beta - Y||_F over beta (X is n x m, Y is n x k,
/// beta is m x k), via Householder QR with column pivoting. Throws
/// SingularMatrixError naming the deficient columns; `colnames`, when given,
/// supplies the names used in that message.
Mat lsq_solve(const Mat& x, const Mat& y, const std::vector<std::string>& colnames = {});

/// Numerical rank with the same pivot threshold lsq_solve uses.
std::size_t qr_rank(const Mat& x);

/// Haar-ish random orthogonal matrix (Gram-Schmidt of a Gaussian matrix,
/// orthonormal to machine precision).
Mat random_orthogonal(Rng& rng, std::size_t n);

/// Random matrix with exactly one +-1 per row and column; these are exactly
/// the linear isometries of the max norm.
Mat random_signed_permutation(Rng& rng, std::size_t n);

}  // namespace mulam
