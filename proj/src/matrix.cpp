#include "mulam/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mulam {

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Mat();
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_)
      throw DimensionError("Mat::from_rows: ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(std::size_t i) const {
  Vec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  if (v.dim() != rows_) throw DimensionError("Mat::set_col: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vec Mat::apply(const Vec& x) const {
  if (x.dim() != cols_)
    throw DimensionError("Mat::apply: vector length " + std::to_string(x.dim()) +
                         " vs " + std::to_string(cols_) + " columns");
  Vec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat Mat::mul(const Mat& b) const {
  if (cols_ != b.rows_) throw DimensionError("Mat::mul: inner dimension mismatch");
  Mat r(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool Mat::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

Vec solve_linear(Mat a, Vec b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("solve_linear: matrix not square");
  if (b.dim() != n) throw DimensionError("solve_linear: rhs length mismatch");

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0 || !std::isfinite(best))
      throw SingularMatrixError("solve_linear: singular pivot at column " + std::to_string(k));
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }

  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

Mat inverse(const Mat& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("inverse: matrix not square");
  Mat inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec e = Vec::unit(n, j);
    inv.set_col(j, solve_linear(a, e));
  }
  return inv;
}

static double norm1(const Mat& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double cond1_estimate(const Mat& a) {
  try {
    return norm1(a) * norm1(inverse(a));
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

namespace {

struct QrFactors {
  Mat a;                          // R in the upper triangle (pivoted columns)
  Mat w;                          // Q^T Y, carried along
  std::vector<std::size_t> piv;   // column permutation
  std::size_t rank = 0;
};

// Householder QR with column pivoting; reduces `a` in place and applies the
// same reflectors to `w`.
QrFactors qr_factor(Mat a, Mat w) {
  const std::size_t n = a.rows(), m = a.cols();
  QrFactors f;
  f.piv.resize(m);
  for (std::size_t j = 0; j < m; ++j) f.piv[j] = j;

  double first_pivot = 0.0;
  std::vector<double> v(n);

  for (std::size_t k = 0; k < m && k < n; ++k) {
    // Pick the remaining column with the largest tail norm.
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += a(i, j) * a(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, best));
      std::swap(f.piv[k], f.piv[best]);
    }

    double colnorm = std::sqrt(std::max(best_norm, 0.0));
    if (k == 0) first_pivot = colnorm;
    const double tol = first_pivot * 1e-12 * static_cast<double>(std::max(n, m));
    if (colnorm <= tol || colnorm == 0.0) {
      f.rank = k;
      f.a = std::move(a);
      f.w = std::move(w);
      return f;
    }

    double sigma = (a(k, k) > 0.0) ? -colnorm : colnorm;
    double vtv = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k) v[i] -= sigma;
      vtv += v[i] * v[i];
    }
    if (vtv > 0.0) {
      for (std::size_t j = k + 1; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) s += v[i] * a(i, j);
        double f2 = 2.0 * s / vtv;
        for (std::size_t i = k; i < n; ++i) a(i, j) -= f2 * v[i];
      }
      for (std::size_t j = 0; j < w.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) s += v[i] * w(i, j);
        double f2 = 2.0 * s / vtv;
        for (std::size_t i = k; i < n; ++i) w(i, j) -= f2 * v[i];
      }
    }
    a(k, k) = sigma;
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) = 0.0;
    f.rank = k + 1;
  }
  f.a = std::move(a);
  f.w = std::move(w);
  return f;
}

}  // namespace

std::size_t qr_rank(const Mat& x) {
  return qr_factor(x, Mat(x.rows(), 0)).rank;
}

Mat lsq_solve(const Mat& x, const Mat& y, const std::vector<std::string>& colnames) {
  const std::size_t n = x.rows(), m = x.cols();
  if (y.rows() != n) throw DimensionError("lsq_solve: row count mismatch");
  if (n < m)
    throw SingularMatrixError("lsq_solve: fewer samples (" + std::to_string(n) +
                              ") than unknowns (" + std::to_string(m) + ")");

  QrFactors f = qr_factor(x, y);
  if (f.rank < m) {
    std::string msg = "lsq_solve: rank-deficient system (rank " + std::to_string(f.rank) +
                      " of " + std::to_string(m) + "); deficient directions:";
    for (std::size_t j = f.rank; j < m; ++j) {
      std::size_t orig = f.piv[j];
      msg += " ";
      msg += (orig < colnames.size()) ? colnames[orig] : ("col" + std::to_string(orig));
    }
    throw SingularMatrixError(msg);
  }

  Mat beta(m, y.cols());
  for (std::size_t c = 0; c < y.cols(); ++c) {
    for (std::size_t ii = m; ii-- > 0;) {
      double s = f.w(ii, c);
      for (std::size_t j = ii + 1; j < m; ++j) s -= f.a(ii, j) * beta(j, c);
      beta(ii, c) = s / f.a(ii, ii);
    }
  }

  // Undo the column pivoting.
  Mat out(m, y.cols());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < y.cols(); ++c) out(f.piv[j], c) = beta(j, c);
  return out;
}

Mat random_orthogonal(Rng& rng, std::size_t n) {
  Mat q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec v(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
      v = rng.normal_vec(n);
      // Two rounds of Gram-Schmidt against the accepted columns.
      for (int round = 0; round < 2; ++round) {
        for (std::size_t i = 0; i < j; ++i) {
          Vec qi = q.col(i);
          v = v - dot(qi, v) * qi;
        }
      }
      double nv = std::sqrt(dot(v, v));
      if (nv > 1e-8) {
        q.set_col(j, (1.0 / nv) * v);
        break;
      }
      if (attempt == 63) throw SamplingError("random_orthogonal: degenerate draws");
    }
  }
  return q;
}

Mat random_signed_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.index(i + 1)]);
  Mat p(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = rng.coin() ? 1.0 : -1.0;
  return p;
}

}  // namespace mulam
