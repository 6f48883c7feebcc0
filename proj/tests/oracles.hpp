#pragma once

// Brute-force oracles the tests freeze expected values from. Everything here
// is deliberately independent of the library code paths it checks: plain
// grids, plain scans, and a hand-rolled normal-equations solver.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "mulam/norms.hpp"
#include "mulam/vec.hpp"

namespace oracle {

using mulam::Vec;

inline bool within_one_ulp(double a, double b) {
  if (a == b) return true;
  return std::nextafter(a, b) == b;
}

/// One ulp at the working scale of the reflection round trip. The outer
/// subtraction 2c - (2c - z) is exact by Sterbenz whenever the operands are
/// close; what remains is the rounding of the inner subtraction, which lives
/// at the scale of 2c - z, not of z.
inline bool involution_component_ok(double z, double mid, double roundtrip) {
  double scale = std::max({std::abs(z), std::abs(mid), std::abs(roundtrip)});
  double ulp = std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
  return std::abs(roundtrip - z) <= ulp;
}

inline bool involution_within_one_ulp(const Vec& z, const Vec& mid, const Vec& roundtrip) {
  for (std::size_t i = 0; i < z.dim(); ++i)
    if (!involution_component_ok(z[i], mid[i], roundtrip[i])) return false;
  return true;
}

/// Min max-norm distance from x to the boundary grid of the two unit
/// max-norm balls at (0,0) and (0,10). The boundary of a max ball is four
/// sides; walk them on a fine grid.
inline double two_balls_boundary_distance(const Vec& x, int steps = 4000) {
  const double centers[2][2] = {{0.0, 0.0}, {0.0, 10.0}};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : centers) {
    for (int i = 0; i <= steps; ++i) {
      double t = -1.0 + 2.0 * i / steps;
      const double pts[4][2] = {
          {c[0] + t, c[1] - 1.0}, {c[0] + t, c[1] + 1.0},
          {c[0] - 1.0, c[1] + t}, {c[0] + 1.0, c[1] + t}};
      for (const auto& p : pts)
        best = std::min(best, std::max(std::abs(x[0] - p[0]), std::abs(x[1] - p[1])));
    }
  }
  return best;
}

/// First escape of the segment from (0,0) to the far ball center (0,10) out
/// of the two-ball union, by dense scan. Returns the escaping t (the segment
/// parameter toward the far center) or -1 if none.
inline double two_balls_segment_escape(int steps = 10000) {
  for (int i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) / steps;
    double y = 10.0 * t;
    bool in_near = std::max(0.0 * t, std::abs(y)) < 1.0;  // x stays 0
    bool in_far = std::abs(y - 10.0) < 1.0;
    if (!in_near && !in_far) return t;
  }
  return -1.0;
}

/// Independent least squares: normal equations with a hand-rolled Gauss
/// solve (the library path is Householder QR).
struct NormalEqFit {
  std::vector<std::vector<double>> a;  // target.dim rows of source.dim
  std::vector<double> u;
  double residual = 0.0;
};

inline NormalEqFit normal_equations_fit(const std::vector<std::pair<Vec, Vec>>& samples,
                                        const mulam::NormedSpace& target) {
  const std::size_t sd = samples[0].first.dim();
  const std::size_t td = samples[0].second.dim();
  const std::size_t m = sd + 1;

  std::vector<std::vector<double>> xtx(m, std::vector<double>(m, 0.0));
  std::vector<std::vector<double>> xty(m, std::vector<double>(td, 0.0));
  for (const auto& [x, y] : samples) {
    std::vector<double> row(m);
    for (std::size_t j = 0; j < sd; ++j) row[j] = x[j];
    row[sd] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) xtx[i][j] += row[i] * row[j];
      for (std::size_t c = 0; c < td; ++c) xty[i][c] += row[i] * y[c];
    }
  }

  // Gauss with partial pivoting on the augmented system.
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::abs(xtx[i][k]) > std::abs(xtx[piv][k])) piv = i;
    std::swap(xtx[k], xtx[piv]);
    std::swap(xty[k], xty[piv]);
    for (std::size_t i = k + 1; i < m; ++i) {
      double f = xtx[i][k] / xtx[k][k];
      for (std::size_t j = k; j < m; ++j) xtx[i][j] -= f * xtx[k][j];
      for (std::size_t c = 0; c < td; ++c) xty[i][c] -= f * xty[k][c];
    }
  }
  std::vector<std::vector<double>> beta(m, std::vector<double>(td, 0.0));
  for (std::size_t c = 0; c < td; ++c) {
    for (std::size_t ii = m; ii-- > 0;) {
      double s = xty[ii][c];
      for (std::size_t j = ii + 1; j < m; ++j) s -= xtx[ii][j] * beta[j][c];
      beta[ii][c] = s / xtx[ii][ii];
    }
  }

  NormalEqFit fit;
  fit.a.assign(td, std::vector<double>(sd, 0.0));
  fit.u.assign(td, 0.0);
  for (std::size_t i = 0; i < td; ++i) {
    for (std::size_t j = 0; j < sd; ++j) fit.a[i][j] = beta[j][i];
    fit.u[i] = beta[sd][i];
  }
  for (const auto& [x, y] : samples) {
    Vec pred(td);
    for (std::size_t i = 0; i < td; ++i) {
      double s = fit.u[i];
      for (std::size_t j = 0; j < sd; ++j) s += fit.a[i][j] * x[j];
      pred[i] = s;
    }
    fit.residual = std::max(fit.residual, target.norm_of(pred - y));
  }
  return fit;
}

/// Smallest n with dist / 2^n < eps, by direct enumeration.
inline unsigned subdivision_by_enumeration(double dist, double eps) {
  for (unsigned n = 0; n < 200; ++n)
    if (dist / std::pow(2.0, n) < eps) return n;
  return 200;
}

/// Dense linear s-scan for cone membership against a ball base: is there an
/// s >= 1 with ||apex + s (x - apex) - center||_shape < radius?
inline bool cone_member_by_scan(const Vec& apex, const Vec& x, const mulam::Norm& shape,
                                const Vec& center, double radius, double s_hi,
                                int steps = 200000) {
  Vec d = x - apex;
  for (int i = 0; i <= steps; ++i) {
    double s = 1.0 + (s_hi - 1.0) * static_cast<double>(i) / steps;
    if (shape(apex + s * d - center) < radius) return true;
  }
  return false;
}

}  // namespace oracle
