#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "mulam/errors.hpp"

namespace mulam {

/// Dense real vector, double precision. The spaces in this library are small
/// (dim 1..8 in the shipped fixtures), so everything is plain loops.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim, double fill = 0.0) : c_(dim, fill) {}
  Vec(std::initializer_list<double> xs) : c_(xs) {}
  explicit Vec(std::vector<double> xs) : c_(std::move(xs)) {}

  static Vec zero(std::size_t dim) { return Vec(dim, 0.0); }

  static Vec unit(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw DimensionError("Vec::unit: axis out of range");
    Vec e(dim, 0.0);
    e[axis] = 1.0;
    return e;
  }

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  const std::vector<double>& data() const { return c_; }

  bool all_finite() const {
    for (double x : c_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  bool operator==(const Vec& o) const { return c_ == o.c_; }
  bool operator!=(const Vec& o) const { return !(*this == o); }

 private:
  std::vector<double> c_;
};

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.dim() != b.dim())
    throw DimensionError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline Vec operator+(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "operator+");
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "operator-");
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(double s, const Vec& v) {
  Vec r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

inline double dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline std::string str(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

/// Point reflection through c: z -> 2c - z. An involutive isometry fixing c.
inline Vec reflect(const Vec& c, const Vec& z) {
  check_same_dim(c, z, "reflect");
  Vec r(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) r[i] = 2.0 * c[i] - z[i];
  return r;
}

/// Convex combination t*a + (1-t)*b for t in [0,1]; t=1 gives a, t=0 gives b.
inline Vec segment_point(const Vec& a, const Vec& b, double t) {
  check_same_dim(a, b, "segment_point");
  if (!(t >= 0.0 && t <= 1.0))
    throw InvalidArgumentError("segment_point: t = " + std::to_string(t) + " outside [0,1]");
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = t * a[i] + (1.0 - t) * b[i];
  return r;
}

/// Endpoints of a segment [a, b]; kept as a named pair because several
/// operations take whole segments as input.
struct Segment {
  Vec a;
  Vec b;

  Segment(Vec a_, Vec b_) : a(std::move(a_)), b(std::move(b_)) {
    check_same_dim(a, b, "Segment");
  }

  Vec at(double t) const { return segment_point(a, b, t); }
};

}  // namespace mulam
