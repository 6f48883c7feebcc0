#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mulam/matrix.hpp"
#include "mulam/rng.hpp"
#include "mulam/vec.hpp"

namespace mulam {

enum class NormKind { l1, l2, linf, lp, weighted_linf, polyhedral };

/// A norm on R^d. Shipped instances: l1, l2, max, general p, weighted max,
/// and a polyhedral norm max_i |<a_i, x>| given by a spanning set of
/// functionals.
class Norm {
 public:
  static Norm l1() { return Norm(NormKind::l1); }
  static Norm l2() { return Norm(NormKind::l2); }
  static Norm linf() { return Norm(NormKind::linf); }
  static Norm lp(double p);
  static Norm weighted_linf(std::vector<double> weights);
  static Norm polyhedral(Mat functionals);

  double operator()(const Vec& x) const;

  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  const std::vector<double>& weights() const { return weights_; }
  const Mat& functionals() const { return functionals_; }

  std::string name() const;

  /// Dual-norm value ||a||* = sup{<a,x> : ||x|| <= 1}, when a closed form
  /// exists (everything except the polyhedral instance).
  std::optional<double> dual(const Vec& a) const;

  bool operator==(const Norm& o) const;

 private:
  explicit Norm(NormKind k) : kind_(k) {}

  NormKind kind_;
  double p_ = 2.0;
  std::vector<double> weights_;
  Mat functionals_;
};

/// A finite-dimensional real normed space: a dimension plus a norm.
struct NormedSpace {
  std::size_t dim = 0;
  Norm norm = Norm::l2();
  std::string label;

  /// ||x||; validates dimension and finiteness.
  double norm_of(const Vec& x) const;

  /// ||x - y||.
  double distance(const Vec& x, const Vec& y) const;
};

/// Translation-invariant metrics are accepted wherever the target space only
/// needs distances; the shipped suites instantiate norm-induced ones.
struct Metric {
  std::function<double(const Vec&, const Vec&)> eval;
  bool translation_invariant = true;

  static Metric from_norm(const NormedSpace& s) {
    return Metric{[s](const Vec& a, const Vec& b) { return s.distance(a, b); }, true};
  }

  double operator()(const Vec& a, const Vec& b) const { return eval(a, b); }
};

/// Max violation of the norm axioms over a sampled family: norm(0) = 0,
/// absolute homogeneity, triangle inequality, positivity away from 0.
double check_norm_axioms(const NormedSpace& s, std::size_t n_samples, std::uint64_t seed);

/// Max violation of symmetry, identity of indiscernibles, triangle inequality
/// and (when flagged) translation invariance over sampled triples.
double check_metric_axioms(const Metric& m, std::size_t dim, std::size_t n_samples,
                           std::uint64_t seed);

/// Radially sampled point of the ball ||x - center||_shape < radius.
Vec sample_in_ball(Rng& rng, const Norm& shape, const Vec& center, double radius);

/// Point with ||x - center||_shape = radius (up to rounding).
Vec sample_on_sphere(Rng& rng, const Norm& shape, const Vec& center, double radius);

}  // namespace mulam
