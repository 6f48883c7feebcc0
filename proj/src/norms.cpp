#include "mulam/norms.hpp"

#include <algorithm>
#include <cmath>

namespace mulam {

Norm Norm::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw InvalidArgumentError("Norm::lp: p must be finite and >= 1, got " + std::to_string(p));
  Norm n(NormKind::lp);
  n.p_ = p;
  return n;
}

Norm Norm::weighted_linf(std::vector<double> weights) {
  if (weights.empty()) throw InvalidArgumentError("Norm::weighted_linf: empty weights");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidArgumentError("Norm::weighted_linf: weights must be positive and finite");
  Norm n(NormKind::weighted_linf);
  n.weights_ = std::move(weights);
  return n;
}

Norm Norm::polyhedral(Mat functionals) {
  if (functionals.rows() == 0 || functionals.cols() == 0)
    throw InvalidArgumentError("Norm::polyhedral: empty functional set");
  if (!functionals.all_finite())
    throw InvalidArgumentError("Norm::polyhedral: non-finite functional entry");
  // The functionals must span the space, otherwise max_i |<a_i, x>| has a
  // nontrivial kernel and is only a seminorm.
  if (qr_rank(functionals.transpose()) < functionals.cols())
    throw InvalidArgumentError(
        "Norm::polyhedral: functionals do not span the space (seminorm, not a norm)");
  Norm n(NormKind::polyhedral);
  n.functionals_ = std::move(functionals);
  return n;
}

double Norm::operator()(const Vec& x) const {
  switch (kind_) {
    case NormKind::l1: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    case NormKind::l2: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case NormKind::linf: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    case NormKind::lp: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v) / m, p_);
      return m * std::pow(s, 1.0 / p_);
    }
    case NormKind::weighted_linf: {
      if (x.dim() != weights_.size())
        throw DimensionError("weighted max norm: vector dim " + std::to_string(x.dim()) +
                             " vs " + std::to_string(weights_.size()) + " weights");
      double m = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i) m = std::max(m, weights_[i] * std::abs(x[i]));
      return m;
    }
    case NormKind::polyhedral: {
      if (x.dim() != functionals_.cols())
        throw DimensionError("polyhedral norm: vector dim mismatch");
      double m = 0.0;
      for (std::size_t i = 0; i < functionals_.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.dim(); ++j) s += functionals_(i, j) * x[j];
        m = std::max(m, std::abs(s));
      }
      return m;
    }
  }
  throw Error("Norm: unreachable kind");
}

std::string Norm::name() const {
  switch (kind_) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
    case NormKind::lp: return "lp(" + std::to_string(p_) + ")";
    case NormKind::weighted_linf: return "weighted_linf";
    case NormKind::polyhedral:
      return "polyhedral(" + std::to_string(functionals_.rows()) + ")";
  }
  return "?";
}

std::optional<double> Norm::dual(const Vec& a) const {
  switch (kind_) {
    case NormKind::l1: {
      double m = 0.0;
      for (double v : a) m = std::max(m, std::abs(v));
      return m;
    }
    case NormKind::l2:
      return Norm::l2()(a);
    case NormKind::linf: {
      double s = 0.0;
      for (double v : a) s += std::abs(v);
      return s;
    }
    case NormKind::lp: {
      if (p_ == 1.0) return Norm::linf()(a);
      double q = p_ / (p_ - 1.0);
      return Norm::lp(q)(a);
    }
    case NormKind::weighted_linf: {
      // ||x|| = max_i w_i |x_i|  =>  ||a||* = sum_i |a_i| / w_i.
      if (a.dim() != weights_.size()) throw DimensionError("Norm::dual: dim mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(a[i]) / weights_[i];
      return s;
    }
    case NormKind::polyhedral:
      return std::nullopt;
  }
  return std::nullopt;
}

bool Norm::operator==(const Norm& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case NormKind::lp: return p_ == o.p_;
    case NormKind::weighted_linf: return weights_ == o.weights_;
    case NormKind::polyhedral: return functionals_ == o.functionals_;
    default: return true;
  }
}

double NormedSpace::norm_of(const Vec& x) const {
  if (x.dim() != dim)
    throw DimensionError("norm_of: vector dim " + std::to_string(x.dim()) + " vs space dim " +
                         std::to_string(dim));
  if (!x.all_finite()) throw InvalidArgumentError("norm_of: non-finite entry in " + str(x));
  return norm(x);
}

double NormedSpace::distance(const Vec& x, const Vec& y) const {
  return norm_of(x - y);
}

double check_norm_axioms(const NormedSpace& s, std::size_t n_samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = std::abs(s.norm_of(Vec::zero(s.dim)));
  for (std::size_t i = 0; i < n_samples; ++i) {
    Vec x = rng.uniform_vec(s.dim, -2.0, 2.0);
    Vec y = rng.uniform_vec(s.dim, -2.0, 2.0);
    double t = rng.uniform(-4.0, 4.0);

    double nx = s.norm_of(x), ny = s.norm_of(y);
    // Absolute homogeneity, relative to scale.
    double h = std::abs(s.norm_of(t * x) - std::abs(t) * nx) / std::max(1.0, std::abs(t) * nx);
    // Triangle inequality.
    double tri = std::max(0.0, s.norm_of(x + y) - nx - ny) / std::max(1.0, nx + ny);
    // Positivity away from zero.
    double mx = 0.0;
    for (double v : x) mx = std::max(mx, std::abs(v));
    double pos = (mx > 1e-6 && !(nx > 0.0)) ? 1.0 : 0.0;

    worst = std::max({worst, h, tri, pos});
  }
  return worst;
}

double check_metric_axioms(const Metric& m, std::size_t dim, std::size_t n_samples,
                           std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    Vec a = rng.uniform_vec(dim, -2.0, 2.0);
    Vec b = rng.uniform_vec(dim, -2.0, 2.0);
    Vec c = rng.uniform_vec(dim, -2.0, 2.0);
    double dab = m(a, b);
    double scale = std::max(1.0, dab);
    worst = std::max(worst, std::abs(m(b, a) - dab) / scale);          // symmetry
    worst = std::max(worst, std::abs(m(a, a)));                        // d(a,a) = 0
    worst = std::max(worst, std::max(0.0, dab - m(a, c) - m(c, b)) / scale);  // triangle
    if (m.translation_invariant) {
      Vec u = rng.uniform_vec(dim, -2.0, 2.0);
      worst = std::max(worst, std::abs(m(a + u, b + u) - dab) / scale);
    }
  }
  return worst;
}

Vec sample_in_ball(Rng& rng, const Norm& shape, const Vec& center, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgumentError("sample_in_ball: negative radius");
  if (radius == 0.0) return center;
  const std::size_t d = center.dim();
  for (int tries = 0; tries < 128; ++tries) {
    Vec u = rng.normal_vec(d);
    double nu = shape(u);
    if (!(nu > 1e-300)) continue;
    double rho = radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
    return center + (rho / nu) * u;
  }
  throw SamplingError("sample_in_ball: degenerate direction draws");
}

Vec sample_on_sphere(Rng& rng, const Norm& shape, const Vec& center, double radius) {
  const std::size_t d = center.dim();
  for (int tries = 0; tries < 128; ++tries) {
    Vec u = rng.normal_vec(d);
    double nu = shape(u);
    if (!(nu > 1e-300)) continue;
    return center + (radius / nu) * u;
  }
  throw SamplingError("sample_on_sphere: degenerate direction draws");
}

}  // namespace mulam
