#include "mulam/fit.hpp"

#include <algorithm>

namespace mulam {

AffineFit affine_fit(const std::vector<std::pair<Vec, Vec>>& samples,
                     const NormedSpace& target) {
  if (samples.empty()) throw InvalidArgumentError("affine_fit: no samples");
  const std::size_t sd = samples[0].first.dim();
  const std::size_t td = samples[0].second.dim();
  if (td != target.dim) throw DimensionError("affine_fit: target dim mismatch");
  if (samples.size() < sd + 1)
    throw SingularMatrixError("affine_fit: need at least dim+1 = " + std::to_string(sd + 1) +
                              " samples, got " + std::to_string(samples.size()));

  // Design matrix [x^T 1]; one least-squares solve shared by all target rows.
  Mat x(samples.size(), sd + 1);
  Mat y(samples.size(), td);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [xs, ys] = samples[i];
    if (xs.dim() != sd || ys.dim() != td)
      throw DimensionError("affine_fit: ragged sample at index " + std::to_string(i));
    for (std::size_t j = 0; j < sd; ++j) x(i, j) = xs[j];
    x(i, sd) = 1.0;
    for (std::size_t j = 0; j < td; ++j) y(i, j) = ys[j];
  }

  std::vector<std::string> names;
  names.reserve(sd + 1);
  for (std::size_t j = 0; j < sd; ++j) names.push_back("x" + std::to_string(j + 1));
  names.push_back("constant");

  Mat beta = lsq_solve(x, y, names);  // (sd+1) x td

  AffineFit fit;
  fit.a = Mat(td, sd);
  fit.u = Vec(td);
  for (std::size_t i = 0; i < td; ++i) {
    for (std::size_t j = 0; j < sd; ++j) fit.a(i, j) = beta(j, i);
    fit.u[i] = beta(sd, i);
  }

  for (const auto& [xs, ys] : samples)
    fit.residual = std::max(fit.residual, target.norm_of(fit.a.apply(xs) + fit.u - ys));
  return fit;
}

IsometryDefect isometry_defect(const MapModel& m, const Domain& d, const Metric& target_metric,
                               std::size_t n_pairs, std::uint64_t seed,
                               std::vector<double>* per_pair) {
  if (d.space().dim != m.source().dim)
    throw DimensionError("isometry_defect: domain does not live in the map's source space");
  Rng rng(seed);
  IsometryDefect out;
  out.worst_a = Vec::zero(d.space().dim);
  out.worst_b = out.worst_a;
  if (per_pair) per_pair->reserve(n_pairs);

  for (std::size_t i = 0; i < n_pairs; ++i) {
    Vec a = d.sample(rng);
    Vec b = d.sample(rng);
    double defect = std::abs(target_metric(m(a), m(b)) - d.space().distance(a, b));
    if (per_pair) per_pair->push_back(defect);
    if (defect > out.max_defect) {
      out.max_defect = defect;
      out.worst_a = a;
      out.worst_b = b;
    }
    ++out.pairs;
  }
  return out;
}

}  // namespace mulam
