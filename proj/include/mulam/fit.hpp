#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mulam/domain.hpp"
#include "mulam/map_model.hpp"

namespace mulam {

/// Best affine model A x + u of a sample set and how badly it misses. A
/// positive residual on an isometry's graph is a non-extendability
/// certificate; a zero one is the recovered extension.
struct AffineFit {
  Mat a;
  Vec u;
  /// Max over the fit samples of ||A x + u - y|| in the target norm.
  double residual = 0.0;
};

/// Least squares over (x, y) pairs (Euclidean objective; residual reported in
/// the target norm). Needs at least dim+1 affinely independent sources;
/// throws SingularMatrixError naming the deficient directions otherwise.
AffineFit affine_fit(const std::vector<std::pair<Vec, Vec>>& samples,
                     const NormedSpace& target);

struct IsometryDefect {
  double max_defect = 0.0;
  Vec worst_a, worst_b;
  std::size_t pairs = 0;
};

/// Max over sampled pairs (a,b) in D^2 of |d(M(a), M(b)) - ||a - b|||, with
/// the maximizing pair. `per_pair`, when given, collects every sampled defect
/// (for CSV plot output).
IsometryDefect isometry_defect(const MapModel& m, const Domain& d, const Metric& target_metric,
                               std::size_t n_pairs, std::uint64_t seed,
                               std::vector<double>* per_pair = nullptr);

}  // namespace mulam
