#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mulam/domain.hpp"
#include "mulam/map_model.hpp"

namespace mulam {

/// Dyadic subdivision of [f, g]: h_k = (k/2^n)(g - f) + f for k = 0..2^n.
/// Endpoints are f and g exactly; consecutive spacing is ||g-f|| / 2^n.
struct DyadicChain {
  Vec f, g;
  unsigned n = 0;
  std::vector<Vec> points;

  std::size_t size() const { return points.size(); }
};

/// Minimal n >= 0 with ||f - g|| / 2^n < eps.
unsigned choose_subdivision(const NormedSpace& s, const Vec& f, const Vec& g, double eps);

DyadicChain dyadic_chain(const Vec& f, const Vec& g, unsigned n);

struct ChainDefects {
  std::vector<double> per_k;  // ||T(h_k) + T(h_{k+2}) - 2 T(h_{k+1})||
  double max = 0.0;
  std::size_t argmax = 0;
};

/// The spacing-2 midpoint relations along a chain; zero for every k is what
/// local midpoint preservation telescopes from.
ChainDefects chain_midpoint_defect(const MapModel& t, const DyadicChain& chain,
                                   const NormedSpace& target);

struct SpacingLevels {
  /// level_max[j-1] = max_k ||T(h_k) + T(h_{k + 2^j}) - 2 T(h_{k + 2^(j-1)})||
  std::vector<double> level_max;
  double base = 0.0;  // the level-1 (spacing-2) maximum
  /// Triangle-inequality cascade bound (2^(j-1))^2 * base per level.
  std::vector<double> cascade_bound;
};

/// Verifies the induction that spacing-2 relations imply all coarser ones;
/// the top level is exactly ||T(f) + T(g) - 2 T((f+g)/2)||.
SpacingLevels spacing_collapse_check(const MapModel& t, const DyadicChain& chain,
                                     const NormedSpace& target);

/// ||T((f+g)/2) - (T(f)+T(g))/2|| in the target metric. Requires the whole
/// segment [f, g] inside T's declared domain; throws DomainEscapeError naming
/// the escaping parameter otherwise.
double midpoint_defect(const MapModel& t, const Vec& f, const Vec& g,
                       const Metric& target_metric, std::size_t containment_steps = 256);

/// Reflection fixed-center test: samples L, checks T(L) and the reflection
/// through c stay in L, then returns ||T(c) - c||. Surjectivity of T onto L
/// is a construction-time property of the fixtures, not something an oracle
/// can decide; only invariance is sampled.
double fixed_center_check(const SphereSet& l, const Vec& c, const MapModel& t,
                          std::size_t n_samples, std::uint64_t seed);
double fixed_center_check(const Domain& l, const Vec& c, const MapModel& t,
                          std::size_t n_samples, std::uint64_t seed);

/// A certified midpoint-preservation run: margin guard first (the chain
/// refuses to certify when the segment has no uniform distance to the
/// complement), then the dyadic chain at the margin-chosen depth.
struct MidpointCertificate {
  bool certified = false;
  double margin = 0.0;
  unsigned depth = 0;
  double max_chain_defect = 0.0;
  double midpoint_defect = 0.0;
  std::string refusal;  // non-empty when certification was refused
};

MidpointCertificate certify_midpoint(const MapModel& t, const Domain& u, const Vec& f,
                                     const Vec& g, const Metric& target_metric,
                                     std::size_t margin_steps = 33, unsigned max_depth = 20,
                                     const ProbeConfig& cfg = {});

}  // namespace mulam
