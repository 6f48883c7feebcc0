#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "mulam/domain.hpp"
#include "mulam/fit.hpp"
#include "mulam/map_model.hpp"

namespace mulam {

/// Measured violations of the identities the extension must satisfy, each a
/// max over its own sample family. Nothing here is assumed: the matrix is
/// built from basis evaluations only and every linearity claim is measured.
struct DefectReport {
  double radial_scaling = 0.0;        // T0(t a) = t T0(a) on the recentred domain
  double small_ball_additivity = 0.0; // T0(a+b) = T0(a)+T0(b) on the safe ball
  double homogeneity = 0.0;           // Text(s x) = s Text(x), s spanning R
  double additivity = 0.0;            // Text(x+y) = Text(x)+Text(y), incl. x+y=0
  double agreement = 0.0;             // max ||A x + u - T(x)|| over the domain
  double isometry = 0.0;              // max | ||A x|| - ||x|| |
  bool invertibility_ok = false;      // square and condition estimate < 1e12
  double condition_estimate = 0.0;

  std::optional<Vec> agreement_witness;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> sample_counts;

  double max_defect() const;
};

struct ExtensionResult {
  Mat a;       // linear part, columns are the extension on basis vectors
  Vec u;       // translation, u = T(a0) - A a0
  double r = 0.0;  // safe radius used
  Vec center;  // the recentre point actually used
  DefectReport defects;
};

/// Recentre: V1 = U1 - a0 and T0 = (x -> x - T(a0)) o T o (x -> x + a0), so
/// T0(0) = 0. Verifies a0 is a sampled star center unless told it was checked
/// upstream.
std::pair<Domain, MapModel> recentre(const MapModel& t, const Domain& u1, const Vec& a0,
                                     std::size_t star_samples = 200, std::uint64_t seed = 1,
                                     bool skip_star_check = false);

/// r = 0.9 * inradius(0) / 3, so the tripled ball stays inside; refuses when
/// the origin has no positive inradius.
double safe_radius(const Domain& v1, const ProbeConfig& cfg = {}, double tol_abs = 1e-9);

/// The radial extension: 0 at 0, else (||x||/r) T0((r/||x||) x). Defined on
/// the whole source space; only evaluates T0 on the radius-r sphere.
MapModel radial_extension(const MapModel& t0, double r);

/// Columns are the map on the standard basis; linearity is NOT assumed here,
/// the verify step measures it.
Mat materialize(const MapModel& t_ext, std::size_t dim);

/// Measures every identity the extension theorem asserts, on seeded sample
/// families. Report-only: no check failure throws.
DefectReport verify_extension(const MapModel& t, const Domain& u1, const Vec& a0, const Mat& a,
                              const Vec& u, double r, std::size_t n_samples, std::uint64_t seed);

struct ExtendOptions {
  std::size_t n_samples = 2000;
  std::size_t star_samples = 200;
  std::uint64_t seed = 1;
  double tol_abs = 1e-9;
  /// Run through refused preconditions: a positive star defect is recorded
  /// instead of thrown, and a safe-radius refusal re-centres at the best
  /// sampled interior point. The counterexamples exist to be executed.
  bool force = false;
};

/// The full pipeline: star check, recentre, safe radius, radial extension,
/// materialize, verify.
ExtensionResult extend_isometry(const MapModel& t, const Domain& u1,
                                std::optional<Vec> a0 = std::nullopt,
                                const ExtendOptions& opts = {});

/// Convex-body variant: validates sampled convexity and isometry on X, runs
/// the pipeline on the interior, then extends the agreement check to all of
/// X including ray-cast boundary points (the closure step).
ExtensionResult extend_convex(const MapModel& t, const Domain& x, std::size_t n_samples,
                              std::uint64_t seed);

}  // namespace mulam
