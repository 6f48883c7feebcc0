#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mulam/norms.hpp"
#include "mulam/rng.hpp"

namespace mulam {

enum class DomainKind {
  open_ball,
  ball_union,
  star_shaped,
  convex_polytope,
  cone_without_apex,
  closed_set,
  custom,
};

std::string to_string(DomainKind k);
DomainKind domain_kind_from_string(const std::string& s);

/// Declared topology and shape metadata. Openness and convexity are
/// declarations, not inferences: a membership oracle cannot decide either.
struct DomainProps {
  bool open = false;
  bool convex = false;
  std::optional<Vec> star_center;
};

class DomainImpl {
 public:
  DomainImpl(NormedSpace space, DomainKind kind, DomainProps props, double bounding_radius);
  virtual ~DomainImpl() = default;

  virtual bool contains_raw(const Vec& x) const = 0;
  /// Exact distance from an inside point to the complement, when the shape
  /// admits a closed form. Never an overestimate.
  virtual std::optional<double> inradius_analytic(const Vec& x) const { return std::nullopt; }
  /// Shape-specific exact sampler; nullopt defers to rejection sampling.
  virtual std::optional<Vec> direct_sample(Rng& rng) const { return std::nullopt; }
  /// Deterministic notable members (segment endpoints, ball axis points...).
  virtual std::vector<Vec> probe_points() const { return {}; }
  virtual nlohmann::ordered_json shape_json() const = 0;

  NormedSpace space;
  DomainKind kind;
  DomainProps props;
  double bounding_radius;
};

/// A set model: membership oracle plus geometric metadata. Immutable; all
/// probing operations take explicit seeds.
class Domain {
 public:
  static Domain ball(const NormedSpace& sp, Vec center, double radius, bool open = true);
  /// Ball of a shape norm that may differ from the ambient norm (boxes are
  /// weighted-max balls).
  static Domain shaped_ball(const NormedSpace& sp, Norm shape, Vec center, double radius,
                            bool open);
  static Domain box(const NormedSpace& sp, Vec center, Vec half_widths, bool open);
  /// Closed polytope {x : normals . x <= offsets}, row by row.
  static Domain polytope(const NormedSpace& sp, Mat normals, Vec offsets,
                         double bounding_radius);
  /// Closed segment [a, b] as a domain (empty interior in dim >= 2).
  static Domain segment_set(const NormedSpace& sp, Vec a, Vec b);
  static Domain union_of(std::vector<Domain> members);
  static Domain custom(const NormedSpace& sp, std::function<bool(const Vec&)> fn,
                       DomainKind kind, DomainProps props, double bounding_radius);
  /// {x + offset : x in d}.
  static Domain translate(const Domain& d, const Vec& offset);
  /// Interior oracle: membership plus positive distance to the complement.
  static Domain interior_of(const Domain& d);

  bool contains(const Vec& x) const;
  const NormedSpace& space() const { return impl_->space; }
  DomainKind kind() const { return impl_->kind; }
  const DomainProps& props() const { return impl_->props; }
  double bounding_radius() const { return impl_->bounding_radius; }
  std::optional<double> analytic_inradius(const Vec& x) const;
  Vec sample(Rng& rng, std::size_t max_trials = 200000) const;
  std::vector<Vec> probe_points() const { return impl_->probe_points(); }
  /// Same shape with overridden declared metadata (used by negative tests
  /// that deliberately mislabel a fixture).
  Domain with_props(DomainProps p) const;
  nlohmann::ordered_json to_json() const;

  const DomainImpl& impl() const { return *impl_; }
  explicit Domain(std::shared_ptr<const DomainImpl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const DomainImpl> impl_;
};

/// Cone of all segments from the apex into an open base set, apex removed.
/// Membership: x != apex and some s >= 1 puts apex + s(x - apex) in the base.
Domain cone_without_apex(const Vec& apex, const Domain& base);

/// Diagnostic for cone membership: the ray witness and whether the s-grid
/// cutoff was the binding constraint (surfaced because no a-priori bound on
/// the witness exists for a general base).
struct ConeWitness {
  bool member = false;
  double s = 0.0;
  Vec base_point;
  bool cutoff_hit = false;
};
ConeWitness cone_witness(const Domain& cone, const Vec& x);

struct ProbeConfig {
  std::size_t dir_mult = 64;       // directions per dimension for inradius probes
  std::size_t ball_samples = 256;  // membership samples per tested ball
  std::uint64_t seed = 0x6d756c616dULL;
  int bisect_iters = 80;
  int shrink_levels = 60;
  std::size_t ray_steps = 64;      // scan resolution before bisection
};

/// Lower estimate of the distance from x to the complement of D. Returns the
/// closed form when the shape has one, otherwise probes sampled directions
/// and verifies sampled membership of the resulting ball.
double inradius_at(const Domain& d, const Vec& x, const ProbeConfig& cfg = {});

struct StarDefect {
  double defect = 0.0;  // 0 means the sampled star-shape test passed
  std::optional<Vec> witness_x;
  double witness_t = 0.0;
  std::optional<Vec> witness_point;
};

/// Samples members x and scans t c + (1-t) x for escape; reports the first
/// violating witness.
StarDefect star_defect(const Domain& d, const Vec& c, std::size_t n_samples,
                       std::uint64_t seed, std::size_t t_steps = 64);

/// Largest radius from a shrinking schedule whose sampled ball stays inside
/// D; with `predicted` set, verifies exactly that radius and returns it on
/// pass, nullopt on fail.
std::optional<double> openness_witness(const Domain& d, const Vec& x,
                                       std::optional<double> predicted = std::nullopt,
                                       const ProbeConfig& cfg = {});

struct ApproachStep {
  std::size_t n = 0;
  Vec x;
  bool interior = false;
  double dist = 0.0;
};

struct ApproachResult {
  std::vector<ApproachStep> steps;  // every stride-th term plus the last
  bool all_interior = true;
  bool nonincreasing = true;  // strictly decreasing unless the distance is 0
  double min_dist = 0.0;
};

/// The sequence x_n = (1 - 1/n) p + (1/n) a with per-term interiority and
/// distance to p; the convex-closure approach argument as a computation.
ApproachResult interior_approach(const Domain& x_set, const Vec& p, const Vec& a,
                                 std::size_t n_max, std::size_t stride = 1,
                                 const ProbeConfig& cfg = {});

struct ConvexityDefect {
  double defect = 0.0;
  std::optional<Vec> witness_a, witness_b;
  double witness_t = 0.0;
  std::optional<Vec> witness_point;
};

/// Sampled convexity of a declared-convex set and of its interior: segment
/// points must stay in the set, and between interior points stay interior.
ConvexityDefect interior_convexity_defect(const Domain& x_set, std::size_t n_pairs,
                                          std::uint64_t seed, std::size_t t_steps = 32,
                                          const ProbeConfig& cfg = {});

bool is_interior_point(const Domain& d, const Vec& x, const ProbeConfig& cfg = {});

/// The set {a : ||a - h|| = r = ||a - h'||}, thickened for sampling and
/// membership because the exact set has measure zero.
struct SphereSet {
  NormedSpace space;
  Vec h;
  Vec h_prime;
  double r = 0.0;
  double thickness = 1e-9;
  std::vector<Vec> known_members;  // fixture-supplied exact members

  bool member(const Vec& a) const;
  Vec sample(Rng& rng, std::size_t max_trials = 100000) const;
};

}  // namespace mulam
