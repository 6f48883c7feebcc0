#include "mulam/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mulam/json_io.hpp"

namespace mulam {

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::open_ball: return "open_ball";
    case DomainKind::ball_union: return "ball_union";
    case DomainKind::star_shaped: return "star_shaped";
    case DomainKind::convex_polytope: return "convex_polytope";
    case DomainKind::cone_without_apex: return "cone_without_apex";
    case DomainKind::closed_set: return "closed_set";
    case DomainKind::custom: return "custom";
  }
  return "?";
}

DomainKind domain_kind_from_string(const std::string& s) {
  if (s == "open_ball") return DomainKind::open_ball;
  if (s == "ball_union") return DomainKind::ball_union;
  if (s == "star_shaped") return DomainKind::star_shaped;
  if (s == "convex_polytope") return DomainKind::convex_polytope;
  if (s == "cone_without_apex") return DomainKind::cone_without_apex;
  if (s == "closed_set") return DomainKind::closed_set;
  if (s == "custom") return DomainKind::custom;
  throw FixtureError("unknown domain kind: " + s);
}

DomainImpl::DomainImpl(NormedSpace sp, DomainKind k, DomainProps pr, double bound)
    : space(std::move(sp)), kind(k), props(std::move(pr)), bounding_radius(bound) {}

namespace {

Json props_json(const DomainProps& p) {
  Json j;
  j["open"] = p.open;
  j["convex"] = p.convex;
  j["star_center"] = p.star_center ? vec_to_json(*p.star_center) : Json(nullptr);
  return j;
}

Vec unit_direction(Rng& rng, const NormedSpace& sp) {
  for (int tries = 0; tries < 128; ++tries) {
    Vec u = rng.normal_vec(sp.dim);
    double n = sp.norm(u);
    if (n > 1e-300) return (1.0 / n) * u;
  }
  throw SamplingError("unit_direction: degenerate draws");
}

// ---------------------------------------------------------------------------

class ShapedBallImpl : public DomainImpl {
 public:
  ShapedBallImpl(NormedSpace sp, Norm shape, Vec center, double radius, bool open)
      : DomainImpl(sp,
                   open ? DomainKind::open_ball : DomainKind::closed_set,
                   DomainProps{open, true, center},
                   0.0),
        shape_(std::move(shape)),
        center_(std::move(center)),
        radius_(radius),
        open_(open) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw InvalidArgumentError("ball: radius must be positive and finite");
    if (center_.dim() != space.dim) throw DimensionError("ball: center dim mismatch");
    bounding_radius = compute_bound();
  }

  bool contains_raw(const Vec& x) const override {
    double n = shape_(x - center_);
    return open_ ? (n < radius_) : (n <= radius_);
  }

  std::optional<double> inradius_analytic(const Vec& x) const override {
    if (shape_ == space.norm) return radius_ - shape_(x - center_);
    // Boxes: a (weighted) max ball is a product of slabs; the distance to the
    // complement is the smallest slab slack over the ambient dual norms.
    if (shape_.kind() == NormKind::linf || shape_.kind() == NormKind::weighted_linf) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < space.dim; ++i) {
        double w = (shape_.kind() == NormKind::weighted_linf) ? shape_.weights()[i] : 1.0;
        double slack = radius_ / w - std::abs(x[i] - center_[i]);
        auto dual = space.norm.dual(Vec::unit(space.dim, i));
        if (!dual) return std::nullopt;
        best = std::min(best, slack / *dual);
      }
      return best;
    }
    return std::nullopt;
  }

  std::optional<Vec> direct_sample(Rng& rng) const override {
    return sample_in_ball(rng, shape_, center_, radius_);
  }

  std::vector<Vec> probe_points() const override {
    std::vector<Vec> pts{center_};
    for (std::size_t i = 0; i < space.dim; ++i) {
      double w = 1.0;
      if (shape_.kind() == NormKind::weighted_linf) w = shape_.weights()[i];
      Vec e = Vec::unit(space.dim, i);
      double unit_r = radius_ / shape_(e);
      (void)w;
      double step = open_ ? unit_r / 2.0 : unit_r;
      pts.push_back(center_ + step * e);
      pts.push_back(center_ - step * e);
    }
    // Corners of closed boxes; the extreme points of max balls.
    if (!open_ && space.dim <= 6 &&
        (shape_.kind() == NormKind::linf || shape_.kind() == NormKind::weighted_linf)) {
      const std::size_t d = space.dim;
      for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Vec c = center_;
        for (std::size_t i = 0; i < d; ++i) {
          double w = (shape_.kind() == NormKind::weighted_linf) ? shape_.weights()[i] : 1.0;
          c[i] += ((mask >> i) & 1 ? 1.0 : -1.0) * radius_ / w;
        }
        pts.push_back(c);
      }
    }
    return pts;
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = open_ ? "open_ball" : "closed_ball";
    j["center"] = vec_to_json(center_);
    j["radius"] = radius_;
    j["shape_norm"] = norm_to_json(shape_);
    return j;
  }

  const Norm& shape() const { return shape_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  bool open() const { return open_; }

 private:
  double compute_bound() const {
    double c = space.norm(center_);
    if (shape_ == space.norm) return c + radius_;
    // Conservative norm-equivalence estimate over the axis directions plus a
    // fixed deterministic direction sweep.
    double k = 0.0;
    Rng rng(0x626f756e64ULL);
    for (std::size_t i = 0; i < space.dim; ++i) {
      Vec e = Vec::unit(space.dim, i);
      k = std::max(k, space.norm(e) / shape_(e));
    }
    for (int t = 0; t < 128; ++t) {
      Vec u = rng.normal_vec(space.dim);
      double s = shape_(u);
      if (s > 1e-300) k = std::max(k, space.norm(u) / s);
    }
    return c + radius_ * k * 1.5;
  }

  Norm shape_;
  Vec center_;
  double radius_;
  bool open_;
};

// ---------------------------------------------------------------------------

class PolytopeImpl : public DomainImpl {
 public:
  PolytopeImpl(NormedSpace sp, Mat normals, Vec offsets, double bound)
      : DomainImpl(sp, DomainKind::convex_polytope, DomainProps{false, true, std::nullopt},
                   bound),
        normals_(std::move(normals)),
        offsets_(std::move(offsets)) {
    if (normals_.cols() != space.dim) throw DimensionError("polytope: normal dim mismatch");
    if (normals_.rows() != offsets_.dim())
      throw DimensionError("polytope: offsets length mismatch");
    dual_.reserve(normals_.rows());
    have_dual_ = true;
    for (std::size_t i = 0; i < normals_.rows(); ++i) {
      auto d = space.norm.dual(normals_.row(i));
      if (!d || !(*d > 0.0)) {
        have_dual_ = false;
        break;
      }
      dual_.push_back(*d);
    }
  }

  bool contains_raw(const Vec& x) const override {
    for (std::size_t i = 0; i < normals_.rows(); ++i)
      if (dot(normals_.row(i), x) > offsets_[i]) return false;
    return true;
  }

  std::optional<double> inradius_analytic(const Vec& x) const override {
    if (!have_dual_) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < normals_.rows(); ++i)
      best = std::min(best, (offsets_[i] - dot(normals_.row(i), x)) / dual_[i]);
    return best;
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = "polytope";
    j["normals"] = mat_to_json(normals_);
    j["offsets"] = vec_to_json(offsets_);
    j["bounding_radius"] = bounding_radius;
    return j;
  }

 private:
  Mat normals_;
  Vec offsets_;
  std::vector<double> dual_;
  bool have_dual_ = false;
};

// ---------------------------------------------------------------------------

class SegmentImpl : public DomainImpl {
 public:
  SegmentImpl(NormedSpace sp, Vec a, Vec b)
      : DomainImpl(sp, DomainKind::closed_set, DomainProps{false, true, std::nullopt}, 0.0),
        a_(std::move(a)),
        b_(std::move(b)) {
    if (a_.dim() != space.dim || b_.dim() != space.dim)
      throw DimensionError("segment_set: endpoint dim mismatch");
    bounding_radius = std::max(space.norm(a_), space.norm(b_));
    len2_ = dot(b_ - a_, b_ - a_);
  }

  bool contains_raw(const Vec& x) const override {
    // Euclidean point-to-segment distance; exact members sit at zero.
    double t = 0.0;
    if (len2_ > 0.0) t = std::clamp(dot(x - a_, b_ - a_) / len2_, 0.0, 1.0);
    Vec proj = a_ + t * (b_ - a_);
    double d2 = dot(x - proj, x - proj);
    double scale = std::max(1.0, len2_);
    return d2 <= 1e-24 * scale;
  }

  std::optional<double> inradius_analytic(const Vec& x) const override {
    if (space.dim >= 2) return 0.0;  // empty interior
    return std::min(space.distance(x, a_), space.distance(x, b_));
  }

  std::optional<Vec> direct_sample(Rng& rng) const override {
    return segment_point(a_, b_, rng.uniform01());
  }

  std::vector<Vec> probe_points() const override {
    return {a_, b_, segment_point(a_, b_, 0.5)};
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = "segment";
    j["a"] = vec_to_json(a_);
    j["b"] = vec_to_json(b_);
    return j;
  }

 private:
  Vec a_, b_;
  double len2_ = 0.0;
};

// ---------------------------------------------------------------------------

class UnionImpl : public DomainImpl {
 public:
  explicit UnionImpl(std::vector<Domain> members)
      : DomainImpl(members.at(0).space(), DomainKind::closed_set, DomainProps{}, 0.0),
        members_(std::move(members)) {
    bool all_balls = true, all_open = true;
    for (const auto& m : members_) {
      if (m.space().dim != space.dim) throw DimensionError("union_of: member dim mismatch");
      bounding_radius = std::max(bounding_radius, m.bounding_radius());
      all_balls &= (m.kind() == DomainKind::open_ball);
      all_open &= m.props().open;
    }
    kind = all_balls ? DomainKind::ball_union : DomainKind::closed_set;
    props.open = all_open;
    props.convex = false;
  }

  bool contains_raw(const Vec& x) const override {
    for (const auto& m : members_)
      if (m.contains(x)) return true;
    return false;
  }

  std::optional<double> inradius_analytic(const Vec& x) const override {
    // Max over the members that contain x: a valid lower bound always, and
    // exact for disjoint members (the shipped fixtures).
    bool any = false;
    double best = 0.0;
    for (const auto& m : members_) {
      if (!m.contains(x)) continue;
      auto v = m.analytic_inradius(x);
      if (!v) return std::nullopt;
      any = true;
      best = std::max(best, *v);
    }
    if (!any) return std::nullopt;
    return best;
  }

  std::optional<Vec> direct_sample(Rng& rng) const override {
    return members_[rng.index(members_.size())].sample(rng);
  }

  std::vector<Vec> probe_points() const override {
    std::vector<Vec> pts;
    for (const auto& m : members_) {
      auto p = m.probe_points();
      pts.insert(pts.end(), p.begin(), p.end());
    }
    return pts;
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = "union";
    Json arr = Json::array();
    for (const auto& m : members_) arr.push_back(m.to_json());
    j["members"] = arr;
    return j;
  }

 private:
  std::vector<Domain> members_;
};

// ---------------------------------------------------------------------------

class CustomImpl : public DomainImpl {
 public:
  CustomImpl(NormedSpace sp, std::function<bool(const Vec&)> fn, DomainKind k, DomainProps pr,
             double bound)
      : DomainImpl(sp, k, pr, bound), fn_(std::move(fn)) {}

  bool contains_raw(const Vec& x) const override { return fn_(x); }

  Json shape_json() const override {
    throw FixtureError("custom domain is not serializable");
  }

 private:
  std::function<bool(const Vec&)> fn_;
};

// ---------------------------------------------------------------------------

class TranslateImpl : public DomainImpl {
 public:
  TranslateImpl(Domain inner, Vec offset)
      : DomainImpl(inner.space(), inner.kind(), inner.props(),
                   inner.bounding_radius() + inner.space().norm(offset)),
        inner_(std::move(inner)),
        offset_(std::move(offset)) {
    if (offset_.dim() != space.dim) throw DimensionError("translate: offset dim mismatch");
    if (props.star_center) props.star_center = *props.star_center + offset_;
  }

  bool contains_raw(const Vec& x) const override { return inner_.contains(x - offset_); }

  std::optional<double> inradius_analytic(const Vec& x) const override {
    return inner_.analytic_inradius(x - offset_);
  }

  std::optional<Vec> direct_sample(Rng& rng) const override {
    return inner_.sample(rng) + offset_;
  }

  std::vector<Vec> probe_points() const override {
    auto pts = inner_.probe_points();
    for (auto& p : pts) p = p + offset_;
    return pts;
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = "translate";
    j["offset"] = vec_to_json(offset_);
    j["inner"] = inner_.to_json();
    return j;
  }

 private:
  Domain inner_;
  Vec offset_;
};

// ---------------------------------------------------------------------------

class InteriorImpl : public DomainImpl {
 public:
  explicit InteriorImpl(Domain inner)
      : DomainImpl(inner.space(), inner.kind(),
                   DomainProps{true, inner.props().convex, inner.props().star_center},
                   inner.bounding_radius()),
        inner_(std::move(inner)) {}

  bool contains_raw(const Vec& x) const override {
    if (!inner_.contains(x)) return false;
    return is_interior_point(inner_, x);
  }

  std::optional<double> inradius_analytic(const Vec& x) const override {
    return inner_.analytic_inradius(x);
  }

  std::optional<Vec> direct_sample(Rng& rng) const override {
    for (int t = 0; t < 128; ++t) {
      Vec s = inner_.sample(rng);
      if (contains_raw(s)) return s;
    }
    return std::nullopt;
  }

  std::vector<Vec> probe_points() const override {
    std::vector<Vec> pts;
    for (auto& p : inner_.probe_points())
      if (contains_raw(p)) pts.push_back(p);
    return pts;
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = "interior";
    j["inner"] = inner_.to_json();
    return j;
  }

 private:
  Domain inner_;
};

// ---------------------------------------------------------------------------

class PropsOverrideImpl : public DomainImpl {
 public:
  PropsOverrideImpl(std::shared_ptr<const DomainImpl> inner, DomainProps pr)
      : DomainImpl(inner->space, inner->kind, std::move(pr), inner->bounding_radius),
        inner_(std::move(inner)) {}

  bool contains_raw(const Vec& x) const override { return inner_->contains_raw(x); }
  std::optional<double> inradius_analytic(const Vec& x) const override {
    return inner_->inradius_analytic(x);
  }
  std::optional<Vec> direct_sample(Rng& rng) const override {
    return inner_->direct_sample(rng);
  }
  std::vector<Vec> probe_points() const override { return inner_->probe_points(); }
  Json shape_json() const override { return inner_->shape_json(); }

 private:
  std::shared_ptr<const DomainImpl> inner_;
};

// ---------------------------------------------------------------------------

class ConeImpl : public DomainImpl {
 public:
  ConeImpl(Vec apex, Domain base)
      : DomainImpl(base.space(), DomainKind::cone_without_apex,
                   DomainProps{true, false, std::nullopt},
                   std::max(base.space().norm(apex), base.bounding_radius())),
        apex_(std::move(apex)),
        base_(std::move(base)) {
    if (apex_.dim() != space.dim) throw DimensionError("cone: apex dim mismatch");
    if (base_.contains(apex_))
      throw PreconditionError("cone_without_apex: apex " + str(apex_) + " lies in the base");
    if (!base_.props().open)
      throw PreconditionError("cone_without_apex: base must be a declared-open set");
  }

  ConeWitness witness(const Vec& x) const {
    ConeWitness w;
    Vec d = x - apex_;
    double nd = space.norm(d);
    if (nd == 0.0) return w;  // the apex itself is excluded

    if (const auto* ball = dynamic_cast<const ShapedBallImpl*>(&base_.impl())) {
      // s -> shape-norm of (apex + s d - center) is convex; golden-section it.
      const Norm& shape = ball->shape();
      Vec m = ball->center() - apex_;
      double sd = shape(d);
      if (sd <= 0.0) return w;
      double s_hi = (shape(m) + ball->radius()) / sd + 1.0;
      auto phi = [&](double s) { return shape(s * d - m); };
      double lo = 1.0, hi = std::max(1.0, s_hi);
      const double gr = 0.6180339887498949;
      double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
      double f1 = phi(c1), f2 = phi(c2);
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        if (f1 <= f2) {
          hi = c2;
          c2 = c1;
          f2 = f1;
          c1 = hi - gr * (hi - lo);
          f1 = phi(c1);
        } else {
          lo = c1;
          c1 = c2;
          f1 = f2;
          c2 = lo + gr * (hi - lo);
          f2 = phi(c2);
        }
      }
      double s_best = 0.5 * (lo + hi);
      double best = phi(s_best);
      if (ball->open() ? best < ball->radius() : best <= ball->radius()) {
        w.member = true;
        w.s = s_best;
        w.base_point = apex_ + s_best * d;
      }
      return w;
    }

    // General base: geometric s-grid up to the heuristic cutoff.
    double s_max = std::max(2.0, 4.0 * (base_.bounding_radius() + space.norm(apex_)) / nd);
    const std::size_t steps = 256;
    for (std::size_t j = 0; j < steps; ++j) {
      double s = std::pow(s_max, static_cast<double>(j) / static_cast<double>(steps - 1));
      Vec y = apex_ + s * d;
      if (base_.contains(y)) {
        w.member = true;
        w.s = s;
        w.base_point = y;
        return w;
      }
    }
    w.cutoff_hit = true;  // unresolved: the grid ran out without a witness
    return w;
  }

  bool contains_raw(const Vec& x) const override { return witness(x).member; }

  std::optional<Vec> direct_sample(Rng& rng) const override {
    Vec y = base_.sample(rng);
    double t = rng.uniform01();  // t < 1 keeps the point off the apex
    return segment_point(apex_, y, t);
  }

  Json shape_json() const override {
    Json j;
    j["kind"] = "cone";
    j["apex"] = vec_to_json(apex_);
    j["base"] = base_.to_json();
    return j;
  }

 private:
  Vec apex_;
  Domain base_;
};

}  // namespace

// ---------------------------------------------------------------------------

Domain Domain::ball(const NormedSpace& sp, Vec center, double radius, bool open) {
  return Domain(std::make_shared<ShapedBallImpl>(sp, sp.norm, std::move(center), radius, open));
}

Domain Domain::shaped_ball(const NormedSpace& sp, Norm shape, Vec center, double radius,
                           bool open) {
  return Domain(
      std::make_shared<ShapedBallImpl>(sp, std::move(shape), std::move(center), radius, open));
}

Domain Domain::box(const NormedSpace& sp, Vec center, Vec half_widths, bool open) {
  if (half_widths.dim() != sp.dim) throw DimensionError("box: half_widths dim mismatch");
  std::vector<double> w(sp.dim);
  for (std::size_t i = 0; i < sp.dim; ++i) {
    if (!(half_widths[i] > 0.0))
      throw InvalidArgumentError("box: half widths must be positive");
    w[i] = 1.0 / half_widths[i];
  }
  return shaped_ball(sp, Norm::weighted_linf(std::move(w)), std::move(center), 1.0, open);
}

Domain Domain::polytope(const NormedSpace& sp, Mat normals, Vec offsets,
                        double bounding_radius) {
  return Domain(
      std::make_shared<PolytopeImpl>(sp, std::move(normals), std::move(offsets), bounding_radius));
}

Domain Domain::segment_set(const NormedSpace& sp, Vec a, Vec b) {
  return Domain(std::make_shared<SegmentImpl>(sp, std::move(a), std::move(b)));
}

Domain Domain::union_of(std::vector<Domain> members) {
  if (members.empty()) throw InvalidArgumentError("union_of: no members");
  return Domain(std::make_shared<UnionImpl>(std::move(members)));
}

Domain Domain::custom(const NormedSpace& sp, std::function<bool(const Vec&)> fn, DomainKind kind,
                      DomainProps props, double bounding_radius) {
  return Domain(
      std::make_shared<CustomImpl>(sp, std::move(fn), kind, std::move(props), bounding_radius));
}

Domain Domain::translate(const Domain& d, const Vec& offset) {
  return Domain(std::make_shared<TranslateImpl>(d, offset));
}

Domain Domain::interior_of(const Domain& d) {
  return Domain(std::make_shared<InteriorImpl>(d));
}

Domain Domain::with_props(DomainProps p) const {
  return Domain(std::make_shared<PropsOverrideImpl>(impl_, std::move(p)));
}

bool Domain::contains(const Vec& x) const {
  if (x.dim() != impl_->space.dim)
    throw DimensionError("Domain::contains: dim " + std::to_string(x.dim()) + " vs space dim " +
                         std::to_string(impl_->space.dim));
  if (!x.all_finite())
    throw InvalidArgumentError("Domain::contains: non-finite entry in " + str(x));
  return impl_->contains_raw(x);
}

std::optional<double> Domain::analytic_inradius(const Vec& x) const {
  auto v = impl_->inradius_analytic(x);
  if (v) return std::max(0.0, *v);
  return std::nullopt;
}

Vec Domain::sample(Rng& rng, std::size_t max_trials) const {
  for (std::size_t t = 0; t < 64; ++t) {
    auto s = impl_->direct_sample(rng);
    if (!s) break;  // no shape sampler: fall through to rejection
    if (impl_->contains_raw(*s)) return *s;
  }
  const double r = impl_->bounding_radius * 1.0000001 + 1e-12;
  for (std::size_t t = 0; t < max_trials; ++t) {
    Vec prop = sample_in_ball(rng, impl_->space.norm, Vec::zero(impl_->space.dim), r);
    if (impl_->contains_raw(prop)) return prop;
  }
  throw SamplingError("Domain::sample: rejection failed after " + std::to_string(max_trials) +
                      " trials (kind " + to_string(impl_->kind) + ", bounding radius " +
                      std::to_string(impl_->bounding_radius) + ")");
}

Json Domain::to_json() const {
  Json j = impl_->shape_json();
  j["space"] = space_to_json(impl_->space);
  j["props"] = props_json(impl_->props);
  return j;
}

Domain cone_without_apex(const Vec& apex, const Domain& base) {
  return Domain(std::make_shared<ConeImpl>(apex, base));
}

ConeWitness cone_witness(const Domain& cone, const Vec& x) {
  const auto* impl = dynamic_cast<const ConeImpl*>(&cone.impl());
  if (!impl) throw InvalidArgumentError("cone_witness: domain is not a cone");
  return impl->witness(x);
}

// ---------------------------------------------------------------------------

double inradius_at(const Domain& d, const Vec& x, const ProbeConfig& cfg) {
  if (!d.contains(x))
    throw PreconditionError("inradius_at: point " + str(x) + " is not in the domain");
  if (auto v = d.analytic_inradius(x)) return *v;

  const NormedSpace& sp = d.space();
  Rng rng(derive_seed(cfg.seed, "inradius"));
  const std::size_t n_dir = cfg.dir_mult * sp.dim;
  const double s_max = 2.0 * d.bounding_radius() + 1.0;
  double rho = s_max;

  for (std::size_t k = 0; k < n_dir && rho > 0.0; ++k) {
    Vec u = unit_direction(rng, sp);
    // First escape along the ray on a scan grid, bisected to the boundary.
    double prev = 0.0, esc = -1.0;
    for (std::size_t j = 1; j <= cfg.ray_steps; ++j) {
      double s = s_max * static_cast<double>(j) / static_cast<double>(cfg.ray_steps);
      if (!d.contains(x + s * u)) {
        esc = s;
        break;
      }
      prev = s;
    }
    if (esc < 0.0) continue;
    double lo = prev, hi = esc;
    for (int it = 0; it < cfg.bisect_iters; ++it) {
      double mid = 0.5 * (lo + hi);
      if (d.contains(x + mid * u))
        lo = mid;
      else
        hi = mid;
    }
    rho = std::min(rho, lo);
  }

  // Verify sampled membership of the resulting ball; shrink on any violation.
  Rng vr(derive_seed(cfg.seed, "inradius-verify"));
  std::size_t ok = 0;
  int shrinks = 0;
  while (ok < cfg.ball_samples && rho > 0.0) {
    Vec y = sample_in_ball(vr, sp.norm, x, rho);
    if (!d.contains(y)) {
      if (++shrinks > 100) return 0.0;
      rho = std::min(rho, 0.999 * sp.distance(y, x));
      ok = 0;
      continue;
    }
    ++ok;
  }
  return std::max(rho, 0.0);
}

StarDefect star_defect(const Domain& d, const Vec& c, std::size_t n_samples, std::uint64_t seed,
                       std::size_t t_steps) {
  if (!d.contains(c))
    throw PreconditionError("star_defect: center " + str(c) + " is not in the domain");
  Rng rng(seed);
  for (std::size_t i = 0; i < n_samples; ++i) {
    Vec x = d.sample(rng);
    for (std::size_t j = 0; j <= t_steps; ++j) {
      double t = static_cast<double>(j) / static_cast<double>(t_steps);
      Vec p = segment_point(c, x, t);
      if (!d.contains(p)) {
        StarDefect out;
        out.defect = 1.0;
        out.witness_x = x;
        out.witness_t = t;
        out.witness_point = p;
        return out;
      }
    }
  }
  return {};
}

std::optional<double> openness_witness(const Domain& d, const Vec& x,
                                       std::optional<double> predicted,
                                       const ProbeConfig& cfg) {
  if (!d.contains(x))
    throw PreconditionError("openness_witness: point " + str(x) + " is not in the domain");
  const NormedSpace& sp = d.space();

  auto ball_inside = [&](double rho, std::uint64_t salt) {
    Rng rng(derive_seed(cfg.seed, "openness") ^ salt);
    for (std::size_t i = 0; i < cfg.ball_samples; ++i) {
      Vec y = sample_in_ball(rng, sp.norm, x, rho);
      if (!d.contains(y)) return false;
    }
    return true;
  };

  if (predicted) {
    if (!(*predicted > 0.0))
      throw InvalidArgumentError("openness_witness: predicted radius must be positive");
    return ball_inside(*predicted, 0) ? predicted : std::nullopt;
  }

  double rho0 = std::max(d.bounding_radius(), 1e-8);
  for (int k = 0; k < cfg.shrink_levels; ++k) {
    double rho = rho0 * std::pow(0.5, k);
    if (ball_inside(rho, static_cast<std::uint64_t>(k) + 1)) return rho;
  }
  return std::nullopt;
}

bool is_interior_point(const Domain& d, const Vec& x, const ProbeConfig& cfg) {
  if (!d.contains(x)) return false;
  if (auto v = d.analytic_inradius(x)) return *v > 0.0;
  ProbeConfig cheap = cfg;
  cheap.ball_samples = std::min<std::size_t>(cfg.ball_samples, 64);
  cheap.shrink_levels = std::min(cfg.shrink_levels, 40);
  return openness_witness(d, x, std::nullopt, cheap).has_value();
}

ApproachResult interior_approach(const Domain& x_set, const Vec& p, const Vec& a,
                                 std::size_t n_max, std::size_t stride, const ProbeConfig& cfg) {
  if (n_max == 0) throw InvalidArgumentError("interior_approach: n_max == 0");
  if (stride == 0) stride = 1;
  if (!x_set.contains(p))
    throw PreconditionError("interior_approach: p " + str(p) + " is not in the set");
  if (!is_interior_point(x_set, a, cfg))
    throw PreconditionError("interior_approach: a " + str(a) + " is not interior");

  const NormedSpace& sp = x_set.space();
  ApproachResult res;
  res.min_dist = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_max; ++n) {
    double inv = 1.0 / static_cast<double>(n);
    Vec xn = segment_point(p, a, 1.0 - inv);
    bool interior = is_interior_point(x_set, xn, cfg);
    double dist = sp.distance(xn, p);
    res.all_interior = res.all_interior && interior;
    res.min_dist = std::min(res.min_dist, dist);
    if (!(dist < prev || (dist == 0.0 && prev == 0.0))) res.nonincreasing = false;
    if ((n - 1) % stride == 0 || n == n_max) res.steps.push_back({n, xn, interior, dist});
    prev = dist;
  }
  return res;
}

ConvexityDefect interior_convexity_defect(const Domain& x_set, std::size_t n_pairs,
                                          std::uint64_t seed, std::size_t t_steps,
                                          const ProbeConfig& cfg) {
  if (!x_set.props().convex)
    throw PreconditionError("interior_convexity_defect: domain is not declared convex");
  Rng rng(seed);
  std::size_t interior_seen = 0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    Vec a = x_set.sample(rng);
    Vec b = x_set.sample(rng);
    bool ia = is_interior_point(x_set, a, cfg);
    bool ib = is_interior_point(x_set, b, cfg);
    interior_seen += static_cast<std::size_t>(ia) + static_cast<std::size_t>(ib);
    for (std::size_t j = 1; j < t_steps; ++j) {
      double t = static_cast<double>(j) / static_cast<double>(t_steps);
      Vec m = segment_point(a, b, t);
      bool in_set = x_set.contains(m);
      bool interior_fail = in_set && ia && ib && !is_interior_point(x_set, m, cfg);
      if (!in_set || interior_fail) {
        ConvexityDefect out;
        out.defect = 1.0;
        out.witness_a = a;
        out.witness_b = b;
        out.witness_t = t;
        out.witness_point = m;
        return out;
      }
    }
  }
  if (interior_seen == 0)
    throw Error("interior_convexity_defect: empty interior detected (no sampled point is interior)");
  return {};
}

// ---------------------------------------------------------------------------

bool SphereSet::member(const Vec& a) const {
  if (a.dim() != space.dim) throw DimensionError("SphereSet::member: dim mismatch");
  return std::abs(space.norm_of(a - h) - r) <= thickness &&
         std::abs(space.norm_of(a - h_prime) - r) <= thickness;
}

Vec SphereSet::sample(Rng& rng, std::size_t max_trials) const {
  const std::size_t d = space.dim;
  const NormKind k = space.norm.kind();
  const bool boxy = (k == NormKind::linf || k == NormKind::weighted_linf);

  for (std::size_t trial = 0; trial < max_trials; ++trial) {
    Vec a(d);
    if (boxy) {
      // Sample a face of the max-norm sphere around h, then accept against
      // the second sphere condition.
      std::size_t axis = rng.index(d);
      double sign = rng.coin() ? 1.0 : -1.0;
      for (std::size_t i = 0; i < d; ++i) {
        double w = (k == NormKind::weighted_linf) ? space.norm.weights()[i] : 1.0;
        double half = r / w;
        a[i] = (i == axis) ? h[i] + sign * half : rng.uniform(h[i] - half, h[i] + half);
      }
    } else {
      a = sample_on_sphere(rng, space.norm, h, r);
    }
    if (member(a)) return a;
    if (trial > max_trials / 2 && !known_members.empty())
      return known_members[rng.index(known_members.size())];
  }
  if (!known_members.empty()) return known_members[rng.index(known_members.size())];
  throw SamplingError("SphereSet::sample: rejection failed; the thickened intersection is "
                      "too thin for rejection and no known members were supplied");
}

}  // namespace mulam
