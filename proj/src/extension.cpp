#include "mulam/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mulam {

double DefectReport::max_defect() const {
  return std::max({radial_scaling, small_ball_additivity, homogeneity, additivity, agreement,
                   isometry});
}

std::pair<Domain, MapModel> recentre(const MapModel& t, const Domain& u1, const Vec& a0,
                                     std::size_t star_samples, std::uint64_t seed,
                                     bool skip_star_check) {
  if (!u1.contains(a0))
    throw PreconditionError("recentre: a0 " + str(a0) + " is not in the domain");
  if (!skip_star_check) {
    StarDefect sd = star_defect(u1, a0, star_samples, derive_seed(seed, "star"));
    if (sd.defect > 0.0)
      throw PreconditionError("recentre: a0 " + str(a0) +
                              " is not a sampled star center; segment to " +
                              str(*sd.witness_x) + " escapes at t=" +
                              std::to_string(sd.witness_t));
  }
  Domain v1 = Domain::translate(u1, -a0);
  Vec ta0 = t(a0);
  MapModel t0 = MapModel::composite(
      {MapModel::translation(t.source(), a0), t, MapModel::translation(t.target(), -ta0)});
  return {v1, t0};
}

double safe_radius(const Domain& v1, const ProbeConfig& cfg, double tol_abs) {
  Vec zero = Vec::zero(v1.space().dim);
  if (!v1.contains(zero))
    throw PreconditionError("safe_radius: the origin is not in the recentred domain");
  double rin = inradius_at(v1, zero, cfg);
  if (rin <= tol_abs)
    throw RefusalError("safe_radius: origin inradius " + std::to_string(rin) +
                       " is not positive; the centre sits on the boundary");

  double r = 0.9 * rin / 3.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(derive_seed(cfg.seed, "safe-radius") ^ static_cast<std::uint64_t>(attempt));
    bool ok = true;
    for (std::size_t i = 0; i < cfg.ball_samples; ++i) {
      Vec y = sample_in_ball(rng, v1.space().norm, zero, 3.0 * r);
      if (!v1.contains(y)) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
    r *= 0.8;
  }
  throw RefusalError("safe_radius: could not verify the tripled ball inside the domain");
}

MapModel radial_extension(const MapModel& t0, double r) {
  if (!(r > 0.0)) throw InvalidArgumentError("radial_extension: r must be positive");
  const NormedSpace src = t0.source();
  const std::size_t dst_dim = t0.target().dim;
  auto fn = [t0, r, src, dst_dim](const Vec& x) -> Vec {
    double n = src.norm_of(x);
    if (n == 0.0) return Vec::zero(dst_dim);
    return (n / r) * t0((r / n) * x);
  };
  return MapModel::custom(src, t0.target(), "radial_extension", std::move(fn));
}

Mat materialize(const MapModel& t_ext, std::size_t dim) {
  Mat a(t_ext.target().dim, dim);
  for (std::size_t i = 0; i < dim; ++i) a.set_col(i, t_ext(Vec::unit(dim, i)));
  return a;
}

DefectReport verify_extension(const MapModel& t, const Domain& u1, const Vec& a0, const Mat& a,
                              const Vec& u, double r, std::size_t n_samples,
                              std::uint64_t seed) {
  DefectReport rep;
  rep.seed = seed;

  auto [v1, t0] = recentre(t, u1, a0, 0, seed, /*skip_star_check=*/true);
  MapModel text = radial_extension(t0, r);
  const NormedSpace& src = t.source();
  const NormedSpace& dst = t.target();
  const Vec zero = Vec::zero(src.dim);
  const std::size_t quarter = std::max<std::size_t>(8, n_samples / 4);
  const double scale = std::max(1.0, v1.bounding_radius());

  {  // T0(t a) = t T0(a) over the recentred domain and a t-grid
    Rng rng(derive_seed(seed, "radial"));
    std::size_t done = 0, skipped = 0;
    for (std::size_t i = 0; i < quarter; ++i) {
      Vec av = v1.sample(rng);
      Vec t0a;
      try {
        t0a = t0(av);
      } catch (const DomainEscapeError&) {
        ++skipped;
        continue;
      }
      for (int j = 0; j <= 8; ++j) {
        double tt = j / 8.0;
        try {
          rep.radial_scaling =
              std::max(rep.radial_scaling, dst.norm_of(t0(tt * av) - tt * t0a));
          ++done;
        } catch (const DomainEscapeError&) {
          ++skipped;
        }
      }
    }
    rep.sample_counts["radial_scaling"] = done;
    if (skipped) rep.sample_counts["radial_scaling_skipped"] = skipped;
  }

  {  // T0(a+b) = T0(a) + T0(b) on the safe ball
    Rng rng(derive_seed(seed, "smallball"));
    std::size_t done = 0, skipped = 0;
    for (std::size_t i = 0; i < quarter; ++i) {
      Vec av = sample_in_ball(rng, src.norm, zero, r);
      Vec bv = sample_in_ball(rng, src.norm, zero, r);
      try {
        rep.small_ball_additivity = std::max(
            rep.small_ball_additivity, dst.norm_of(t0(av + bv) - (t0(av) + t0(bv))));
        ++done;
      } catch (const DomainEscapeError&) {
        ++skipped;
      }
    }
    rep.sample_counts["small_ball_additivity"] = done;
    if (skipped) rep.sample_counts["small_ball_additivity_skipped"] = skipped;
  }

  {  // homogeneity of the radial extension, s spanning negative, zero, > 1
    Rng rng(derive_seed(seed, "homog"));
    const double sgrid[] = {-2.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.7, 3.0};
    std::size_t done = 0;
    for (std::size_t i = 0; i < quarter; ++i) {
      Vec x = sample_in_ball(rng, src.norm, zero, scale);
      Vec tx = text(x);
      for (double s : sgrid) {
        rep.homogeneity = std::max(rep.homogeneity, dst.norm_of(text(s * x) - s * tx));
        ++done;
      }
    }
    rep.sample_counts["homogeneity"] = done;
  }

  {  // additivity of the radial extension, including the x + y = 0 branch
    Rng rng(derive_seed(seed, "add"));
    std::size_t done = 0;
    for (std::size_t i = 0; i < quarter; ++i) {
      Vec x = sample_in_ball(rng, src.norm, zero, scale);
      Vec y = (i % 4 == 3) ? -x : sample_in_ball(rng, src.norm, zero, scale);
      rep.additivity =
          std::max(rep.additivity, dst.norm_of(text(x + y) - (text(x) + text(y))));
      ++done;
    }
    rep.sample_counts["additivity"] = done;
  }

  {  // agreement: A x + u against T over the original domain and its probes
    Rng rng(derive_seed(seed, "agree"));
    std::size_t done = 0;
    auto consider = [&](const Vec& x) {
      double val = dst.norm_of(a.apply(x) + u - t(x));
      if (val > rep.agreement) {
        rep.agreement = val;
        rep.agreement_witness = x;
      }
      ++done;
    };
    for (const Vec& p : u1.probe_points())
      if (u1.contains(p)) consider(p);
    for (std::size_t i = 0; i < n_samples; ++i) consider(u1.sample(rng));
    rep.sample_counts["agreement"] = done;
  }

  {  // isometry of the materialized linear part
    Rng rng(derive_seed(seed, "isom"));
    for (std::size_t i = 0; i < n_samples; ++i) {
      Vec x = sample_in_ball(rng, src.norm, zero, 3.0 * scale);
      rep.isometry =
          std::max(rep.isometry, std::abs(dst.norm_of(a.apply(x)) - src.norm_of(x)));
    }
    rep.sample_counts["isometry"] = n_samples;
  }

  if (a.rows() == a.cols()) {
    rep.condition_estimate = cond1_estimate(a);
    rep.invertibility_ok = rep.condition_estimate < 1e12;
  } else {
    rep.condition_estimate = std::numeric_limits<double>::infinity();
    rep.invertibility_ok = false;
  }
  return rep;
}

ExtensionResult extend_isometry(const MapModel& t, const Domain& u1, std::optional<Vec> a0_opt,
                                const ExtendOptions& opts) {
  Vec a0;
  if (a0_opt) {
    a0 = *a0_opt;
  } else if (u1.props().star_center) {
    a0 = *u1.props().star_center;
  } else {
    throw PreconditionError("extend_isometry: no recentre point: the domain declares no star "
                            "center and none was supplied");
  }
  if (!u1.contains(a0))
    throw PreconditionError("extend_isometry: centre " + str(a0) + " is not in the domain");

  StarDefect sd = star_defect(u1, a0, opts.star_samples, derive_seed(opts.seed, "star"));
  if (sd.defect > 0.0 && !opts.force)
    throw PreconditionError("extend_isometry: domain is not star-shaped about " + str(a0) +
                            "; segment to " + str(*sd.witness_x) + " escapes at t=" +
                            std::to_string(sd.witness_t) + " (use force to run anyway)");

  auto centred = recentre(t, u1, a0, 0, opts.seed, /*skip_star_check=*/true);
  double r = 0.0;
  try {
    r = safe_radius(centred.first, ProbeConfig{}, opts.tol_abs);
  } catch (const RefusalError&) {
    if (!opts.force) throw;
    // Forced run: re-centre at the best sampled interior point.
    Rng rng(derive_seed(opts.seed, "recentre"));
    double best = 0.0;
    std::optional<Vec> best_x;
    ProbeConfig cheap;
    cheap.dir_mult = 16;
    cheap.ball_samples = 64;
    for (int i = 0; i < 256; ++i) {
      Vec x = u1.sample(rng);
      double rho = 0.0;
      try {
        rho = inradius_at(u1, x, cheap);
      } catch (const Error&) {
        continue;
      }
      if (rho > best) {
        best = rho;
        best_x = x;
      }
    }
    if (!best_x || best <= opts.tol_abs) throw;
    a0 = *best_x;
    centred = recentre(t, u1, a0, 0, opts.seed, /*skip_star_check=*/true);
    r = safe_radius(centred.first, ProbeConfig{}, opts.tol_abs);
  }

  MapModel text = radial_extension(centred.second, r);
  Mat a = materialize(text, t.source().dim);
  Vec u = t(a0) - a.apply(a0);
  DefectReport defects = verify_extension(t, u1, a0, a, u, r, opts.n_samples, opts.seed);

  ExtensionResult res;
  res.a = std::move(a);
  res.u = std::move(u);
  res.r = r;
  res.center = a0;
  res.defects = std::move(defects);
  return res;
}

ExtensionResult extend_convex(const MapModel& t, const Domain& x, std::size_t n_samples,
                              std::uint64_t seed) {
  if (!x.props().convex)
    throw PreconditionError("extend_convex: the domain is not declared convex");

  ConvexityDefect cd = interior_convexity_defect(
      x, std::max<std::size_t>(64, n_samples / 16), derive_seed(seed, "convexity"));
  if (cd.defect > 0.0)
    throw PreconditionError("extend_convex: sampled convexity violated; segment " +
                            str(*cd.witness_a) + " -- " + str(*cd.witness_b) + " exits at t=" +
                            std::to_string(cd.witness_t) + ", point " +
                            str(*cd.witness_point));

  Metric dm = Metric::from_norm(t.target());
  IsometryDefect iso = isometry_defect(t, x, dm, std::min<std::size_t>(n_samples, 500),
                                       derive_seed(seed, "isometric"));
  if (iso.max_defect > 1e-9)
    throw PreconditionError("extend_convex: T is not isometric on X samples; worst pair " +
                            str(iso.worst_a) + ", " + str(iso.worst_b) + " defect " +
                            std::to_string(iso.max_defect));

  Domain intx = Domain::interior_of(x);

  // Recentre at the deepest sampled interior point.
  Rng rng(derive_seed(seed, "centre"));
  ProbeConfig cheap;
  cheap.dir_mult = 16;
  cheap.ball_samples = 64;
  double best = 0.0;
  std::optional<Vec> a0;
  for (int i = 0; i < 128; ++i) {
    Vec cand = intx.sample(rng);
    double rho = 0.0;
    try {
      rho = inradius_at(x, cand, cheap);
    } catch (const Error&) {
      continue;
    }
    if (rho > best) {
      best = rho;
      a0 = cand;
    }
  }
  if (!a0) throw PreconditionError("extend_convex: found no interior recentre point");

  ExtendOptions opts;
  opts.n_samples = n_samples;
  opts.seed = seed;
  ExtensionResult res = extend_isometry(t, intx, a0, opts);

  // Closure step: the extension must agree on all of X, boundary included.
  const NormedSpace& dst = t.target();
  auto consider = [&](const Vec& p) {
    double val = dst.norm_of(res.a.apply(p) + res.u - t(p));
    if (val > res.defects.agreement) {
      res.defects.agreement = val;
      res.defects.agreement_witness = p;
    }
  };

  Rng rng2(derive_seed(seed, "boundary"));
  const std::size_t n_boundary = std::min<std::size_t>(std::max<std::size_t>(64, n_samples / 4), 512);
  const double t_out = x.bounding_radius() + x.space().norm_of(*a0) + 1.0;
  std::size_t cast = 0;
  for (std::size_t i = 0; i < n_boundary; ++i) {
    Vec d;
    for (int tries = 0; tries < 64; ++tries) {
      d = rng2.normal_vec(x.space().dim);
      double nd = x.space().norm(d);
      if (nd > 1e-300) {
        d = (1.0 / nd) * d;
        break;
      }
    }
    double lo = 0.0, hi = t_out;
    if (x.contains(*a0 + hi * d)) continue;  // unbounded-looking ray, skip
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if (x.contains(*a0 + mid * d))
        lo = mid;
      else
        hi = mid;
    }
    consider(*a0 + lo * d);
    ++cast;
  }
  for (const Vec& p : x.probe_points())
    if (x.contains(p)) consider(p);
  Rng rng3(derive_seed(seed, "closure"));
  for (std::size_t i = 0; i < n_samples / 2; ++i) consider(x.sample(rng3));

  res.defects.sample_counts["agreement_boundary"] = cast;
  return res;
}

}  // namespace mulam
