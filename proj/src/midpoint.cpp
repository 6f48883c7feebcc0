#include "mulam/midpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mulam {

unsigned choose_subdivision(const NormedSpace& s, const Vec& f, const Vec& g, double eps) {
  if (!(eps > 0.0)) throw InvalidArgumentError("choose_subdivision: eps must be positive");
  double d = s.distance(f, g);
  unsigned n = 0;
  while (d / std::pow(2.0, n) >= eps) {
    ++n;
    if (n > 1024) throw InvalidArgumentError("choose_subdivision: eps too small for ||f-g||");
  }
  return n;
}

DyadicChain dyadic_chain(const Vec& f, const Vec& g, unsigned n) {
  check_same_dim(f, g, "dyadic_chain");
  if (n < 1) throw InvalidArgumentError("dyadic_chain: n must be >= 1");
  if (n > 24) throw InvalidArgumentError("dyadic_chain: n too large");
  DyadicChain c;
  c.f = f;
  c.g = g;
  c.n = n;
  const std::size_t count = (std::size_t{1} << n) + 1;
  c.points.reserve(count);
  Vec diff = g - f;
  const double denom = static_cast<double>(std::size_t{1} << n);
  for (std::size_t k = 0; k < count; ++k) {
    if (k == 0) {
      c.points.push_back(f);
    } else if (k == count - 1) {
      c.points.push_back(g);  // exact endpoint, not f + (g-f)
    } else {
      c.points.push_back(f + (static_cast<double>(k) / denom) * diff);
    }
  }
  return c;
}

namespace {

Vec eval_chain_point(const MapModel& t, const DyadicChain& chain, std::size_t k) {
  try {
    return t(chain.points[k]);
  } catch (const DomainEscapeError& e) {
    throw DomainEscapeError("chain point k=" + std::to_string(k) + " outside the map domain: " +
                            e.what());
  }
}

}  // namespace

ChainDefects chain_midpoint_defect(const MapModel& t, const DyadicChain& chain,
                                   const NormedSpace& target) {
  if (chain.size() < 3) throw InvalidArgumentError("chain_midpoint_defect: chain too short");
  std::vector<Vec> img;
  img.reserve(chain.size());
  for (std::size_t k = 0; k < chain.size(); ++k) img.push_back(eval_chain_point(t, chain, k));

  ChainDefects out;
  out.per_k.reserve(chain.size() - 2);
  for (std::size_t k = 0; k + 2 < chain.size(); ++k) {
    double d = target.norm_of(img[k] + img[k + 2] - 2.0 * img[k + 1]);
    if (d > out.max) {
      out.max = d;
      out.argmax = k;
    }
    out.per_k.push_back(d);
  }
  return out;
}

SpacingLevels spacing_collapse_check(const MapModel& t, const DyadicChain& chain,
                                     const NormedSpace& target) {
  if (chain.n < 2) throw InvalidArgumentError("spacing_collapse_check: need n >= 2");
  std::vector<Vec> img;
  img.reserve(chain.size());
  for (std::size_t k = 0; k < chain.size(); ++k) img.push_back(eval_chain_point(t, chain, k));

  SpacingLevels out;
  for (unsigned j = 1; j <= chain.n; ++j) {
    const std::size_t span = std::size_t{1} << j;
    const std::size_t half = span >> 1;
    double m = 0.0;
    for (std::size_t k = 0; k + span < chain.size(); ++k)
      m = std::max(m, target.norm_of(img[k] + img[k + span] - 2.0 * img[k + half]));
    out.level_max.push_back(m);
  }
  out.base = out.level_max.front();
  for (unsigned j = 1; j <= chain.n; ++j) {
    double f = std::pow(2.0, j - 1);
    out.cascade_bound.push_back(f * f * out.base);
  }
  return out;
}

double midpoint_defect(const MapModel& t, const Vec& f, const Vec& g,
                       const Metric& target_metric, std::size_t containment_steps) {
  check_same_dim(f, g, "midpoint_defect");
  if (auto dom = t.domain()) {
    for (std::size_t j = 0; j <= containment_steps; ++j) {
      double r = static_cast<double>(j) / static_cast<double>(containment_steps);
      Vec p = segment_point(g, f, r);  // r=0 -> f, r=1 -> g
      if (!dom->contains(p))
        throw DomainEscapeError("midpoint_defect: segment escapes the domain at r=" +
                                std::to_string(r) + ", point " + str(p));
    }
  }
  Vec mid = segment_point(f, g, 0.5);
  Vec lhs = t(mid);
  Vec rhs = 0.5 * (t(f) + t(g));
  return target_metric(lhs, rhs);
}

namespace {

template <typename MemberFn, typename SampleFn>
double fixed_center_impl(const NormedSpace& sp, MemberFn member, SampleFn draw, const Vec& c,
                         const MapModel& t, std::size_t n_samples) {
  if (!member(c)) throw PreconditionError("fixed_center_check: center " + str(c) + " not in L");
  for (std::size_t i = 0; i < n_samples; ++i) {
    Vec a = draw();
    Vec ta = t(a);
    if (!member(ta))
      throw PreconditionError("fixed_center_check: T does not map L into L; witness a=" +
                              str(a) + " -> " + str(ta));
    Vec ra = reflect(c, a);
    if (!member(ra))
      throw PreconditionError(
          "fixed_center_check: reflection through c does not map L into L; witness a=" +
          str(a) + " -> " + str(ra));
  }
  return sp.distance(t(c), c);
}

}  // namespace

double fixed_center_check(const SphereSet& l, const Vec& c, const MapModel& t,
                          std::size_t n_samples, std::uint64_t seed) {
  Rng rng(seed);
  return fixed_center_impl(
      l.space, [&](const Vec& v) { return l.member(v); }, [&] { return l.sample(rng); }, c, t,
      n_samples);
}

double fixed_center_check(const Domain& l, const Vec& c, const MapModel& t,
                          std::size_t n_samples, std::uint64_t seed) {
  Rng rng(seed);
  return fixed_center_impl(
      l.space(), [&](const Vec& v) { return l.contains(v); }, [&] { return l.sample(rng); }, c,
      t, n_samples);
}

MidpointCertificate certify_midpoint(const MapModel& t, const Domain& u, const Vec& f,
                                     const Vec& g, const Metric& target_metric,
                                     std::size_t margin_steps, unsigned max_depth,
                                     const ProbeConfig& cfg) {
  MidpointCertificate cert;

  // Margin guard: every segment point needs a uniform positive distance to
  // the complement before the chain argument applies.
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= margin_steps; ++j) {
    double r = static_cast<double>(j) / static_cast<double>(margin_steps);
    Vec h = segment_point(g, f, r);
    if (!u.contains(h)) {
      cert.refusal = "segment escapes the domain at r=" + std::to_string(r);
      return cert;
    }
    margin = std::min(margin, inradius_at(u, h, cfg));
  }
  cert.margin = margin;
  if (!(margin > 1e-9)) {
    cert.refusal = "no positive margin along the segment (min inradius " +
                   std::to_string(margin) + ")";
    return cert;
  }

  unsigned n = std::max(1u, choose_subdivision(u.space(), f, g, margin));
  if (n > max_depth) {
    cert.refusal = "required subdivision depth " + std::to_string(n) + " exceeds cap " +
                   std::to_string(max_depth);
    return cert;
  }
  cert.depth = n;

  DyadicChain chain = dyadic_chain(f, g, n);
  ChainDefects cd = chain_midpoint_defect(t, chain, t.target());
  cert.max_chain_defect = cd.max;
  cert.midpoint_defect = midpoint_defect(t, f, g, target_metric);
  cert.certified = true;
  return cert;
}

}  // namespace mulam
