#include "mulam/map_model.hpp"

#include <cmath>
#include <map>

#include "mulam/json_io.hpp"

namespace mulam {

namespace {

struct AnalyticRule {
  std::size_t src_dim;
  std::size_t dst_dim;
  std::function<Vec(const Vec&)> fn;
};

const std::map<std::string, AnalyticRule>& analytic_registry() {
  static const std::map<std::string, AnalyticRule> reg = {
      // Graph of sine over the first coordinate; the second input coordinate
      // is ignored (it is zero on the segment fixture this rule serves).
      {"sin_graph", {2, 2, [](const Vec& v) { return Vec{v[0], std::sin(v[0])}; }}},
  };
  return reg;
}

}  // namespace

bool analytic_rule_exists(const std::string& name) {
  return analytic_registry().count(name) > 0;
}

struct MapModel::Impl {
  Kind kind = Kind::affine;
  NormedSpace src, dst;

  // affine
  Mat a;
  Vec u;

  // piecewise
  std::vector<std::pair<Domain, MapModel>> cases;

  // analytic / custom
  std::string name;
  std::function<Vec(const Vec&)> fn;
  bool serializable = false;

  // composite
  std::vector<MapModel> chain;

  std::optional<Domain> domain;

  Vec eval(const Vec& x) const {
    switch (kind) {
      case Kind::affine:
        return a.apply(x) + u;
      case Kind::piecewise: {
        for (const auto& [guard, branch] : cases)
          if (guard.contains(x)) return branch(x);
        throw DomainEscapeError("piecewise map: no piece contains " + str(x));
      }
      case Kind::analytic:
        return fn(x);
      case Kind::composite: {
        Vec y = x;
        for (const auto& m : chain) y = m(y);
        return y;
      }
    }
    throw Error("MapModel: unreachable kind");
  }
};

MapModel MapModel::affine(const NormedSpace& src, const NormedSpace& dst, Mat a, Vec u) {
  if (a.rows() != dst.dim || a.cols() != src.dim)
    throw DimensionError("MapModel::affine: matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected " + std::to_string(dst.dim) +
                         "x" + std::to_string(src.dim));
  if (u.dim() != dst.dim) throw DimensionError("MapModel::affine: translation dim mismatch");
  if (!a.all_finite() || !u.all_finite())
    throw InvalidArgumentError("MapModel::affine: non-finite entries");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::affine;
  impl->src = src;
  impl->dst = dst;
  impl->a = std::move(a);
  impl->u = std::move(u);
  return MapModel(std::move(impl));
}

MapModel MapModel::identity(const NormedSpace& s) {
  return affine(s, s, Mat::identity(s.dim), Vec::zero(s.dim));
}

MapModel MapModel::translation(const NormedSpace& s, Vec u) {
  return affine(s, s, Mat::identity(s.dim), std::move(u));
}

MapModel MapModel::linear(const NormedSpace& src, const NormedSpace& dst, Mat a) {
  Vec zero = Vec::zero(dst.dim);
  return affine(src, dst, std::move(a), std::move(zero));
}

MapModel MapModel::piecewise(const NormedSpace& src, const NormedSpace& dst,
                             std::vector<std::pair<Domain, MapModel>> cases,
                             std::size_t probe_count, std::uint64_t probe_seed) {
  if (cases.empty()) throw InvalidArgumentError("MapModel::piecewise: no cases");
  for (const auto& [guard, branch] : cases) {
    if (guard.space().dim != src.dim)
      throw DimensionError("MapModel::piecewise: guard dim mismatch");
    if (branch.source().dim != src.dim || branch.target().dim != dst.dim)
      throw DimensionError("MapModel::piecewise: branch dims mismatch");
  }

  // Sampled disjointness: probe points drawn from every guard; overlap is
  // rejected unless the branch values agree there.
  Rng rng(probe_seed);
  const std::size_t per_guard = std::max<std::size_t>(1, probe_count / cases.size());
  for (const auto& [guard, branch] : cases) {
    (void)branch;
    for (std::size_t i = 0; i < per_guard; ++i) {
      Vec x = guard.sample(rng);
      const MapModel* first = nullptr;
      for (const auto& [g2, b2] : cases) {
        if (!g2.contains(x)) continue;
        if (!first) {
          first = &b2;
          continue;
        }
        Vec v1 = (*first)(x);
        Vec v2 = b2(x);
        if (dst.distance(v1, v2) > 1e-9)
          throw FixtureError("MapModel::piecewise: overlapping guards disagree at " + str(x) +
                             ": " + str(v1) + " vs " + str(v2));
      }
    }
  }

  std::vector<Domain> guards;
  guards.reserve(cases.size());
  for (const auto& [guard, branch] : cases) {
    (void)branch;
    guards.push_back(guard);
  }

  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::piecewise;
  impl->src = src;
  impl->dst = dst;
  impl->cases = std::move(cases);
  impl->domain = Domain::union_of(std::move(guards));
  return MapModel(std::move(impl));
}

MapModel MapModel::analytic(const NormedSpace& src, const NormedSpace& dst,
                            const std::string& name, std::optional<Domain> domain) {
  auto it = analytic_registry().find(name);
  if (it == analytic_registry().end())
    throw FixtureError("MapModel::analytic: unknown rule '" + name + "'");
  if (it->second.src_dim != src.dim || it->second.dst_dim != dst.dim)
    throw DimensionError("MapModel::analytic: rule '" + name + "' has dims " +
                         std::to_string(it->second.src_dim) + "->" +
                         std::to_string(it->second.dst_dim));
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::analytic;
  impl->src = src;
  impl->dst = dst;
  impl->name = name;
  impl->fn = it->second.fn;
  impl->serializable = true;
  impl->domain = std::move(domain);
  return MapModel(std::move(impl));
}

MapModel MapModel::custom(const NormedSpace& src, const NormedSpace& dst, std::string label,
                          std::function<Vec(const Vec&)> fn, std::optional<Domain> domain) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::analytic;
  impl->src = src;
  impl->dst = dst;
  impl->name = std::move(label);
  impl->fn = std::move(fn);
  impl->serializable = false;
  impl->domain = std::move(domain);
  return MapModel(std::move(impl));
}

MapModel MapModel::composite(std::vector<MapModel> chain) {
  if (chain.empty()) throw InvalidArgumentError("MapModel::composite: empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (chain[i].target().dim != chain[i + 1].source().dim)
      throw DimensionError("MapModel::composite: link " + std::to_string(i) +
                           " target dim does not feed link " + std::to_string(i + 1));
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::composite;
  impl->src = chain.front().source();
  impl->dst = chain.back().target();
  impl->domain = chain.front().domain();
  impl->chain = std::move(chain);
  return MapModel(std::move(impl));
}

Vec MapModel::operator()(const Vec& x) const {
  if (x.dim() != impl_->src.dim)
    throw DimensionError("MapModel: input dim " + std::to_string(x.dim()) + " vs source dim " +
                         std::to_string(impl_->src.dim));
  if (!x.all_finite()) throw InvalidArgumentError("MapModel: non-finite input " + str(x));
  return impl_->eval(x);
}

MapModel::Kind MapModel::kind() const { return impl_->kind; }
const NormedSpace& MapModel::source() const { return impl_->src; }
const NormedSpace& MapModel::target() const { return impl_->dst; }
std::optional<Domain> MapModel::domain() const { return impl_->domain; }

bool MapModel::is_affine() const { return impl_->kind == Kind::affine; }

const Mat& MapModel::matrix() const {
  if (!is_affine()) throw InvalidArgumentError("MapModel::matrix: not an affine map");
  return impl_->a;
}

const Vec& MapModel::offset() const {
  if (!is_affine()) throw InvalidArgumentError("MapModel::offset: not an affine map");
  return impl_->u;
}

const std::vector<std::pair<Domain, MapModel>>& MapModel::cases() const {
  if (impl_->kind != Kind::piecewise)
    throw InvalidArgumentError("MapModel::cases: not a piecewise map");
  return impl_->cases;
}

MapModel MapModel::inverted() const {
  if (!is_affine())
    throw InvalidArgumentError("MapModel::inverted: only affine maps are invertible here");
  if (impl_->a.rows() != impl_->a.cols())
    throw DimensionError("MapModel::inverted: matrix not square");
  Mat ainv = inverse(impl_->a);  // throws SingularMatrixError when singular
  Vec shift = -ainv.apply(impl_->u);
  return affine(impl_->dst, impl_->src, std::move(ainv), std::move(shift));
}

MapModel compose(const MapModel& first, const MapModel& then) {
  return MapModel::composite({first, then});
}

Json MapModel::to_json() const {
  Json j;
  switch (impl_->kind) {
    case Kind::affine:
      j["kind"] = "affine";
      j["A"] = mat_to_json(impl_->a);
      j["u"] = vec_to_json(impl_->u);
      break;
    case Kind::piecewise: {
      j["kind"] = "piecewise";
      Json arr = Json::array();
      for (const auto& [guard, branch] : impl_->cases) {
        Json c;
        c["guard"] = guard.to_json();
        c["map"] = branch.to_json();
        arr.push_back(std::move(c));
      }
      j["cases"] = std::move(arr);
      break;
    }
    case Kind::analytic:
      if (!impl_->serializable)
        throw FixtureError("MapModel: custom map '" + impl_->name + "' is not serializable");
      j["kind"] = "analytic";
      j["name"] = impl_->name;
      if (impl_->domain) j["domain"] = impl_->domain->to_json();
      break;
    case Kind::composite: {
      j["kind"] = "composite";
      Json arr = Json::array();
      for (const auto& m : impl_->chain) arr.push_back(m.to_json());
      j["maps"] = std::move(arr);
      break;
    }
  }
  j["source"] = space_to_json(impl_->src);
  j["target"] = space_to_json(impl_->dst);
  return j;
}

}  // namespace mulam
