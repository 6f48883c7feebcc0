#include "mulam/json_io.hpp"

#include "mulam/domain.hpp"
#include "mulam/fixtures.hpp"
#include "mulam/map_model.hpp"

namespace mulam {

const Json& require_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object())
    throw FixtureError("fixture schema violation at " + path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw FixtureError("fixture schema violation at " + path + "/" + key + ": missing field");
  return *it;
}

namespace {

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number())
    throw FixtureError("fixture schema violation at " + path + ": expected a number");
  return j.get<double>();
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string())
    throw FixtureError("fixture schema violation at " + path + ": expected a string");
  return j.get<std::string>();
}

bool bool_at(const Json& j, const std::string& path) {
  if (!j.is_boolean())
    throw FixtureError("fixture schema violation at " + path + ": expected a boolean");
  return j.get<bool>();
}

}  // namespace

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vec vec_from_json(const Json& j, const std::string& path) {
  if (!j.is_array())
    throw FixtureError("fixture schema violation at " + path + ": expected an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[i] = number_at(j[i], path + "/" + std::to_string(i));
  return v;
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
  return rows;
}

Mat mat_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw FixtureError("fixture schema violation at " + path + ": expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(vec_from_json(j[i], path + "/" + std::to_string(i)).data());
  Mat m = Mat::from_rows(rows);
  return m;
}

Json norm_to_json(const Norm& n) {
  Json j;
  switch (n.kind()) {
    case NormKind::l1: j["kind"] = "l1"; break;
    case NormKind::l2: j["kind"] = "l2"; break;
    case NormKind::linf: j["kind"] = "linf"; break;
    case NormKind::lp:
      j["kind"] = "lp";
      j["p"] = n.p();
      break;
    case NormKind::weighted_linf:
      j["kind"] = "weighted_linf";
      j["weights"] = vec_to_json(Vec(n.weights()));
      break;
    case NormKind::polyhedral:
      j["kind"] = "polyhedral";
      j["functionals"] = mat_to_json(n.functionals());
      break;
  }
  return j;
}

Norm norm_from_json(const Json& j, const std::string& path) {
  std::string kind = string_at(require_field(j, "kind", path), path + "/kind");
  if (kind == "l1") return Norm::l1();
  if (kind == "l2") return Norm::l2();
  if (kind == "linf") return Norm::linf();
  if (kind == "lp") return Norm::lp(number_at(require_field(j, "p", path), path + "/p"));
  if (kind == "weighted_linf")
    return Norm::weighted_linf(
        vec_from_json(require_field(j, "weights", path), path + "/weights").data());
  if (kind == "polyhedral")
    return Norm::polyhedral(
        mat_from_json(require_field(j, "functionals", path), path + "/functionals"));
  throw FixtureError("fixture schema violation at " + path + "/kind: unknown norm '" + kind + "'");
}

Json space_to_json(const NormedSpace& s) {
  Json j;
  j["dim"] = s.dim;
  j["norm"] = norm_to_json(s.norm);
  j["label"] = s.label;
  return j;
}

NormedSpace space_from_json(const Json& j, const std::string& path) {
  double dim = number_at(require_field(j, "dim", path), path + "/dim");
  if (dim < 1 || dim != static_cast<double>(static_cast<std::size_t>(dim)))
    throw FixtureError("fixture schema violation at " + path + "/dim: expected a positive integer");
  Norm n = norm_from_json(require_field(j, "norm", path), path + "/norm");
  std::string label = j.contains("label") ? string_at(j["label"], path + "/label") : "";
  return NormedSpace{static_cast<std::size_t>(dim), n, label};
}

namespace {

DomainProps props_from_json(const Json& j, const std::string& path) {
  DomainProps p;
  if (!j.contains("props")) return p;
  const Json& pj = j["props"];
  if (pj.contains("open")) p.open = bool_at(pj["open"], path + "/props/open");
  if (pj.contains("convex")) p.convex = bool_at(pj["convex"], path + "/props/convex");
  if (pj.contains("star_center") && !pj["star_center"].is_null())
    p.star_center = vec_from_json(pj["star_center"], path + "/props/star_center");
  return p;
}

}  // namespace

Domain domain_from_json(const Json& j, const std::string& path) {
  std::string kind = string_at(require_field(j, "kind", path), path + "/kind");
  NormedSpace sp = space_from_json(require_field(j, "space", path), path + "/space");

  Domain built = [&]() -> Domain {
    if (kind == "open_ball" || kind == "closed_ball") {
      Vec center = vec_from_json(require_field(j, "center", path), path + "/center");
      double radius = number_at(require_field(j, "radius", path), path + "/radius");
      Norm shape = j.contains("shape_norm")
                       ? norm_from_json(j["shape_norm"], path + "/shape_norm")
                       : sp.norm;
      return Domain::shaped_ball(sp, shape, center, radius, kind == "open_ball");
    }
    if (kind == "polytope") {
      Mat normals = mat_from_json(require_field(j, "normals", path), path + "/normals");
      Vec offsets = vec_from_json(require_field(j, "offsets", path), path + "/offsets");
      double bound = number_at(require_field(j, "bounding_radius", path), path + "/bounding_radius");
      return Domain::polytope(sp, normals, offsets, bound);
    }
    if (kind == "segment") {
      Vec a = vec_from_json(require_field(j, "a", path), path + "/a");
      Vec b = vec_from_json(require_field(j, "b", path), path + "/b");
      return Domain::segment_set(sp, a, b);
    }
    if (kind == "union") {
      const Json& members = require_field(j, "members", path);
      if (!members.is_array() || members.empty())
        throw FixtureError("fixture schema violation at " + path +
                           "/members: expected a non-empty array");
      std::vector<Domain> ms;
      for (std::size_t i = 0; i < members.size(); ++i)
        ms.push_back(domain_from_json(members[i], path + "/members/" + std::to_string(i)));
      return Domain::union_of(std::move(ms));
    }
    if (kind == "translate") {
      Vec offset = vec_from_json(require_field(j, "offset", path), path + "/offset");
      Domain inner = domain_from_json(require_field(j, "inner", path), path + "/inner");
      return Domain::translate(inner, offset);
    }
    if (kind == "interior") {
      Domain inner = domain_from_json(require_field(j, "inner", path), path + "/inner");
      return Domain::interior_of(inner);
    }
    if (kind == "cone") {
      Vec apex = vec_from_json(require_field(j, "apex", path), path + "/apex");
      Domain base = domain_from_json(require_field(j, "base", path), path + "/base");
      return cone_without_apex(apex, base);
    }
    throw FixtureError("fixture schema violation at " + path + "/kind: unknown domain kind '" +
                       kind + "'");
  }();

  if (j.contains("props")) return built.with_props(props_from_json(j, path));
  return built;
}

MapModel map_from_json(const Json& j, const std::string& path) {
  std::string kind = string_at(require_field(j, "kind", path), path + "/kind");
  NormedSpace src = space_from_json(require_field(j, "source", path), path + "/source");
  NormedSpace dst = space_from_json(require_field(j, "target", path), path + "/target");

  if (kind == "affine") {
    Mat a = mat_from_json(require_field(j, "A", path), path + "/A");
    Vec u = vec_from_json(require_field(j, "u", path), path + "/u");
    return MapModel::affine(src, dst, a, u);
  }
  if (kind == "piecewise") {
    const Json& cases = require_field(j, "cases", path);
    if (!cases.is_array() || cases.empty())
      throw FixtureError("fixture schema violation at " + path + "/cases: expected a non-empty array");
    std::vector<std::pair<Domain, MapModel>> cs;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const std::string cpath = path + "/cases/" + std::to_string(i);
      cs.emplace_back(domain_from_json(require_field(cases[i], "guard", cpath), cpath + "/guard"),
                      map_from_json(require_field(cases[i], "map", cpath), cpath + "/map"));
    }
    return MapModel::piecewise(src, dst, std::move(cs));
  }
  if (kind == "analytic") {
    std::string name = string_at(require_field(j, "name", path), path + "/name");
    if (!analytic_rule_exists(name))
      throw FixtureError("fixture schema violation at " + path + "/name: unknown analytic rule '" +
                         name + "'");
    std::optional<Domain> dom;
    if (j.contains("domain")) dom = domain_from_json(j["domain"], path + "/domain");
    return MapModel::analytic(src, dst, name, dom);
  }
  if (kind == "composite") {
    const Json& maps = require_field(j, "maps", path);
    if (!maps.is_array() || maps.empty())
      throw FixtureError("fixture schema violation at " + path + "/maps: expected a non-empty array");
    std::vector<MapModel> chain;
    for (std::size_t i = 0; i < maps.size(); ++i)
      chain.push_back(map_from_json(maps[i], path + "/maps/" + std::to_string(i)));
    return MapModel::composite(std::move(chain));
  }
  throw FixtureError("fixture schema violation at " + path + "/kind: unknown map kind '" + kind +
                     "'");
}

Json fixture_to_json(const Fixture& f) {
  Json j;
  j["name"] = f.name;
  j["description"] = f.description;
  j["space"] = space_to_json(f.space);
  j["target_space"] = space_to_json(f.target_space);
  j["domain"] = f.domain.to_json();
  j["map"] = f.map.to_json();
  j["star_center"] = f.star_center ? vec_to_json(*f.star_center) : Json(nullptr);
  return j;
}

Fixture fixture_from_json(const Json& j) {
  const std::string path = "";
  Fixture f{
      j.contains("name") ? string_at(j["name"], "/name") : "custom",
      j.contains("description") ? string_at(j["description"], "/description") : "",
      space_from_json(require_field(j, "space", path), "/space"),
      j.contains("target_space") ? space_from_json(j["target_space"], "/target_space")
                                 : space_from_json(require_field(j, "space", path), "/space"),
      domain_from_json(require_field(j, "domain", path), "/domain"),
      map_from_json(require_field(j, "map", path), "/map"),
      std::nullopt,
  };
  if (j.contains("star_center") && !j["star_center"].is_null())
    f.star_center = vec_from_json(j["star_center"], "/star_center");
  if (!f.star_center && f.domain.props().star_center)
    f.star_center = f.domain.props().star_center;
  if (f.domain.space().dim != f.space.dim)
    throw FixtureError("fixture schema violation at /domain: domain space dim " +
                       std::to_string(f.domain.space().dim) + " differs from /space dim " +
                       std::to_string(f.space.dim));
  if (f.map.source().dim != f.space.dim || f.map.target().dim != f.target_space.dim)
    throw FixtureError("fixture schema violation at /map: map dims do not match the fixture spaces");
  return f;
}

}  // namespace mulam
