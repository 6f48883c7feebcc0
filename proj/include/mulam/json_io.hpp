#pragma once

#include <string>

#include <json.hpp>

#include "mulam/norms.hpp"
#include "mulam/vec.hpp"

namespace mulam {

class Domain;
class MapModel;
struct Fixture;

using Json = nlohmann::ordered_json;

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& path);

Json mat_to_json(const Mat& m);  // array of rows (row-major)
Mat mat_from_json(const Json& j, const std::string& path);

Json norm_to_json(const Norm& n);
Norm norm_from_json(const Json& j, const std::string& path);

Json space_to_json(const NormedSpace& s);
NormedSpace space_from_json(const Json& j, const std::string& path);

Domain domain_from_json(const Json& j, const std::string& path);
MapModel map_from_json(const Json& j, const std::string& path);

Json fixture_to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);

/// Field access that reports the JSON-pointer-ish path of what is missing or
/// mistyped, per the fixture-schema error contract.
const Json& require_field(const Json& j, const std::string& key, const std::string& path);

}  // namespace mulam
