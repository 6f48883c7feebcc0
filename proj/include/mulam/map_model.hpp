#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mulam/domain.hpp"
#include "mulam/matrix.hpp"
#include "mulam/norms.hpp"

namespace mulam {

/// An evaluable map between normed spaces: affine, piecewise over disjoint
/// guards, a registered closed form, or a composite chain. Immutable;
/// evaluation is pure.
class MapModel {
 public:
  enum class Kind { affine, piecewise, analytic, composite };

  static MapModel affine(const NormedSpace& src, const NormedSpace& dst, Mat a, Vec u);
  static MapModel identity(const NormedSpace& s);
  static MapModel translation(const NormedSpace& s, Vec u);
  static MapModel linear(const NormedSpace& src, const NormedSpace& dst, Mat a);

  /// Guards must be effectively disjoint: a probe point covered by several
  /// guards is accepted only where the branch values agree (the shipped
  /// fixtures share single boundary points at which the branches coincide).
  static MapModel piecewise(const NormedSpace& src, const NormedSpace& dst,
                            std::vector<std::pair<Domain, MapModel>> cases,
                            std::size_t probe_count = 1000, std::uint64_t probe_seed = 99);

  /// Closed form from the registered-name table ("sin_graph", ...); the name
  /// is what fixture files reference.
  static MapModel analytic(const NormedSpace& src, const NormedSpace& dst,
                           const std::string& name, std::optional<Domain> domain = std::nullopt);

  /// Arbitrary callable; not serializable, used by tests and by the radial
  /// extension construction.
  static MapModel custom(const NormedSpace& src, const NormedSpace& dst, std::string label,
                         std::function<Vec(const Vec&)> fn,
                         std::optional<Domain> domain = std::nullopt);

  /// Chain applied front to back.
  static MapModel composite(std::vector<MapModel> chain);

  Vec operator()(const Vec& x) const;

  Kind kind() const;
  const NormedSpace& source() const;
  const NormedSpace& target() const;
  /// Declared evaluation domain; nullopt means everywhere.
  std::optional<Domain> domain() const;

  bool is_affine() const;
  const Mat& matrix() const;  // affine only
  const Vec& offset() const;  // affine only

  /// Inverse of an invertible affine map.
  MapModel inverted() const;

  nlohmann::ordered_json to_json() const;

  const std::vector<std::pair<Domain, MapModel>>& cases() const;  // piecewise only

 private:
  struct Impl;
  explicit MapModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// then(first(x)).
MapModel compose(const MapModel& first, const MapModel& then);

bool analytic_rule_exists(const std::string& name);

}  // namespace mulam
