#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mulam/domain.hpp"
#include "mulam/map_model.hpp"

namespace mulam {

/// A domain plus a map on it, with the metadata the verification suites need.
struct Fixture {
  std::string name;
  std::string description;
  NormedSpace space;
  NormedSpace target_space;
  Domain domain;
  MapModel map;
  std::optional<Vec> star_center;

  Metric target_metric() const { return Metric::from_norm(target_space); }
};

/// Two disjoint unit max-norm balls at heights 0 and 10; identity on the
/// first, first-coordinate sign flip on the second. A self-isometry of the
/// union that no affine map matches on both pieces.
Fixture build_example_two_balls();

/// The closed star-shaped set X1 u X2 (a solid triangle against a segment)
/// with identity on X1 and x -> (x, sin x) on X2: isometric, star-shaped, yet
/// not extendable because the set has a flat piece outside its interior.
Fixture build_example_star_closed();

/// Random signed permutation plus translation on an open star-shaped
/// (non-convex) union of boxes under the max norm.
Fixture build_signed_perm_star(std::size_t dim = 3, std::uint64_t seed = 17);

/// Fixed rotation plus translation on an open Euclidean disc.
Fixture build_rotation_disc();

/// Signed permutation plus translation on the closed max-norm unit ball (the
/// convex-body pipeline fixture; corners are the interesting boundary).
Fixture build_convex_maxball();

std::vector<std::string> builtin_fixture_names();

/// Registered name or a path to a fixture JSON file.
Fixture load_fixture(const std::string& name_or_path);

/// The deterministic evaluation grid used to pin the two-ball affine-fit
/// residual: an axis grid over both balls, about 10^4 points.
std::vector<std::pair<Vec, Vec>> example_two_balls_fit_grid();

/// Regression constant: the affine-fit residual of the two-ball example over
/// example_two_balls_fit_grid(), truncated down. Pinned once from the
/// brute-force least-squares oracle; the fitted residual must stay >= this.
inline constexpr double kTwoBallsFitResidualFloor = 0.9799;

}  // namespace mulam
