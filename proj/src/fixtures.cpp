#include "mulam/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "mulam/json_io.hpp"

namespace mulam {

Fixture build_example_two_balls() {
  NormedSpace sp{2, Norm::linf(), "R2-max"};
  Vec far_center{0.0, 10.0};
  Domain near_ball = Domain::ball(sp, Vec::zero(2), 1.0, /*open=*/true);
  Domain far_ball = Domain::ball(sp, far_center, 1.0, /*open=*/true);
  Domain u = Domain::union_of({near_ball, far_ball});

  MapModel id = MapModel::identity(sp);
  MapModel flip =
      MapModel::affine(sp, sp, Mat::from_rows({{-1.0, 0.0}, {0.0, 1.0}}), Vec::zero(2));
  MapModel t = MapModel::piecewise(sp, sp, {{near_ball, id}, {far_ball, flip}});

  return Fixture{"ex-two-balls",
                 "self-isometry of two disjoint max-norm balls with no affine extension",
                 sp,
                 sp,
                 u,
                 t,
                 std::nullopt};
}

Fixture build_example_star_closed() {
  NormedSpace sp{2, Norm::linf(), "R2-max"};

  // X1 = {-1 <= x <= 0, |y| <= -x} as halfspaces; X2 = the segment [0,1]x{0}.
  Mat normals = Mat::from_rows({{-1.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}});
  Vec offsets{1.0, 0.0, 0.0, 0.0};
  Domain x1 = Domain::polytope(sp, normals, offsets, 1.5);
  Domain x2 = Domain::segment_set(sp, Vec{0.0, 0.0}, Vec{1.0, 0.0});
  Vec center = Vec::zero(2);
  Domain x = Domain::union_of({x1, x2}).with_props(DomainProps{false, false, center});

  MapModel id = MapModel::identity(sp);
  MapModel sin_graph = MapModel::analytic(sp, sp, "sin_graph", x2);
  // The pieces share only the star center, where both branches return it.
  MapModel t = MapModel::piecewise(sp, sp, {{x1, id}, {x2, sin_graph}});

  return Fixture{"ex-star-closed",
                 "isometry of a closed star-shaped set (triangle plus sine-graph segment) "
                 "with no affine extension",
                 sp,
                 sp,
                 x,
                 t,
                 center};
}

Fixture build_signed_perm_star(std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw InvalidArgumentError("build_signed_perm_star: dim must be >= 2");
  NormedSpace sp{dim, Norm::linf(), "R" + std::to_string(dim) + "-max"};
  Rng rng(seed);

  Vec c0 = rng.uniform_vec(dim, -0.5, 0.5);
  Domain core = Domain::box(sp, c0, Vec(dim, 1.0), /*open=*/true);
  Vec arm_half(dim, 0.35);
  arm_half[0] = 2.2;
  Domain arm = Domain::box(sp, c0, arm_half, /*open=*/true);
  Domain u = Domain::union_of({core, arm}).with_props(DomainProps{true, false, c0});

  Mat p = random_signed_permutation(rng, dim);
  Vec shift = rng.uniform_vec(dim, -1.0, 1.0);
  MapModel t = MapModel::affine(sp, sp, p, shift);

  return Fixture{"signed-perm-star",
                 "random signed permutation + translation on an open star-shaped box union",
                 sp,
                 sp,
                 u,
                 t,
                 c0};
}

Fixture build_rotation_disc() {
  NormedSpace sp{2, Norm::l2(), "R2-euclid"};
  Vec center{0.25, -0.4};
  Domain disc = Domain::ball(sp, center, 1.5, /*open=*/true);

  const double theta = 0.7;
  Mat rot = Mat::from_rows({{std::cos(theta), -std::sin(theta)},
                            {std::sin(theta), std::cos(theta)}});
  MapModel t = MapModel::affine(sp, sp, rot, Vec{0.3, 1.1});

  return Fixture{"rotation-disc", "rotation + translation on an open Euclidean disc", sp, sp,
                 disc, t, center};
}

Fixture build_convex_maxball() {
  NormedSpace sp{2, Norm::linf(), "R2-max"};
  Domain ball = Domain::ball(sp, Vec::zero(2), 1.0, /*open=*/false);

  Mat p = Mat::from_rows({{0.0, 1.0}, {-1.0, 0.0}});
  MapModel t = MapModel::affine(sp, sp, p, Vec{0.2, -0.7});

  return Fixture{"convex-maxball",
                 "signed permutation + translation on the closed max-norm unit ball",
                 sp,
                 sp,
                 ball,
                 t,
                 Vec::zero(2)};
}

std::vector<std::string> builtin_fixture_names() {
  return {"ex-two-balls", "ex-star-closed", "signed-perm-star", "rotation-disc",
          "convex-maxball"};
}

Fixture load_fixture(const std::string& name_or_path) {
  if (name_or_path == "ex-two-balls") return build_example_two_balls();
  if (name_or_path == "ex-star-closed") return build_example_star_closed();
  if (name_or_path == "signed-perm-star") return build_signed_perm_star();
  if (name_or_path == "rotation-disc") return build_rotation_disc();
  if (name_or_path == "convex-maxball") return build_convex_maxball();

  if (std::filesystem::exists(name_or_path)) {
    std::ifstream in(name_or_path);
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw FixtureError("load_fixture: " + name_or_path + " is not valid JSON: " + e.what());
    }
    return fixture_from_json(j);
  }

  std::string names;
  for (const auto& n : builtin_fixture_names()) names += " " + n;
  throw FixtureError("load_fixture: unknown fixture '" + name_or_path +
                     "' (not a built-in name and not a readable file); built-ins:" + names);
}

std::vector<std::pair<Vec, Vec>> example_two_balls_fit_grid() {
  Fixture f = build_example_two_balls();
  std::vector<std::pair<Vec, Vec>> grid;
  const int n = 71;  // 71 x 71 per ball, ~10^4 points total
  const double span = 0.98;
  const Vec centers[2] = {Vec{0.0, 0.0}, Vec{0.0, 10.0}};
  for (const Vec& c : centers) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Vec x{c[0] - span + 2.0 * span * i / (n - 1), c[1] - span + 2.0 * span * j / (n - 1)};
        grid.emplace_back(x, f.map(x));
      }
    }
  }
  return grid;
}

}  // namespace mulam
