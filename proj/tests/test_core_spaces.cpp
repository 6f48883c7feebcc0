#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mulam/norms.hpp"
#include "mulam/rng.hpp"
#include "mulam/vec.hpp"
#include "oracles.hpp"

using namespace mulam;

namespace {

std::vector<Norm> shipped_norms(std::size_t dim) {
  std::vector<double> w(dim);
  for (std::size_t i = 0; i < dim; ++i) w[i] = 0.5 + static_cast<double>(i);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> r(dim, 0.0);
    r[i] = 1.0;
    rows.push_back(r);
  }
  rows.push_back(std::vector<double>(dim, 0.7));  // extra functional, keeps full rank
  return {Norm::l1(),
          Norm::l2(),
          Norm::linf(),
          Norm::lp(2.5),
          Norm::weighted_linf(w),
          Norm::polyhedral(Mat::from_rows(rows))};
}

}  // namespace

TEST_CASE("norm_eval worked examples") {
  NormedSpace max2{2, Norm::linf(), "max"};
  CHECK(max2.norm_of(Vec{3.0, -4.0}) == 4.0);

  NormedSpace l22{2, Norm::l2(), "euclid"};
  CHECK(l22.norm_of(Vec{3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));

  for (std::size_t d = 1; d <= 8; ++d)
    for (const Norm& n : shipped_norms(d))
      CHECK(NormedSpace{d, n, ""}.norm_of(Vec::zero(d)) == 0.0);
}

TEST_CASE("norm_eval error paths") {
  NormedSpace max2{2, Norm::linf(), "max"};
  CHECK_THROWS_AS(max2.norm_of(Vec{1.0}), DimensionError);
  CHECK_THROWS_AS(max2.norm_of(Vec{1.0, std::nan("")}), InvalidArgumentError);
  CHECK_THROWS_AS(max2.norm_of(Vec{1.0, std::numeric_limits<double>::infinity()}),
                  InvalidArgumentError);
}

TEST_CASE("distance worked examples") {
  NormedSpace max2{2, Norm::linf(), "max"};
  CHECK(max2.distance(Vec{0.0, 0.0}, Vec{1.0, -2.0}) == 2.0);
  CHECK(max2.distance(Vec{0.7, -0.3}, Vec{0.7, -0.3}) == 0.0);

  NormedSpace l12{2, Norm::l1(), "taxicab"};
  CHECK(l12.distance(Vec{1.0, 1.0}, Vec{0.0, 0.0}) == 2.0);
}

TEST_CASE("reflect worked examples") {
  Vec v{1.5, -2.0, 3.0};
  CHECK(reflect(Vec::zero(3), v) == -v);

  Vec c{0.3, 0.4};
  CHECK(reflect(c, c) == c);

  CHECK(reflect(Vec{1.0, 1.0}, Vec{0.0, 3.0}) == Vec{2.0, -1.0});
  CHECK_THROWS_AS(reflect(Vec{1.0}, Vec{1.0, 2.0}), DimensionError);
}

TEST_CASE("segment_point worked examples") {
  Vec a{2.0, -1.0}, b{0.5, 4.0};
  CHECK(segment_point(a, b, 1.0) == a);
  CHECK(segment_point(a, b, 0.0) == b);
  CHECK(segment_point(Vec{0.0, 0.0}, Vec{2.0, 4.0}, 0.5) == Vec{1.0, 2.0});
  CHECK_THROWS_AS(segment_point(a, b, 1.5), InvalidArgumentError);
  CHECK_THROWS_AS(segment_point(a, b, -0.1), InvalidArgumentError);
}

TEST_CASE("reflection is an involution to one ulp per component") {
  Rng rng(11);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (int i = 0; i < 300; ++i) {
      Vec c = rng.uniform_vec(d, -5.0, 5.0);
      Vec z = rng.uniform_vec(d, -5.0, 5.0);
      Vec mid = reflect(c, z);
      CHECK(oracle::involution_within_one_ulp(z, mid, reflect(c, mid)));
    }
  }
}

TEST_CASE("reflection displacement identity, every norm") {
  // ||psi_c(y) - y|| = 2 ||c - y||: the algebraic step behind the
  // fixed-center argument.
  Rng rng(12);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (const Norm& n : shipped_norms(d)) {
      NormedSpace sp{d, n, ""};
      for (int i = 0; i < 150; ++i) {
        Vec c = rng.uniform_vec(d, -3.0, 3.0);
        Vec y = rng.uniform_vec(d, -3.0, 3.0);
        double lhs = sp.norm_of(reflect(c, y) - y);
        double rhs = 2.0 * sp.distance(c, y);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
      }
    }
  }
}

TEST_CASE("reflection is an isometry, every norm") {
  Rng rng(13);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (const Norm& n : shipped_norms(d)) {
      NormedSpace sp{d, n, ""};
      for (int i = 0; i < 150; ++i) {
        Vec c = rng.uniform_vec(d, -3.0, 3.0);
        Vec x = rng.uniform_vec(d, -3.0, 3.0);
        Vec y = rng.uniform_vec(d, -3.0, 3.0);
        double lhs = sp.distance(reflect(c, x), reflect(c, y));
        double rhs = sp.distance(x, y);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
      }
    }
  }
}

TEST_CASE("norm axioms on 1e4 samples per shipped instance") {
  for (std::size_t d : {std::size_t{2}, std::size_t{5}}) {
    for (const Norm& n : shipped_norms(d)) {
      NormedSpace sp{d, n, ""};
      CHECK(check_norm_axioms(sp, 10000, 21) <= 1e-9);
    }
  }
}

namespace {

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

// The Hoelder-equality maximizer of <a, x> over the unit ball of n.
Vec dual_maximizer(const Norm& n, const Vec& a) {
  const std::size_t d = a.dim();
  Vec x(d);
  switch (n.kind()) {
    case NormKind::l1: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < d; ++i)
        if (std::abs(a[i]) > std::abs(a[best])) best = i;
      x[best] = sgn(a[best]);
      return x;
    }
    case NormKind::l2:
      return (1.0 / Norm::l2()(a)) * a;
    case NormKind::linf: {
      for (std::size_t i = 0; i < d; ++i) x[i] = sgn(a[i]);
      return x;
    }
    case NormKind::lp: {
      double q = n.p() / (n.p() - 1.0);
      for (std::size_t i = 0; i < d; ++i)
        x[i] = sgn(a[i]) * std::pow(std::abs(a[i]), q - 1.0);
      return (1.0 / n(x)) * x;
    }
    case NormKind::weighted_linf: {
      for (std::size_t i = 0; i < d; ++i) x[i] = sgn(a[i]) / n.weights()[i];
      return x;
    }
    default:
      throw std::runtime_error("no maximizer");
  }
}

}  // namespace

TEST_CASE("dual norms: pairing inequality and exact attainment") {
  Rng rng(14);
  const std::size_t d = 3;
  for (const Norm& n : {Norm::l1(), Norm::l2(), Norm::linf(), Norm::lp(2.5),
                        Norm::weighted_linf({1.0, 2.0, 0.5})}) {
    for (int k = 0; k < 10; ++k) {
      Vec a = rng.uniform_vec(d, -2.0, 2.0);
      auto dual = n.dual(a);
      REQUIRE(dual.has_value());
      for (int i = 0; i < 1000; ++i) {
        Vec x = rng.uniform_vec(d, -1.0, 1.0);
        double nx = n(x);
        if (nx < 1e-9) continue;
        CHECK(std::abs(dot(a, x)) <= *dual * nx * (1.0 + 1e-12));
      }
      // The known maximizer attains the dual value exactly.
      Vec xm = dual_maximizer(n, a);
      CHECK(dot(a, xm) / n(xm) == doctest::Approx(*dual).epsilon(1e-12));
    }
  }
}

TEST_CASE("lp specializations agree with l1 and l2") {
  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    Vec x = rng.uniform_vec(4, -3.0, 3.0);
    CHECK(Norm::lp(1.0)(x) == doctest::Approx(Norm::l1()(x)).epsilon(1e-13));
    CHECK(Norm::lp(2.0)(x) == doctest::Approx(Norm::l2()(x)).epsilon(1e-13));
  }
}

TEST_CASE("norm constructor validation") {
  CHECK_THROWS_AS(Norm::lp(0.5), InvalidArgumentError);
  CHECK_THROWS_AS(Norm::weighted_linf({1.0, -1.0}), InvalidArgumentError);
  CHECK_THROWS_AS(Norm::weighted_linf({}), InvalidArgumentError);
  // Functionals spanning only a line in R^2: a seminorm, rejected.
  CHECK_THROWS_AS(Norm::polyhedral(Mat::from_rows({{1.0, 0.0}, {2.0, 0.0}})),
                  InvalidArgumentError);
}

TEST_CASE("norm-induced metric satisfies the metric axioms") {
  NormedSpace sp{3, Norm::lp(3.0), ""};
  Metric m = Metric::from_norm(sp);
  CHECK(m.translation_invariant);
  CHECK(check_metric_axioms(m, 3, 5000, 22) <= 1e-9);
}

TEST_CASE("custom translation-invariant metric accepted at the type level") {
  // A scaled max metric not induced by the declared space norm.
  Metric m{[](const Vec& a, const Vec& b) { return 2.0 * Norm::linf()(a - b); }, true};
  CHECK(check_metric_axioms(m, 2, 2000, 23) <= 1e-9);
}

TEST_CASE("segment type holds its endpoints") {
  Segment s(Vec{0.0, 0.0}, Vec{2.0, 4.0});
  CHECK(s.at(0.5) == Vec{1.0, 2.0});
  CHECK_THROWS_AS(Segment(Vec{0.0}, Vec{1.0, 2.0}), DimensionError);
}
