#include "doctest.h"
#include "fixtures.hpp"

#include "urep/errors.hpp"
#include "urep/geometry.hpp"

#include <cmath>

using namespace urep;
using fixtures::random_point;

namespace {

std::vector<ConstraintSet> shipped_sets() {
  const Point o = Point::Zero(2);
  return {
      ConstraintSet::box(make_point({0, 0}), make_point({1, 1})),
      ConstraintSet::ball(o, 1.0),
      ConstraintSet::halfspace(make_point({1, 1}), 0.5,
                               {Point::Constant(2, -2), Point::Constant(2, 2)}),
      ConstraintSet::sphere(o, 1.0),
      ConstraintSet::annulus(o, 1.0, 2.0),
      ConstraintSet::box_minus_ball(Point::Constant(2, -2), Point::Constant(2, 2), o, 1.0),
      ConstraintSet::two_ball_union(make_point({-2, 0}), 1.0, make_point({1.5, 0.5}), 0.75),
      ConstraintSet::annulus(Point::Zero(3), 0.5, 1.5),
  };
}

// Exterior points with a unique projection, drawn around the bounding box.
std::vector<Point> exterior_points(const ConstraintSet& s, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.25, 1.25);
  const AxisBox& bb = s.bounding_box();
  std::vector<Point> out;
  while (out.size() < n) {
    Point x(s.dim());
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
      x[i] = bb.lower[i] + unit(rng) * (bb.upper[i] - bb.lower[i]);
    }
    const Projection p = s.project(x);
    if (!p.unique || (x - p.point).norm() < 1e-6) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("contains") {
  const Point o = Point::Zero(2);
  CHECK(ConstraintSet::ball(o, 1.0).contains(make_point({0.5, 0}), 1e-9));
  CHECK_FALSE(ConstraintSet::sphere(o, 1.0).contains(make_point({0.5, 0}), 1e-9));
  CHECK(ConstraintSet::annulus(o, 1.0, 2.0).contains(make_point({1.5, 0}), 1e-9));
  CHECK_THROWS_AS(ConstraintSet::ball(o, 1.0).contains(make_point({0, 0, 0}), 1e-9),
                  DimensionMismatch);
}

TEST_CASE("project and distance") {
  const Point o = Point::Zero(2);
  const auto ball = ConstraintSet::ball(o, 1.0);
  const auto sphere = ConstraintSet::sphere(o, 1.0);
  const auto annulus = ConstraintSet::annulus(o, 1.0, 2.0);

  auto p = ball.project(make_point({2, 0}));
  CHECK(p.unique);
  CHECK((p.point - make_point({1, 0})).norm() == doctest::Approx(0.0));

  p = sphere.project(o);
  CHECK_FALSE(p.unique);
  CHECK((p.point - make_point({1, 0})).norm() == 0.0);
  CHECK_THROWS_AS(sphere.project(o, ProjectionMode::Strict), DegenerateProjection);

  p = annulus.project(make_point({0.5, 0}));
  CHECK(p.unique);
  CHECK((p.point - make_point({1, 0})).norm() == doctest::Approx(0.0));

  CHECK(ball.distance(make_point({2, 0})) == doctest::Approx(1.0));
  CHECK(sphere.distance(o) == doctest::Approx(1.0));
  CHECK(ConstraintSet::box(Point::Zero(2), Point::Ones(2)).distance(make_point({2, 2})) ==
        doctest::Approx(std::sqrt(2.0)));

  SUBCASE("sphere centre in 3d picks the first axis") {
    const auto s3 = ConstraintSet::sphere(make_point({1, 2, 3}), 2.0);
    const auto q = s3.project(make_point({1, 2, 3}));
    CHECK_FALSE(q.unique);
    CHECK((q.point - make_point({3, 2, 3})).norm() == 0.0);
  }

  SUBCASE("two-ball bisector picks the lexicographically smaller centre") {
    const auto u = ConstraintSet::two_ball_union(make_point({2, 0}), 1.0, make_point({-2, 0}), 1.0);
    const auto q = u.project(make_point({0, 1}));
    CHECK_FALSE(q.unique);
    CHECK(q.point[0] < 0.0);
    CHECK_THROWS_AS(u.project(make_point({0, 1}), ProjectionMode::Strict), DegenerateProjection);
    CHECK(u.project(make_point({0.1, 1})).unique);
    CHECK(u.project(make_point({0.1, 1})).point[0] > 0.0);
  }

  SUBCASE("box minus ball") {
    const auto s =
        ConstraintSet::box_minus_ball(Point::Constant(2, -2), Point::Constant(2, 2), o, 1.0);
    CHECK((s.project(make_point({0.5, 0})).point - make_point({1, 0})).norm() ==
          doctest::Approx(0.0));
    CHECK((s.project(make_point({3, 0.5})).point - make_point({2, 0.5})).norm() ==
          doctest::Approx(0.0));
    CHECK(s.contains(make_point({1.5, 1.5})));
  }

  SUBCASE("halfspace") {
    const auto h = ConstraintSet::halfspace(make_point({0, 2}), 2.0,
                                            {Point::Constant(2, -3), Point::Constant(2, 3)});
    CHECK((h.project(make_point({0.3, 4})).point - make_point({0.3, 1})).norm() ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("declared prox constants") {
  const Point o = Point::Zero(2);
  CHECK(ConstraintSet::box(o, Point::Ones(2)).prox_constant() == kInfinity);
  CHECK(ConstraintSet::ball(o, 1.0).is_convex());
  CHECK(ConstraintSet::sphere(o, 3.0).prox_constant() == 3.0);
  CHECK(ConstraintSet::annulus(o, 1.0, 2.0).prox_constant() == 1.0);
  CHECK(ConstraintSet::two_ball_union(make_point({-3, 0}), 1.0, make_point({3, 0}), 2.0)
            .prox_constant() == doctest::Approx(1.5));
  CHECK_THROWS_AS(ConstraintSet::two_ball_union(o, 1.0, make_point({1, 0}), 1.0), InvalidArgument);
  CHECK_THROWS_AS(ConstraintSet::annulus(o, 2.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(
      ConstraintSet::box_minus_ball(Point::Constant(2, -1), Point::Constant(2, 1), o, 1.0),
      InvalidArgument);
}

TEST_CASE("sample") {
  const Point o = Point::Zero(2);
  const auto ball = ConstraintSet::ball(o, 1.0);
  const auto pts = ball.sample(3, 7);
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) CHECK(ball.contains(p));
  const auto again = ball.sample(3, 7);
  for (std::size_t i = 0; i < 3; ++i) CHECK(pts[i] == again[i]);

  for (const auto& p : ConstraintSet::sphere(o, 1.0).sample(3, 7)) {
    CHECK(std::abs(p.norm() - 1.0) <= 1e-12);
  }

  const auto empty = ConstraintSet::halfspace(make_point({1, 0}), -5.0,
                                              {Point::Constant(2, -1), Point::Constant(2, 1)});
  CHECK_THROWS_AS(empty.sample(3, 7), SamplingExhausted);
  CHECK_THROWS_AS(ball.sample(0, 7), InvalidArgument);
}

TEST_CASE("proximal normal check examples") {
  const Point o = Point::Zero(2);
  const auto sphere = ConstraintSet::sphere(o, 1.0);
  const Point u = make_point({1, 0});

  const auto outward = sphere.proximal_normal_check(u, make_point({1, 0}), 10000, 1);
  CHECK(outward.passed);

  // v = (-1, 0) gives <w, v - u> = 2 against |v - u|^2 / 20 = 0.2.
  const auto tight = sphere.proximal_normal_check(u, make_point({-1, 0}), 10000, 1, 10.0);
  CHECK_FALSE(tight.passed);
  CHECK(tight.max_violation > 1.5);

  const auto box = ConstraintSet::box(o, Point::Ones(2));
  const auto convex = box.proximal_normal_check(make_point({1, 0.5}), make_point({1, 0}), 10000, 2);
  CHECK(convex.passed);
  CHECK(convex.max_violation <= 0.0);

  CHECK_THROWS_AS(sphere.proximal_normal_check(o, make_point({1, 0}), 10, 1), PointNotInSet);
}

TEST_CASE("projection idempotence") {
  std::mt19937_64 rng(11);
  for (const auto& s : shipped_sets()) {
    CAPTURE(to_string(s.kind()));
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(rng, s.dim(), 3.0);
      const Point p = s.project(x).point;
      CHECK((s.project(p).point - p).norm() <= 1e-12);
      CHECK(s.contains(p));
    }
  }
}

TEST_CASE("convex projections are nonexpansive") {
  std::mt19937_64 rng(12);
  for (const auto& s : shipped_sets()) {
    if (!s.is_convex()) continue;
    CAPTURE(to_string(s.kind()));
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(rng, s.dim(), 3.0);
      const Point y = random_point(rng, s.dim(), 3.0);
      CHECK((s.project(x).point - s.project(y).point).norm() <= (x - y).norm() + 1e-12);
    }
  }
}

TEST_CASE("prox-regularity certificate at boundary points") {
  for (const auto& s : shipped_sets()) {
    CAPTURE(to_string(s.kind()));
    std::uint64_t seed = 100;
    for (const Point& x : exterior_points(s, 100, 21)) {
      const Point u = s.project(x).point;
      const Point w = (x - u).normalized();
      const auto report = s.proximal_normal_check(u, w, 500, seed++);
      CHECK(report.passed);
    }
  }
}

TEST_CASE("nearest-point membership along proximal normals") {
  for (const auto& s : shipped_sets()) {
    CAPTURE(to_string(s.kind()));
    const double r = s.prox_constant();
    const std::vector<double> ts = std::isinf(r) ? std::vector<double>{0.5, 5.0, 50.0}
                                                 : std::vector<double>{0.1 * r, 0.5 * r, 0.9 * r};
    for (const Point& x : exterior_points(s, 100, 22)) {
      const Point u = s.project(x).point;
      const Point w = (x - u).normalized();
      for (double t : ts) CHECK((s.project(u + t * w).point - u).norm() <= 1e-9);
    }
  }
}
