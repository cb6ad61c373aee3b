#include "doctest.h"

#include "urep/errors.hpp"
#include "urep/minimize.hpp"

using namespace urep;

TEST_CASE("projected gradient finds constrained minimizers") {
  const auto ball = ConstraintSet::ball(Point::Zero(2), 1.0);
  const Point target = make_point({3, 4});
  SmoothObjective dist{[&](const Point& x) { return 0.5 * (x - target).squaredNorm(); },
                       [&](const Point& x) -> Point { return x - target; }};
  const auto r = projected_gradient(dist, ball, Point::Zero(2), {});
  CHECK(r.converged);
  CHECK((r.point - make_point({0.6, 0.8})).norm() <= 1e-10);

  SUBCASE("linear objective on a sphere") {
    const auto sphere = ConstraintSet::sphere(Point::Zero(2), 2.0);
    SmoothObjective lin{[](const Point& x) { return x[0]; },
                        [](const Point&) -> Point { return make_point({1, 0}); }};
    const auto s = projected_gradient(lin, sphere, make_point({0.1, 2}), {});
    CHECK(s.converged);
    CHECK((s.point - make_point({-2, 0})).norm() <= 1e-8);
  }

  SUBCASE("ill-conditioned interior quadratic") {
    const auto box = ConstraintSet::box(Point::Constant(2, -5), Point::Constant(2, 5));
    SmoothObjective q{
        [](const Point& x) { return 50.0 * x[0] * x[0] + 0.5 * (x[1] - 1) * (x[1] - 1); },
        [](const Point& x) -> Point { return make_point({100.0 * x[0], x[1] - 1}); }};
    const auto s = projected_gradient(q, box, make_point({4, -4}), {});
    CHECK(s.converged);
    CHECK((s.point - make_point({0, 1})).norm() <= 1e-10);
  }
}

TEST_CASE("multistart keeps the best local minimum") {
  const auto annulus = ConstraintSet::annulus(Point::Zero(2), 1.0, 2.0);
  // Minimum of x_0 on the annulus is (-2, 0); from (1.5, 0) descent stalls nowhere
  // else, but a start in the right half is slower to get round.
  SmoothObjective lin{[](const Point& x) { return x[0]; },
                      [](const Point&) -> Point { return make_point({1, 0}); }};
  const auto r =
      multistart_minimize(lin, annulus, {make_point({1.5, 0}), make_point({-1.5, 0.1})}, {});
  CHECK(r.value == doctest::Approx(-2.0));

  SmoothObjective unbounded{[](const Point& x) { return x[0]; },
                            [](const Point&) -> Point { return make_point({1, 0}); }};
  const auto half = ConstraintSet::halfspace(make_point({0, 1}), 0.0,
                                             {Point::Constant(2, -1), Point::Constant(2, 1)});
  CHECK_THROWS_AS(multistart_minimize(unbounded, half, {Point::Zero(2)}, {1e-12, 200}),
                  InnerSolveFailed);
}

TEST_CASE("tight tolerance is reachable when values cancel") {
  // f(x) = <c + x, x - a> + |x - a|^2 / 2 is evaluated from terms of order one
  // while its variation near the minimizer is far below their rounding error.
  const auto box = ConstraintSet::box(Point::Constant(2, -1), Point::Constant(2, 1));
  const Point a = make_point({0.32461473650284844, 0.49678229901765003});
  const Point c = make_point({-0.7, 0.9});
  SmoothObjective f{
      [&](const Point& x) { return (c + x).dot(x - a) + 0.5 * (x - a).squaredNorm(); },
      [&](const Point& x) -> Point { return c + 2.0 * x - a + (x - a); }};
  // Minimizer solves 3 x = 2 a - c.
  const Point expected = (2.0 * a - c) / 3.0;
  for (const Point& start : {a, make_point({-1, -1}), make_point({1, -0.3})}) {
    const auto r = projected_gradient(f, box, start, {1e-12, 10000});
    CHECK(r.converged);
    CHECK((r.point - expected).norm() <= 1e-11);
  }
}
