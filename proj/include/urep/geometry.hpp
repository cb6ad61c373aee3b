#pragma once

#include "urep/point.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace urep {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Axis-aligned box [lower, upper].
struct AxisBox {
  Point lower;
  Point upper;
};

namespace shapes {
struct Box {
  Point lower, upper;
};
struct Ball {
  Point center;
  double radius;
};
/// {x : <normal, x> <= offset}, sampled inside `window`.
struct Halfspace {
  Point normal;
  double offset;
  AxisBox window;
};
struct Sphere {
  Point center;
  double radius;
};
/// {x : inner <= |x - c| <= outer}.
struct Annulus {
  Point center;
  double inner, outer;
};
/// {x in box : |x - c| >= radius}; the ball must lie strictly inside the box.
struct BoxMinusBall {
  Point lower, upper;
  Point center;
  double radius;
};
/// Union of two disjoint closed balls.
struct TwoBallUnion {
  Point center_a;
  double radius_a;
  Point center_b;
  double radius_b;
};
}  // namespace shapes

enum class SetKind { Box, Ball, Halfspace, Sphere, Annulus, BoxMinusBall, TwoBallUnion };

std::string_view to_string(SetKind kind);
std::optional<SetKind> set_kind_from_string(std::string_view name);

struct Projection {
  Point point;
  bool unique = true;
};

enum class ProjectionMode { TieBreak, Strict };

struct NormalCheckReport {
  bool passed = false;
  double max_violation = -kInfinity;
  Point worst_sample;
  std::size_t samples = 0;
};

/// A closed, uniformly prox-regular subset of R^n.
///
/// Convex kinds carry an infinite prox-regularity constant. For the nonconvex
/// kinds the constant is the largest r for which every unit proximal normal w
/// at u satisfies <w, v - u> <= |v - u|^2 / (2r) on the whole set:
///   sphere of radius rho          -> rho
///   annulus / box minus ball      -> inner radius
///   union of two disjoint balls   -> half of the gap between them
///
/// Where the nearest point is not unique the projection applies a fixed
/// tie-break: the centre of a sphere (or of the removed ball) maps to the
/// point along the first coordinate axis, and the bisector of a two-ball union
/// maps onto the ball whose centre is lexicographically smaller.
class ConstraintSet {
 public:
  using Shape = std::variant<shapes::Box, shapes::Ball, shapes::Halfspace, shapes::Sphere,
                             shapes::Annulus, shapes::BoxMinusBall, shapes::TwoBallUnion>;

  static ConstraintSet box(Point lower, Point upper);
  static ConstraintSet ball(Point center, double radius);
  static ConstraintSet halfspace(Point normal, double offset, AxisBox window);
  static ConstraintSet sphere(Point center, double radius);
  static ConstraintSet annulus(Point center, double inner, double outer);
  static ConstraintSet box_minus_ball(Point lower, Point upper, Point center, double radius);
  static ConstraintSet two_ball_union(Point center_a, double radius_a, Point center_b,
                                      double radius_b);

  SetKind kind() const;
  const Shape& shape() const { return shape_; }
  Eigen::Index dim() const { return dim_; }
  double prox_constant() const { return prox_constant_; }
  bool is_convex() const { return prox_constant_ == kInfinity; }
  const AxisBox& bounding_box() const { return bounding_box_; }

  /// Default membership tolerance 1e-9 (1 + |x|).
  static double default_tolerance(const Point& x);

  bool contains(const Point& x, double tol) const;
  bool contains(const Point& x) const { return contains(x, default_tolerance(x)); }

  Projection project(const Point& x, ProjectionMode mode = ProjectionMode::TieBreak) const;
  double distance(const Point& x) const;

  /// n points of the set, deterministic in `seed`.
  std::vector<Point> sample(std::size_t n, std::uint64_t seed) const;

  /// Samples the set and reports the largest value of
  /// <w, v - u> - |v - u|^2 / (2 r), with r the declared prox constant unless
  /// `claimed_prox_constant` overrides it.
  NormalCheckReport proximal_normal_check(const Point& u, const Point& w, std::size_t n_samples,
                                          std::uint64_t seed,
                                          std::optional<double> claimed_prox_constant = {}) const;

 private:
  ConstraintSet(Shape shape, Eigen::Index dim, double prox_constant, AxisBox bbox);

  Shape shape_;
  Eigen::Index dim_;
  double prox_constant_;
  AxisBox bounding_box_;
};

}  // namespace urep
