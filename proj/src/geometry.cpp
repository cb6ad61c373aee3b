#include "urep/geometry.hpp"

#include "urep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace urep {

void require_same_dim(const Point& a, const Point& b, const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << what << ": dimension " << a.size() << " does not match " << b.size();
    throw DimensionMismatch(os.str());
  }
}

void require_finite(const Point& p, const char* what) {
  if (!p.allFinite()) throw NonFiniteValue(std::string(what) + ": non-finite coordinate");
}

namespace {

constexpr std::string_view kKindNames[] = {"box",     "ball",           "halfspace",     "sphere",
                                           "annulus", "box_minus_ball", "two_ball_union"};

void require(bool ok, const char* message) {
  if (!ok) throw InvalidArgument(message);
}

void require_dim(const Point& p, Eigen::Index dim, const char* what) {
  if (p.size() != dim) {
    std::ostringstream os;
    os << what << ": expected dimension " << dim << ", got " << p.size();
    throw DimensionMismatch(os.str());
  }
}

AxisBox cube(const Point& center, double half_width) {
  const Point h = Point::Constant(center.size(), half_width);
  return {center - h, center + h};
}

Point axis_point(const Point& center, double radius) {
  Point p = center;
  p[0] += radius;
  return p;
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Radial projection onto the sphere |x - c| = radius; degenerate at the centre.
Projection onto_sphere(const Point& x, const Point& center, double radius) {
  const Point diff = x - center;
  const double d = diff.norm();
  if (d == 0.0) return {axis_point(center, radius), false};
  return {center + (radius / d) * diff, true};
}

Projection onto_ball(const Point& x, const Point& center, double radius) {
  const Point diff = x - center;
  const double d = diff.norm();
  if (d <= radius) return {x, true};
  return {center + (radius / d) * diff, true};
}

Point clamp(const Point& x, const Point& lower, const Point& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

struct Projector {
  const Point& x;

  Projection operator()(const shapes::Box& s) const { return {clamp(x, s.lower, s.upper), true}; }
  Projection operator()(const shapes::Ball& s) const { return onto_ball(x, s.center, s.radius); }
  Projection operator()(const shapes::Halfspace& s) const {
    const double excess = s.normal.dot(x) - s.offset;
    if (excess <= 0.0) return {x, true};
    return {x - (excess / s.normal.squaredNorm()) * s.normal, true};
  }
  Projection operator()(const shapes::Sphere& s) const {
    return onto_sphere(x, s.center, s.radius);
  }
  Projection operator()(const shapes::Annulus& s) const {
    const double d = (x - s.center).norm();
    if (d < s.inner) return onto_sphere(x, s.center, s.inner);
    if (d > s.outer) return onto_sphere(x, s.center, s.outer);
    return {x, true};
  }
  Projection operator()(const shapes::BoxMinusBall& s) const {
    if ((x - s.center).norm() < s.radius) return onto_sphere(x, s.center, s.radius);
    return {clamp(x, s.lower, s.upper), true};
  }
  Projection operator()(const shapes::TwoBallUnion& s) const {
    Projection a = onto_ball(x, s.center_a, s.radius_a);
    Projection b = onto_ball(x, s.center_b, s.radius_b);
    const double da = (x - a.point).norm();
    const double db = (x - b.point).norm();
    if (std::abs(da - db) <= 1e-14 * (1.0 + da + db)) {
      Projection& pick = lex_less(s.center_b, s.center_a) ? b : a;
      pick.unique = false;
      return pick;
    }
    return da < db ? a : b;
  }
};

}  // namespace

std::string_view to_string(SetKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

std::optional<SetKind> set_kind_from_string(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i) {
    if (kKindNames[i] == name) return static_cast<SetKind>(i);
  }
  return std::nullopt;
}

ConstraintSet::ConstraintSet(Shape shape, Eigen::Index dim, double prox_constant, AxisBox bbox)
    : shape_(std::move(shape)),
      dim_(dim),
      prox_constant_(prox_constant),
      bounding_box_(std::move(bbox)) {
  require(dim_ > 0, "constraint set: dimension must be positive");
}

ConstraintSet ConstraintSet::box(Point lower, Point upper) {
  require_dim(upper, lower.size(), "box upper");
  require((lower.array() <= upper.array()).all(), "box: lower must not exceed upper");
  require(lower.allFinite() && upper.allFinite(), "box: bounds must be finite");
  AxisBox bb{lower, upper};
  const auto dim = lower.size();
  return {shapes::Box{std::move(lower), std::move(upper)}, dim, kInfinity, std::move(bb)};
}

ConstraintSet ConstraintSet::ball(Point center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), "ball: radius must be positive");
  AxisBox bb = cube(center, radius);
  const auto dim = center.size();
  return {shapes::Ball{std::move(center), radius}, dim, kInfinity, std::move(bb)};
}

ConstraintSet ConstraintSet::halfspace(Point normal, double offset, AxisBox window) {
  require(normal.norm() > 0.0, "halfspace: normal must be nonzero");
  require_dim(window.lower, normal.size(), "halfspace window");
  require_dim(window.upper, normal.size(), "halfspace window");
  require((window.lower.array() <= window.upper.array()).all(),
          "halfspace: window lower must not exceed upper");
  const auto dim = normal.size();
  AxisBox bb = window;
  return {shapes::Halfspace{std::move(normal), offset, std::move(window)}, dim, kInfinity,
          std::move(bb)};
}

ConstraintSet ConstraintSet::sphere(Point center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), "sphere: radius must be positive");
  AxisBox bb = cube(center, radius);
  const auto dim = center.size();
  return {shapes::Sphere{std::move(center), radius}, dim, radius, std::move(bb)};
}

ConstraintSet ConstraintSet::annulus(Point center, double inner, double outer) {
  require(inner > 0.0 && inner <= outer && std::isfinite(outer),
          "annulus: radii must satisfy 0 < inner <= outer");
  AxisBox bb = cube(center, outer);
  const auto dim = center.size();
  return {shapes::Annulus{std::move(center), inner, outer}, dim, inner, std::move(bb)};
}

ConstraintSet ConstraintSet::box_minus_ball(Point lower, Point upper, Point center, double radius) {
  require_dim(upper, lower.size(), "box_minus_ball upper");
  require_dim(center, lower.size(), "box_minus_ball center");
  require(radius > 0.0, "box_minus_ball: radius must be positive");
  require(((center.array() - radius) > lower.array()).all() &&
              ((center.array() + radius) < upper.array()).all(),
          "box_minus_ball: the removed ball must lie strictly inside the box");
  AxisBox bb{lower, upper};
  const auto dim = lower.size();
  return {shapes::BoxMinusBall{std::move(lower), std::move(upper), std::move(center), radius}, dim,
          radius, std::move(bb)};
}

ConstraintSet ConstraintSet::two_ball_union(Point center_a, double radius_a, Point center_b,
                                            double radius_b) {
  require_dim(center_b, center_a.size(), "two_ball_union center_b");
  require(radius_a > 0.0 && radius_b > 0.0, "two_ball_union: radii must be positive");
  const double gap = (center_a - center_b).norm() - radius_a - radius_b;
  require(gap > 0.0, "two_ball_union: balls must be disjoint");
  const AxisBox a = cube(center_a, radius_a);
  const AxisBox b = cube(center_b, radius_b);
  AxisBox bb{a.lower.cwiseMin(b.lower), a.upper.cwiseMax(b.upper)};
  const auto dim = center_a.size();
  return {shapes::TwoBallUnion{std::move(center_a), radius_a, std::move(center_b), radius_b}, dim,
          gap / 2.0, std::move(bb)};
}

SetKind ConstraintSet::kind() const {
  return static_cast<SetKind>(shape_.index());
}

double ConstraintSet::default_tolerance(const Point& x) {
  return 1e-9 * (1.0 + x.norm());
}

bool ConstraintSet::contains(const Point& x, double tol) const {
  return distance(x) <= tol;
}

Projection ConstraintSet::project(const Point& x, ProjectionMode mode) const {
  require_dim(x, dim_, "project");
  Projection p = std::visit(Projector{x}, shape_);
  if (!p.unique && mode == ProjectionMode::Strict) {
    throw DegenerateProjection(std::string("nearest point of ") + std::string(to_string(kind())) +
                               " is not unique");
  }
  return p;
}

double ConstraintSet::distance(const Point& x) const {
  return (x - project(x).point).norm();
}

std::vector<Point> ConstraintSet::sample(std::size_t n, std::uint64_t seed) const {
  if (n == 0) throw InvalidArgument("sample: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(n);

  if (const auto* s = std::get_if<shapes::Sphere>(&shape_)) {
    std::normal_distribution<double> normal;
    while (out.size() < n) {
      Point g(dim_);
      for (auto& c : g) c = normal(rng);
      const double norm = g.norm();
      if (norm == 0.0) continue;
      out.push_back(s->center + (s->radius / norm) * g);
    }
    return out;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point span = bounding_box_.upper - bounding_box_.lower;
  const std::size_t max_attempts = 1000 * n + 10000;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < n; ++attempt) {
    Point x(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) x[i] = bounding_box_.lower[i] + span[i] * unit(rng);
    if (distance(x) == 0.0) out.push_back(std::move(x));
  }
  if (out.size() < n) {
    std::ostringstream os;
    os << "sample: rejection sampling produced " << out.size() << " of " << n << " points";
    throw SamplingExhausted(os.str());
  }
  return out;
}

NormalCheckReport ConstraintSet::proximal_normal_check(const Point& u, const Point& w,
                                                       std::size_t n_samples, std::uint64_t seed,
                                                       std::optional<double> claimed) const {
  require_dim(u, dim_, "proximal_normal_check u");
  require_dim(w, dim_, "proximal_normal_check w");
  if (!contains(u)) throw PointNotInSet("proximal_normal_check: u is not in the set");
  if (w.norm() > 1.0 + 1e-12) throw InvalidArgument("proximal_normal_check: |w| must be <= 1");

  const double r = claimed.value_or(prox_constant_);
  const double curvature = std::isinf(r) ? 0.0 : 1.0 / (2.0 * r);

  NormalCheckReport report;
  for (const Point& v : sample(n_samples, seed)) {
    const Point dv = v - u;
    const double violation = w.dot(dv) - curvature * dv.squaredNorm();
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_sample = v;
    }
  }
  report.samples = n_samples;
  report.passed = report.max_violation <= 1e-9;
  return report;
}

}  // namespace urep
