#pragma once

#include "urep/core_model.hpp"

#include <random>
#include <vector>

namespace fixtures {

using urep::ConstraintSet;
using urep::make_point;
using urep::Matrix;
using urep::Point;
using urep::Problem;

/// T(u) = u - p as an affine VI.
inline urep::Bifunction shifted_identity(const Point& p) {
  return urep::affine_vi_bifunction(Matrix::Identity(p.size(), p.size()), -p);
}

/// Unit ball, T(u) = u - (2, 0), k = r = 1. Solution (1, 0).
inline Problem unit_ball_vi() {
  return Problem(shifted_identity(make_point({2.0, 0.0})), ConstraintSet::ball(Point::Zero(2), 1.0),
                 1.0, 1.0);
}

/// Ball of radius 10, T = identity, k = r = 1. Solution (0, 0); gap |u|^2 / 2.
inline Problem ball10_identity() {
  return Problem(shifted_identity(Point::Zero(2)), ConstraintSet::ball(Point::Zero(2), 10.0), 1.0,
                 1.0);
}

/// Annulus 1 <= |x| <= 2, T(u) = u - (0.2, 0), k = r = 1. Solution (1, 0).
inline Problem annulus_vi() {
  return Problem(shifted_identity(make_point({0.2, 0.0})),
                 ConstraintSet::annulus(Point::Zero(2), 1.0, 2.0), 1.0, 1.0);
}

inline Matrix box_P() {
  Matrix P(2, 2);
  P << 2.0, 0.5, -0.5, 1.5;
  return P;
}
inline Matrix box_Q() {
  Matrix Q(2, 2);
  Q << 1.0, 0.0, 0.0, 0.5;
  return Q;
}

/// F(u, v) = <P u + Q v + q, v - u> on [-1, 1]^2, k = 1, r = 2. P - Q is
/// positive definite, so F is monotone; the solution solves (P + Q) u = -q,
/// i.e. u* = (0.36, -0.16).
inline Problem box_quadratic() {
  return Problem(urep::quadratic_bifunction(box_P(), box_Q(), make_point({-1.0, 0.5})),
                 ConstraintSet::box(Point::Constant(2, -1.0), Point::Constant(2, 1.0)), 1.0, 2.0);
}

struct Shipped {
  const char* name;
  Problem problem;
  Point solution;
};

inline std::vector<Shipped> shipped_problems() {
  return {
      {"unit_ball_vi", unit_ball_vi(), make_point({1.0, 0.0})},
      {"ball10_identity", ball10_identity(), make_point({0.0, 0.0})},
      {"annulus_vi", annulus_vi(), make_point({1.0, 0.0})},
      {"box_quadratic", box_quadratic(), make_point({0.36, -0.16})},
  };
}

inline Point random_point(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Point p(n);
  for (auto& c : p) c = normal(rng);
  return p;
}

}  // namespace fixtures
