#pragma once

#include "urep/geometry.hpp"

#include <functional>
#include <vector>

namespace urep {

struct InnerOptions {
  /// Stop once the projected-gradient mapping |x - P(x - s g)| / s falls below this.
  double tol = 1e-12;
  std::size_t max_iter = 10000;
};

struct SmoothObjective {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;
};

struct InnerResult {
  Point point;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Projected gradient descent with backtracking on the set. The acceptance
/// test is the standard quadratic upper bound
///   f(x+) <= f(x) + <g, x+ - x> + |x+ - x|^2 / (2 s),
/// which stays meaningful for prox-regular (nonconvex) sets because x+ is a
/// nearest point of x - s g.
InnerResult projected_gradient(const SmoothObjective& objective, const ConstraintSet& set,
                               const Point& start, const InnerOptions& options);

/// Runs projected_gradient from every start and keeps the lowest converged
/// value; ties keep the earliest start. Throws InnerSolveFailed if no start
/// converges.
InnerResult multistart_minimize(const SmoothObjective& objective, const ConstraintSet& set,
                                const std::vector<Point>& starts, const InnerOptions& options);

}  // namespace urep
