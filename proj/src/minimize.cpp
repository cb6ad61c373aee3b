#include "urep/minimize.hpp"

#include "urep/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace urep {

InnerResult projected_gradient(const SmoothObjective& objective, const ConstraintSet& set,
                               const Point& start, const InnerOptions& options) {
  constexpr double kMinStep = 1e-14;
  constexpr double kMaxStep = 1e6;
  constexpr double kSlack = 4.0 * std::numeric_limits<double>::epsilon();
  constexpr double kBand = 1e-12;

  InnerResult result;
  result.point = set.project(start).point;
  result.value = objective.value(result.point);
  double step = 1.0;

  for (std::size_t it = 0; it < options.max_iter; ++it) {
    result.iterations = it + 1;
    const Point g = objective.gradient(result.point);
    if (!g.allFinite()) throw NonFiniteValue("projected_gradient: non-finite gradient");

    Point trial;
    double trial_value = 0.0;
    double moved = 0.0;
    bool accepted = false;
    while (true) {
      trial = set.project(result.point - step * g).point;
      const Point delta = trial - result.point;
      moved = delta.norm();
      trial_value = objective.value(trial);
      const double bound = result.value + g.dot(delta) + delta.squaredNorm() / (2.0 * step);
      const double noise = kSlack * (std::abs(result.value) + std::abs(trial_value));
      if (trial_value <= bound - noise) {
        accepted = true;
        break;
      }
      // Values of F may come from cancelling terms much larger than the result,
      // so near a minimum the value test decides nothing. There the step must
      // pass the curvature test <g(trial) - g, d> <= |d|^2 / step instead.
      if (trial_value <= bound + kBand * (1.0 + std::abs(result.value)) &&
          (objective.gradient(trial) - g).dot(delta) <= delta.squaredNorm() / step) {
        accepted = true;
        break;
      }
      if (step <= kMinStep) break;
      step *= 0.5;
    }
    if (!accepted) return result;

    const double mapping = moved / step;
    result.point = std::move(trial);
    result.value = trial_value;
    if (mapping <= options.tol) {
      result.converged = true;
      return result;
    }
    step = std::min(2.0 * step, kMaxStep);
  }
  return result;
}

InnerResult multistart_minimize(const SmoothObjective& objective, const ConstraintSet& set,
                                const std::vector<Point>& starts, const InnerOptions& options) {
  InnerResult best;
  bool found = false;
  for (const Point& start : starts) {
    InnerResult r = projected_gradient(objective, set, start, options);
    if (!r.converged) continue;
    if (!found || r.value < best.value) {
      best = std::move(r);
      found = true;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "inner minimization: none of " << starts.size() << " starts reached tolerance "
       << options.tol << " within " << options.max_iter << " iterations";
    throw InnerSolveFailed(os.str());
  }
  return best;
}

}  // namespace urep
