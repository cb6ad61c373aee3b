#pragma once

#include "urep/core_model.hpp"

namespace urep {

/// Regularizer G(x, y) >= 0 with G(x, x) = 0, grad_y G(x, x) = 0 and
/// y -> G(x, y) strongly convex.
struct Regularizer {
  std::function<double(const Point&, const Point&)> value;
  std::function<Point(const Point&, const Point&)> grad_x;
  std::function<Point(const Point&, const Point&)> grad_y;
};

/// G(x, y) = alpha / 2 |x - y|^2.
Regularizer quadratic_regularizer(double alpha);

/// How line_search treats probes u + t d that leave a nonconvex set.
enum class SegmentPolicy { Project, Strict };

/// Gap function g(u) = max_w { -F(u, w) - G(u, w) } of a problem. It is
/// nonnegative on the set when F vanishes on the diagonal, and with the
/// default alpha = k / r and quadratic G it vanishes exactly at solutions.
class GapModel {
 public:
  /// alpha <= 0 selects k / r.
  explicit GapModel(Problem problem, double alpha = 0.0);
  GapModel(Problem problem, double alpha, Regularizer regularizer);

  const Problem& problem() const { return problem_; }
  double alpha() const { return alpha_; }
  const Regularizer& regularizer() const { return regularizer_; }

  SegmentPolicy segment_policy = SegmentPolicy::Project;

 private:
  Problem problem_;
  double alpha_;
  Regularizer regularizer_;
};

struct WMapResult {
  Point point;
  /// F(u, w) + G(u, w) at the returned minimizer.
  double value = 0.0;
};

/// argmin over the set of w -> F(u, w) + G(u, w): projected gradient from u and
/// eight seeded samples, best value kept.
WMapResult w_map_full(const GapModel& g, const Point& u, const SolverConfig& cfg);

inline Point w_map(const GapModel& g, const Point& u, const SolverConfig& cfg) {
  return w_map_full(g, u, cfg).point;
}

double gap_value(const GapModel& g, const Point& u, const SolverConfig& cfg);

/// -grad_u F(u, y) - grad_x G(u, y) with y = w_map(u).
Point gap_gradient(const GapModel& g, const Point& u, const SolverConfig& cfg);

struct NecessaryConditionReport {
  bool passed = false;
  double min_value = kInfinity;
  Point worst_u;
  Point worst_w;
  std::size_t pairs = 0;
};

/// Samples pairs (u, w) and reports the minimum of
///   <F'_u(u, w) + G'_x(u, w) + F'_w(u, w) + G'_y(u, w), w - u>.
/// passed iff the minimum is >= -1e-9. This is the orientation under which
/// d = w(u) - u is a descent direction; for F(u, w) = <T u, w - u> it reads
/// (w - u)^T grad T(u) (w - u) >= 0.
NecessaryConditionReport check_necessary_condition(const GapModel& g, std::size_t n_pairs,
                                                   std::uint64_t seed);

struct LineSearchResult {
  double t = 0.0;
  /// Gap value at the accepted point.
  double value = 0.0;
  /// u + t d, projected back onto the set when the segment leaves it.
  Point point;
};

/// Minimizes phi(t) = g(u + t d) over [0, 1]: a 17-point scan including both
/// endpoints, then golden-section refinement around the best scan point down to
/// width cfg.line_search_tol. Throws InfeasibleSegment under
/// SegmentPolicy::Strict when a probe leaves the set.
LineSearchResult line_search(const GapModel& g, const Point& u, const Point& d,
                             const SolverConfig& cfg);

/// u_{n+1} = u_n + t_n d_n with d_n = w(u_n) - u_n and t_n from line_search.
/// Stops when |d_n| or |u_{n+1} - u_n| drops below cfg.outer_tol.
Trace descent_solve(const GapModel& g, const SolverConfig& cfg, const Point& u0);

}  // namespace urep
