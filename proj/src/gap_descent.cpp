#include "urep/gap_descent.hpp"

#include "urep/errors.hpp"

#include <cmath>
#include <sstream>

namespace urep {

namespace {

constexpr std::size_t kWMapSamples = 8;

double resolve_alpha(const Problem& p, double alpha) {
  if (alpha > 0.0) return alpha;
  if (std::isinf(p.r())) {
    throw InvalidArgument("gap model: alpha = k / r vanishes for r = inf; pass alpha explicitly");
  }
  return p.k() / p.r();
}

void require_in_set(const GapModel& g, const Point& u, const char* who) {
  if (u.size() != g.problem().dim())
    throw DimensionMismatch(std::string(who) + ": wrong dimension");
  if (!g.problem().set().contains(u))
    throw PointNotInSet(std::string(who) + ": u is not in the set");
}

}  // namespace

Regularizer quadratic_regularizer(double alpha) {
  Regularizer G;
  G.value = [alpha](const Point& x, const Point& y) { return 0.5 * alpha * (x - y).squaredNorm(); };
  G.grad_x = [alpha](const Point& x, const Point& y) -> Point { return alpha * (x - y); };
  G.grad_y = [alpha](const Point& x, const Point& y) -> Point { return alpha * (y - x); };
  return G;
}

GapModel::GapModel(Problem problem, double alpha)
    : problem_(std::move(problem)),
      alpha_(resolve_alpha(problem_, alpha)),
      regularizer_(quadratic_regularizer(alpha_)) {}

GapModel::GapModel(Problem problem, double alpha, Regularizer regularizer)
    : problem_(std::move(problem)),
      alpha_(resolve_alpha(problem_, alpha)),
      regularizer_(std::move(regularizer)) {
  if (!regularizer_.value || !regularizer_.grad_x || !regularizer_.grad_y) {
    throw InvalidArgument("gap model: regularizer needs a value and both gradients");
  }
}

WMapResult w_map_full(const GapModel& g, const Point& u, const SolverConfig& cfg) {
  require_in_set(g, u, "w_map");
  const Bifunction& f = g.problem().f();
  if (!f.has_grad_v()) throw MissingGradient("w_map: bifunction has no grad_v");
  const Regularizer& G = g.regularizer();

  SmoothObjective objective{
      [&](const Point& w) { return f.eval(u, w) + G.value(u, w); },
      [&](const Point& w) -> Point { return f.grad_v(u, w) + G.grad_y(u, w); }};

  std::vector<Point> starts{u};
  auto extra = g.problem().set().sample(kWMapSamples, cfg.seed);
  starts.insert(starts.end(), extra.begin(), extra.end());

  InnerResult best = multistart_minimize(objective, g.problem().set(), starts, cfg.inner());
  return {std::move(best.point), best.value};
}

double gap_value(const GapModel& g, const Point& u, const SolverConfig& cfg) {
  if (!g.problem().f().diagonal_zero) {
    throw InvalidArgument("gap_value: bifunction is not flagged as vanishing on the diagonal");
  }
  return -w_map_full(g, u, cfg).value;
}

Point gap_gradient(const GapModel& g, const Point& u, const SolverConfig& cfg) {
  const Bifunction& f = g.problem().f();
  if (!f.has_grad_u()) throw MissingGradient("gap_gradient: bifunction has no grad_u");
  const Point y = w_map(g, u, cfg);
  return -f.grad_u(u, y) - g.regularizer().grad_x(u, y);
}

NecessaryConditionReport check_necessary_condition(const GapModel& g, std::size_t n_pairs,
                                                   std::uint64_t seed) {
  const Bifunction& f = g.problem().f();
  if (!f.has_grad_u() || !f.has_grad_v()) {
    throw MissingGradient("check_necessary_condition: both partial gradients are required");
  }
  if (n_pairs == 0) throw InvalidArgument("check_necessary_condition: n_pairs must be positive");
  const Regularizer& G = g.regularizer();
  const auto pts = g.problem().set().sample(2 * n_pairs, seed);

  NecessaryConditionReport report;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const Point& u = pts[2 * i];
    const Point& w = pts[2 * i + 1];
    const Point sum = f.grad_u(u, w) + G.grad_x(u, w) + f.grad_v(u, w) + G.grad_y(u, w);
    const double value = sum.dot(w - u);
    if (value < report.min_value) {
      report.min_value = value;
      report.worst_u = u;
      report.worst_w = w;
    }
  }
  report.pairs = n_pairs;
  report.passed = report.min_value >= -1e-9;
  return report;
}

LineSearchResult line_search(const GapModel& g, const Point& u, const Point& d,
                             const SolverConfig& cfg) {
  require_in_set(g, u, "line_search");
  if (d.size() != u.size()) throw DimensionMismatch("line_search: direction has wrong dimension");
  const ConstraintSet& set = g.problem().set();

  auto probe = [&](double t) -> LineSearchResult {
    Point x = u + t * d;
    if (!set.contains(x)) {
      if (g.segment_policy == SegmentPolicy::Strict) {
        std::ostringstream os;
        os << "line_search: u + " << t << " d leaves the set";
        throw InfeasibleSegment(os.str());
      }
      x = set.project(x).point;
    }
    const double value = gap_value(g, x, cfg);
    return {t, value, std::move(x)};
  };

  if (d.norm() == 0.0) return probe(0.0);

  constexpr int kScan = 16;
  LineSearchResult best = probe(0.0);
  int best_j = 0;
  for (int j = 1; j <= kScan; ++j) {
    LineSearchResult r = probe(static_cast<double>(j) / kScan);
    if (r.value < best.value) {
      best = std::move(r);
      best_j = j;
    }
  }

  // Golden-section refinement on the bracket around the best scan point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(0, best_j - 1) / static_cast<double>(kScan);
  double b = std::min(kScan, best_j + 1) / static_cast<double>(kScan);
  double c = b - inv_phi * (b - a);
  double e = a + inv_phi * (b - a);
  LineSearchResult fc = probe(c);
  LineSearchResult fe = probe(e);
  while (b - a > cfg.line_search_tol) {
    if (fc.value < fe.value) {
      b = e;
      e = c;
      fe = std::move(fc);
      c = b - inv_phi * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = e;
      fc = std::move(fe);
      e = a + inv_phi * (b - a);
      fe = probe(e);
    }
  }
  LineSearchResult& refined = fc.value < fe.value ? fc : fe;
  if (refined.value < best.value) best = std::move(refined);
  return best;
}

Trace descent_solve(const GapModel& g, const SolverConfig& cfg, const Point& u0) {
  cfg.validate();
  require_in_set(g, u0, "descent_solve");
  const Problem& p = g.problem();

  auto residual = [&](const Point& u) {
    return problem_residual(p, u, cfg.residual_budget, {cfg.inner_tol, InnerOptions{}.max_iter},
                            cfg.seed);
  };

  Trace trace;
  TraceRecord first;
  first.iterate = u0;
  first.residual = residual(u0);
  first.gap = gap_value(g, u0, cfg);
  trace.records.push_back(std::move(first));

  Point u = u0;
  for (std::size_t n = 0; n < cfg.max_outer; ++n) {
    const Point d = w_map(g, u, cfg) - u;
    if (d.norm() < cfg.outer_tol) {
      trace.status = Status::Converged;
      return trace;
    }
    LineSearchResult ls;
    try {
      ls = line_search(g, u, d, cfg);
    } catch (const InfeasibleSegment& e) {
      trace.status = Status::SubproblemFailed;
      trace.message = e.what();
      return trace;
    }
    TraceRecord rec;
    rec.iter = n + 1;
    rec.step_norm = (ls.point - u).norm();
    rec.residual = residual(ls.point);
    rec.gap = ls.value;
    rec.line_search_t = ls.t;
    rec.iterate = ls.point;
    const bool done = rec.step_norm < cfg.outer_tol;
    u = ls.point;
    trace.records.push_back(std::move(rec));
    if (done) {
      trace.status = Status::Converged;
      return trace;
    }
  }
  trace.status = Status::MaxIterations;
  return trace;
}

}  // namespace urep
