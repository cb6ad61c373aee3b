#include "urep/schemes.hpp"

#include "urep/errors.hpp"

#include <cmath>
#include <sstream>

namespace urep {

namespace {

void require_grad_v(const Bifunction& f, const char* who) {
  if (!f.has_grad_v()) throw MissingGradient(std::string(who) + ": bifunction has no grad_v");
}

void require_start(const Problem& p, const Point& u0, const char* who) {
  if (u0.size() != p.dim())
    throw DimensionMismatch(std::string(who) + ": start has wrong dimension");
  if (!p.set().contains(u0)) throw PointNotInSet(std::string(who) + ": start is not in the set");
}

// max_inner bounds the subproblem sweeps only; the residual diagnostic keeps
// the default iteration cap.
double residual_at(const Problem& p, const Point& u, const SolverConfig& cfg) {
  return problem_residual(p, u, cfg.residual_budget, {cfg.inner_tol, InnerOptions{}.max_iter},
                          cfg.seed);
}

TraceRecord first_record(const Problem& p, const Point& u0, const SolverConfig& cfg) {
  TraceRecord rec;
  rec.iter = 0;
  rec.iterate = u0;
  rec.residual = residual_at(p, u0, cfg);
  return rec;
}

Trace run_inertial(const Problem& p, const SolverConfig& cfg, const Point& u0,
                   const GammaSchedule& schedule) {
  cfg.validate();
  require_start(p, u0, "inertial_proximal_solve");
  require_grad_v(p.f(), "inertial_proximal_solve");

  Trace trace;
  trace.records.push_back(first_record(p, u0, cfg));
  Point u_prev = u0;
  Point u_n = u0;

  for (std::size_t n = 0; n < cfg.max_outer; ++n) {
    const double gamma = schedule(n);
    if (!(gamma >= 0.0 && gamma < 1.0)) {
      throw InvalidArgument("gamma_schedule: values must lie in [0, 1)");
    }
    Point next;
    try {
      next = solve_subproblem({p, u_n, u_prev, cfg.lambda, gamma}, cfg);
    } catch (const SubproblemFailed& e) {
      trace.status = Status::SubproblemFailed;
      trace.message = e.what();
      return trace;
    }

    TraceRecord rec;
    rec.iter = n + 1;
    rec.step_norm = (next - u_n).norm();
    rec.residual = residual_at(p, next, cfg);
    rec.iterate = next;
    const bool done = rec.step_norm < cfg.outer_tol;
    trace.records.push_back(std::move(rec));
    if (done) {
      trace.status = Status::Converged;
      return trace;
    }
    u_prev = std::move(u_n);
    u_n = std::move(next);
  }
  trace.status = Status::MaxIterations;
  return trace;
}

}  // namespace

Point solve_subproblem(const SubproblemSpec& spec, const SolverConfig& cfg) {
  const Problem& p = spec.problem;
  const Bifunction& f = p.f();
  require_grad_v(f, "solve_subproblem");
  if (!(spec.lambda > 0.0)) throw InvalidArgument("solve_subproblem: lambda must be positive");
  if (!(spec.gamma_n >= 0.0)) throw InvalidArgument("solve_subproblem: gamma_n must be >= 0");

  const double scale = 1.0 + p.kappa();
  const Point z = spec.u_n - (spec.gamma_n / scale) * (spec.u_n - spec.u_prev);
  const double step = spec.lambda / scale;

  Point w = spec.u_n;
  double change = kInfinity;
  for (std::size_t it = 0; it < cfg.max_inner; ++it) {
    Point next = p.set().project(z - step * f.grad_v(w, w)).point;
    if (!next.allFinite()) throw SubproblemFailed("solve_subproblem: iterate became non-finite");
    change = (next - w).norm();
    w = std::move(next);
    if (change <= cfg.inner_tol) {
      if (cfg.verify) {
        const double violation = subproblem_violation(spec, w, 10000, cfg.seed);
        if (violation > 1e-8) {
          std::ostringstream os;
          os << "solve_subproblem: sampled inequality violated by " << violation;
          throw SubproblemFailed(os.str());
        }
      }
      return w;
    }
  }
  std::ostringstream os;
  os << "solve_subproblem: fixed-point change " << change << " above tolerance " << cfg.inner_tol
     << " after " << cfg.max_inner << " sweeps";
  throw SubproblemFailed(os.str());
}

double subproblem_violation(const SubproblemSpec& spec, const Point& w, std::size_t n_samples,
                            std::uint64_t seed) {
  const Problem& p = spec.problem;
  const double kappa = p.kappa();
  const Point base = (1.0 + kappa) * (w - spec.u_n) + spec.gamma_n * (spec.u_n - spec.u_prev);
  double worst = 0.0;
  for (const Point& v : p.set().sample(n_samples, seed)) {
    const Point dv = v - w;
    const double lhs = spec.lambda * p.f().eval(w, v) + (base + kappa * dv).dot(dv);
    worst = std::max(worst, -lhs);
  }
  return worst;
}

Trace inertial_proximal_solve(const Problem& p, const SolverConfig& cfg, const Point& u0) {
  return run_inertial(p, cfg, u0, cfg.gamma_schedule);
}

Trace proximal_solve(const Problem& p, const SolverConfig& cfg, const Point& u0) {
  return run_inertial(p, cfg, u0, constant_gamma(0.0));
}

Trace explicit_solve(const Problem& p, const SolverConfig& cfg, const Point& u0) {
  cfg.validate();
  require_start(p, u0, "explicit_solve");
  const Bifunction& f = p.f();
  require_grad_v(f, "explicit_solve");

  Trace trace;
  trace.records.push_back(first_record(p, u0, cfg));
  Point u_n = u0;
  for (std::size_t n = 0; n < cfg.max_outer; ++n) {
    Point next = p.set().project(u_n - cfg.lambda * f.grad_v(u_n, u_n)).point;
    TraceRecord rec;
    rec.iter = n + 1;
    rec.step_norm = (next - u_n).norm();
    rec.residual = residual_at(p, next, cfg);
    rec.iterate = next;
    const bool done = rec.step_norm < cfg.outer_tol;
    trace.records.push_back(std::move(rec));
    if (done) {
      trace.status = Status::Converged;
      return trace;
    }
    u_n = std::move(next);
  }
  trace.status = Status::MaxIterations;
  return trace;
}

FejerReport fejer_check(const Trace& trace, const Point& u_star, double epsilon) {
  if (trace.records.empty()) throw EmptyTrace("fejer_check: trace has no records");
  FejerReport report;
  const double grow = (1.0 + epsilon) * (1.0 + epsilon);
  for (std::size_t n = 0; n + 1 < trace.records.size(); ++n) {
    const Point& un = trace.records[n].iterate;
    const Point& next = trace.records[n + 1].iterate;
    const double dist_n = (un - u_star).squaredNorm();
    const double lhs = (next - u_star).squaredNorm();
    const double rhs =
        grow * dist_n - (next - (1.0 + epsilon) * un + epsilon * u_star).squaredNorm();
    const double slack = 1e-8 * (1.0 + dist_n);
    const double margin = rhs + slack - lhs;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_index = n;
    }
    ++report.pairs;
  }
  report.passed = report.worst_margin >= 0.0;
  return report;
}

}  // namespace urep
