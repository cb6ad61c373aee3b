#pragma once

#include "urep/core_model.hpp"

namespace urep {

/// One step of the inertial proximal iteration: given u_n and u_{n-1}, find
/// w in the set with, for every v in the set,
///   lambda F(w, v) + <(1 + kappa)(w - u_n) + gamma_n (u_n - u_{n-1})
///                      + kappa (v - w), v - w> >= 0.
struct SubproblemSpec {
  const Problem& problem;
  Point u_n;
  Point u_prev;
  double lambda;
  double gamma_n;
};

/// Solves the subproblem without the nonnegative kappa |v - w|^2 term, i.e.
///   lambda F(w, v) + (1 + kappa) <w - z, v - w> >= 0,
///   z = u_n - gamma_n / (1 + kappa) (u_n - u_{n-1}),
/// through the fixed-point iteration w <- P(z - lambda / (1 + kappa) grad_v F(w, w)).
/// Throws SubproblemFailed when successive iterates do not settle within
/// cfg.inner_tol after cfg.max_inner sweeps. With cfg.verify the result is
/// also audited by subproblem_violation.
Point solve_subproblem(const SubproblemSpec& spec, const SolverConfig& cfg);

/// Largest violation max(0, -LHS) of the full subproblem inequality at w over
/// n_samples sampled v.
double subproblem_violation(const SubproblemSpec& spec, const Point& w, std::size_t n_samples,
                            std::uint64_t seed);

Trace inertial_proximal_solve(const Problem& p, const SolverConfig& cfg, const Point& u0);

/// The inertial iteration with gamma_n = 0.
Trace proximal_solve(const Problem& p, const SolverConfig& cfg, const Point& u0);

/// u_{n+1} = P(u_n - lambda grad_v F(u_n, u_n)); for a VI this is the
/// projected-gradient step.
Trace explicit_solve(const Problem& p, const SolverConfig& cfg, const Point& u0);

struct FejerReport {
  bool passed = true;
  /// min over n of rhs + slack - lhs.
  double worst_margin = kInfinity;
  std::size_t worst_index = 0;
  std::size_t pairs = 0;
};

/// Checks, for each consecutive pair of iterates,
///   |u_{n+1} - u*|^2 <= (1 + eps)^2 |u_n - u*|^2 - |u_{n+1} - (1 + eps) u_n + eps u*|^2
/// up to slack 1e-8 (1 + |u_n - u*|^2).
FejerReport fejer_check(const Trace& trace, const Point& u_star, double epsilon);

}  // namespace urep
