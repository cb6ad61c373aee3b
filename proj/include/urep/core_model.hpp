#pragma once

#include "urep/geometry.hpp"
#include "urep/minimize.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace urep {

using Operator = std::function<Point(const Point&)>;
using JacobianFn = std::function<Matrix(const Point&)>;

/// A bifunction F(u, v) with optional partial gradients.
struct Bifunction {
  std::function<double(const Point&, const Point&)> eval;
  std::function<Point(const Point&, const Point&)> grad_u;
  std::function<Point(const Point&, const Point&)> grad_v;
  /// Set when F(u, v) = <T(u), v - u>.
  Operator vi_operator;
  bool diagonal_zero = false;

  double operator()(const Point& u, const Point& v) const { return eval(u, v); }
  bool has_grad_u() const { return static_cast<bool>(grad_u); }
  bool has_grad_v() const { return static_cast<bool>(grad_v); }
  bool is_vi() const { return static_cast<bool>(vi_operator); }
};

/// F(u, v) = <T(u), v - u>. With a Jacobian J of T the first partial gradient is
/// J(u)^T (v - u) - T(u); the second is T(u).
Bifunction make_vi_bifunction(Operator T, JacobianFn jacobian = {});

/// VI bifunction of the affine operator T(u) = A u + b.
Bifunction affine_vi_bifunction(Matrix A, Point b);

/// F(u, v) = <P u + Q v + q, v - u> with Q symmetric positive semidefinite,
/// convex in v and vanishing on the diagonal.
Bifunction quadratic_bifunction(Matrix P, Matrix Q, Point q);

/// F identically zero on R^dim.
Bifunction zero_bifunction(Eigen::Index dim);

/// The regularized equilibrium problem: find u in the set with
/// F(u, v) + kappa |v - u|^2 >= 0 for every v in the set, kappa = k / (2 r).
/// r = +inf recovers the plain equilibrium problem.
class Problem {
 public:
  Problem(Bifunction f, ConstraintSet set, double k, double r);

  const Bifunction& f() const { return f_; }
  const ConstraintSet& set() const { return set_; }
  double k() const { return k_; }
  double r() const { return r_; }
  double kappa() const { return kappa_; }
  Eigen::Index dim() const { return set_.dim(); }

  /// F(u, v) + kappa |v - u|^2.
  double regularized(const Point& u, const Point& v) const {
    return f_.eval(u, v) + kappa_ * (v - u).squaredNorm();
  }

 private:
  Bifunction f_;
  ConstraintSet set_;
  double k_;
  double r_;
  double kappa_;
};

using GammaSchedule = std::function<double(std::size_t)>;

inline GammaSchedule constant_gamma(double gamma) {
  return [gamma](std::size_t) { return gamma; };
}

struct SolverConfig {
  double lambda = 0.5;
  GammaSchedule gamma_schedule = constant_gamma(0.2);
  /// Gap regularization; a nonpositive value means "use k / r".
  double alpha = 0.0;
  double outer_tol = 1e-8;
  double inner_tol = 1e-12;
  std::size_t max_outer = 500;
  std::size_t max_inner = 10000;
  double line_search_tol = 1e-10;
  std::uint64_t seed = 0;
  /// Number of starts for residual evaluation (the point itself plus samples).
  std::size_t residual_budget = 9;
  /// Audit each subproblem solution against sampled v.
  bool verify = false;

  InnerOptions inner() const { return {inner_tol, max_inner}; }

  /// Throws InvalidArgument naming the first violated field.
  void validate() const;
};

/// 0.5 / (1 + L) where L is a difference-quotient estimate of the Lipschitz
/// constant of x -> grad_v F(x, x) over sampled pairs of the set.
double default_lambda(const Problem& p, std::size_t n_pairs = 100, std::uint64_t seed = 0);

enum class Status { Converged, MaxIterations, SubproblemFailed };

std::string_view to_string(Status s);

struct TraceRecord {
  std::size_t iter = 0;
  Point iterate;
  double step_norm = 0.0;
  double residual = 0.0;
  std::optional<double> gap;
  std::optional<double> line_search_t;
};

struct Trace {
  std::vector<TraceRecord> records;
  Status status = Status::MaxIterations;
  std::string message;

  std::size_t iterations() const { return records.empty() ? 0 : records.size() - 1; }
  const Point& final_point() const { return records.back().iterate; }
};

/// max(0, -m) with m the minimum over the set of F(u, v) + kappa |v - u|^2,
/// found by projected gradient from u and minimizer_budget - 1 seeded samples.
/// Zero certifies u as a solution.
double problem_residual(const Problem& p, const Point& u, std::size_t minimizer_budget,
                        const InnerOptions& inner = {}, std::uint64_t seed = 0);

}  // namespace urep
