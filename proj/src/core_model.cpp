#include "urep/core_model.hpp"

#include "urep/errors.hpp"

#include <cmath>
#include <sstream>

namespace urep {

Bifunction make_vi_bifunction(Operator T, JacobianFn jacobian) {
  Bifunction f;
  f.eval = [T](const Point& u, const Point& v) { return T(u).dot(v - u); };
  f.grad_v = [T](const Point& u, const Point&) { return T(u); };
  if (jacobian) {
    f.grad_u = [T, jacobian](const Point& u, const Point& v) -> Point {
      return jacobian(u).transpose() * (v - u) - T(u);
    };
  }
  f.vi_operator = std::move(T);
  f.diagonal_zero = true;
  return f;
}

Bifunction affine_vi_bifunction(Matrix A, Point b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) {
    throw DimensionMismatch("affine_vi_bifunction: A must be square and match b");
  }
  Operator T = [A, b](const Point& u) -> Point { return A * u + b; };
  JacobianFn J = [A](const Point&) { return A; };
  return make_vi_bifunction(std::move(T), std::move(J));
}

Bifunction quadratic_bifunction(Matrix P, Matrix Q, Point q) {
  const auto n = q.size();
  if (P.rows() != n || P.cols() != n || Q.rows() != n || Q.cols() != n) {
    throw DimensionMismatch("quadratic_bifunction: P and Q must be square and match q");
  }
  Bifunction f;
  f.eval = [P, Q, q](const Point& u, const Point& v) { return (P * u + Q * v + q).dot(v - u); };
  f.grad_v = [P, Q, q](const Point& u, const Point& v) -> Point {
    return P * u + Q * v + q + Q.transpose() * (v - u);
  };
  f.grad_u = [P, Q, q](const Point& u, const Point& v) -> Point {
    return P.transpose() * (v - u) - (P * u + Q * v + q);
  };
  f.diagonal_zero = true;
  return f;
}

Bifunction zero_bifunction(Eigen::Index dim) {
  Bifunction f;
  f.eval = [](const Point&, const Point&) { return 0.0; };
  f.grad_u = [dim](const Point&, const Point&) -> Point { return Point::Zero(dim); };
  f.grad_v = f.grad_u;
  f.diagonal_zero = true;
  return f;
}

Problem::Problem(Bifunction f, ConstraintSet set, double k, double r)
    : f_(std::move(f)), set_(std::move(set)), k_(k), r_(r) {
  if (!f_.eval) throw InvalidArgument("problem: bifunction has no evaluator");
  if (!(k_ > 0.0) || !std::isfinite(k_)) throw InvalidArgument("problem: k must be positive");
  if (!(r_ > 0.0)) throw InvalidArgument("problem: r must be positive");
  if (r_ > set_.prox_constant()) {
    std::ostringstream os;
    os << "problem: r = " << r_ << " exceeds the prox-regularity constant " << set_.prox_constant()
       << " of the set";
    throw InvalidArgument(os.str());
  }
  kappa_ = std::isinf(r_) ? 0.0 : k_ / (2.0 * r_);
}

void SolverConfig::validate() const {
  auto fail = [](const char* field, const char* why) {
    throw InvalidArgument(std::string("solver config: ") + field + " " + why);
  };
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda", "must be positive");
  if (!gamma_schedule) fail("gamma_schedule", "is not set");
  const double g0 = gamma_schedule(0);
  if (!(g0 >= 0.0 && g0 < 1.0)) fail("gamma_schedule", "values must lie in [0, 1)");
  if (!(outer_tol > 0.0)) fail("outer_tol", "must be positive");
  if (!(inner_tol > 0.0)) fail("inner_tol", "must be positive");
  if (!(line_search_tol > 0.0)) fail("line_search_tol", "must be positive");
  if (max_outer == 0) fail("max_outer", "must be positive");
  if (max_inner == 0) fail("max_inner", "must be positive");
  if (residual_budget == 0) fail("residual_budget", "must be positive");
}

double default_lambda(const Problem& p, std::size_t n_pairs, std::uint64_t seed) {
  const Bifunction& f = p.f();
  if (!f.has_grad_v()) throw MissingGradient("default_lambda: bifunction has no grad_v");
  const auto pts = p.set().sample(2 * n_pairs, seed);
  double lipschitz = 0.0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const Point& x = pts[2 * i];
    const Point& y = pts[2 * i + 1];
    const double dist = (x - y).norm();
    if (dist == 0.0) continue;
    lipschitz = std::max(lipschitz, (f.grad_v(x, x) - f.grad_v(y, y)).norm() / dist);
  }
  return 0.5 / (1.0 + lipschitz);
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Converged:
      return "Converged";
    case Status::MaxIterations:
      return "MaxIterations";
    case Status::SubproblemFailed:
      return "SubproblemFailed";
  }
  return "Unknown";
}

double problem_residual(const Problem& p, const Point& u, std::size_t minimizer_budget,
                        const InnerOptions& inner, std::uint64_t seed) {
  if (u.size() != p.dim()) throw DimensionMismatch("problem_residual: dimension mismatch");
  if (!p.set().contains(u)) throw PointNotInSet("problem_residual: u is not in the set");
  const Bifunction& f = p.f();
  if (!f.has_grad_v()) throw MissingGradient("problem_residual: bifunction has no grad_v");

  const double kappa = p.kappa();
  SmoothObjective objective{
      [&](const Point& v) { return f.eval(u, v) + kappa * (v - u).squaredNorm(); },
      [&](const Point& v) -> Point { return f.grad_v(u, v) + 2.0 * kappa * (v - u); }};

  std::vector<Point> starts{u};
  if (minimizer_budget > 1) {
    auto extra = p.set().sample(minimizer_budget - 1, seed);
    starts.insert(starts.end(), extra.begin(), extra.end());
  }
  const InnerResult best = multistart_minimize(objective, p.set(), starts, inner);
  return std::max(0.0, -best.value);
}

}  // namespace urep
