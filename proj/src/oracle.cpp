#include "urep/oracle.hpp"

#include "urep/errors.hpp"

#include <cmath>
#include <algorithm>
#include <deque>
#include <numeric>
#include <thread>
#include <sstream>

namespace urep::oracle {

namespace {

constexpr std::size_t kBoundSubset = 128;

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<Point> grid_candidates(const ConstraintSet& set, const GridSpec& gs, double& spacing) {
  const auto dim = set.dim();
  const AxisBox& box = set.bounding_box();
  const std::size_t n = gs.resolution;

  std::size_t total = 1;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (total > GridSpec::kMaxGridPoints / n)
      throw GridTooLarge("grid_solve: grid exceeds 1e7 points");
    total *= n;
  }

  const Point step = (box.upper - box.lower) / static_cast<double>(n - 1);
  spacing = step.maxCoeff();

  std::vector<Point> out;
  std::vector<std::size_t> index(static_cast<std::size_t>(dim), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    Point x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      x[i] = box.lower[i] + step[i] * static_cast<double>(rest % n);
      rest /= n;
    }
    const Projection proj = set.project(x);
    const double tol = gs.membership_tol.value_or(spacing);
    if ((x - proj.point).norm() <= tol) out.push_back(proj.point);
  }
  return out;
}

double sampled_lipschitz(const Problem& p) {
  constexpr std::size_t kPairs = 1000;
  const auto dim = p.dim();
  const auto pts = p.set().sample(2 * kPairs, 0x5eed);
  auto joint = [&](const Point& uv) {
    const Point u = uv.head(dim);
    const Point v = uv.tail(dim);
    return p.f().eval(u, v) + p.kappa() * (v - u).squaredNorm();
  };
  double best = 0.0;
  for (std::size_t i = 0; i < kPairs; ++i) {
    Point uv(2 * dim);
    uv << pts[2 * i], pts[2 * i + 1];
    best = std::max(best, finite_diff_gradient(joint, uv, 1e-6 * (1.0 + uv.norm())).norm());
  }
  return 2.0 * best;
}

}  // namespace

OracleResult grid_solve(const Problem& p, const GridSpec& gs) {
  if (p.dim() > 3) throw GridTooLarge("grid_solve: only dimensions up to 3 are supported");
  if (gs.resolution < 2) throw InvalidArgument("grid_solve: resolution must be at least 2");

  OracleResult result;
  const std::vector<Point> pts = grid_candidates(p.set(), gs, result.spacing);
  if (pts.empty()) throw EmptyGrid("grid_solve: no grid point lies in the set");
  const std::size_t count = pts.size();
  result.candidates = count;

  auto inner = [&](std::size_t i, std::size_t j) {
    return p.f().eval(pts[i], pts[j]) + p.kappa() * (pts[j] - pts[i]).squaredNorm();
  };

  // Upper bounds on m(u) from a strided subset of v, used to visit the most
  // promising u first and to stop once no remaining u can beat the best.
  const std::size_t stride = std::max<std::size_t>(1, count / kBoundSubset);
  std::vector<double> upper(count, kInfinity);
  parallel_for(count, [&](std::size_t i) {
    double ub = inner(i, i);
    for (std::size_t j = 0; j < count; j += stride) ub = std::min(ub, inner(i, j));
    upper[i] = ub;
  });
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return upper[a] > upper[b]; });

  constexpr std::size_t kKillers = 8;
  std::deque<std::size_t> killers;
  auto remember = [&](std::size_t j) {
    if (std::find(killers.begin(), killers.end(), j) != killers.end()) return;
    killers.push_front(j);
    if (killers.size() > kKillers) killers.pop_back();
  };

  double best = -kInfinity;
  std::size_t best_index = 0;
  for (std::size_t i : order) {
    if (upper[i] < best) break;
    bool pruned = false;
    for (std::size_t k : killers) {
      if (inner(i, k) < best) {
        pruned = true;
        break;
      }
    }
    if (pruned) continue;

    double m = kInfinity;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < count; ++j) {
      const double value = inner(i, j);
      if (value < m) {
        m = value;
        arg = j;
        if (m < best) break;
      }
    }
    remember(arg);
    if (m > best || (m == best && i < best_index)) {
      best = m;
      best_index = i;
    }
  }

  result.best_point = pts[best_index];
  result.best_value = best;
  result.lipschitz = sampled_lipschitz(p);
  result.tolerance = result.lipschitz * result.spacing;
  result.certified = best >= -result.tolerance;
  return result;
}

PseudomonotoneReport check_pseudomonotone(const Bifunction& f, const ConstraintSet& s, double kappa,
                                          std::size_t n_pairs, std::uint64_t seed) {
  if (n_pairs == 0) throw InvalidArgument("check_pseudomonotone: n_pairs must be positive");
  const auto pts = s.sample(2 * n_pairs, seed);
  PseudomonotoneReport report;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const Point& u = pts[2 * i];
    const Point& v = pts[2 * i + 1];
    const double quad = kappa * (v - u).squaredNorm();
    const double premise = f.eval(u, v) + quad;
    if (premise < 0.0) continue;
    ++report.premises_held;
    const double conclusion = f.eval(v, u) + quad;
    if (conclusion > 1e-10) report.counterexamples.push_back({u, v, premise, conclusion});
  }
  report.pairs = n_pairs;
  report.passed = report.counterexamples.empty();
  return report;
}

Point finite_diff_gradient(const std::function<double(const Point&)>& fn, const Point& u,
                           double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite_diff_gradient: h must be positive");
  Point grad(u.size());
  Point x = u;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    x[i] = u[i] + h;
    const double up = fn(x);
    x[i] = u[i] - h;
    const double down = fn(x);
    x[i] = u[i];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      std::ostringstream os;
      os << "finite_diff_gradient: non-finite value along coordinate " << i;
      throw NonFiniteValue(os.str());
    }
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace urep::oracle
