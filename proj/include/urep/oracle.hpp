#pragma once

#include "urep/core_model.hpp"

#include <functional>
#include <optional>

namespace urep::oracle {

struct GridSpec {
  /// Points per axis, at least 2.
  std::size_t resolution = 100;
  /// Grid points within this distance of the set are snapped onto it by
  /// projection; unset means one grid spacing. Snapping puts candidates on
  /// curved boundaries and makes surfaces such as spheres reachable at all.
  std::optional<double> membership_tol;
  /// Hard cap on resolution^dim.
  static constexpr std::size_t kMaxGridPoints = 10'000'000;
};

struct OracleResult {
  Point best_point;
  /// max over grid u of min over grid v of F(u, v) + kappa |v - u|^2.
  double best_value = 0.0;
  bool certified = false;
  double tolerance = 0.0;
  /// Largest per-axis grid spacing.
  double spacing = 0.0;
  double lipschitz = 0.0;
  std::size_t candidates = 0;
};

/// Exhaustive max-min over the grid of the set's bounding box. Candidates u are
/// visited in decreasing order of an upper bound on m(u); the inner minimum
/// stops as soon as it drops below the best exact value found so far, and the
/// sweep ends once no remaining bound can beat it. Neither shortcut can
/// change the argmax, ties going to the lowest candidate index. Certified iff
/// best_value >= -C h with C twice the largest sampled gradient norm of
/// (u, v) -> F(u, v) + kappa |v - u|^2 and h the grid spacing.
OracleResult grid_solve(const Problem& p, const GridSpec& gs);

struct PseudomonotoneCounterexample {
  Point u;
  Point v;
  double premise = 0.0;
  double conclusion = 0.0;
};

struct PseudomonotoneReport {
  bool passed = true;
  std::vector<PseudomonotoneCounterexample> counterexamples;
  std::size_t pairs = 0;
  std::size_t premises_held = 0;
};

/// For sampled pairs with F(u, v) + kappa |v - u|^2 >= 0, requires
/// F(v, u) + kappa |v - u|^2 <= 1e-10.
PseudomonotoneReport check_pseudomonotone(const Bifunction& f, const ConstraintSet& s, double kappa,
                                          std::size_t n_pairs, std::uint64_t seed);

/// Central differences (fn(u + h e_i) - fn(u - h e_i)) / 2h.
Point finite_diff_gradient(const std::function<double(const Point&)>& fn, const Point& u, double h);

}  // namespace urep::oracle
