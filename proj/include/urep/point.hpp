#pragma once

#include <Eigen/Dense>

#include <initializer_list>

namespace urep {

/// A point of the ambient space R^n with the Euclidean inner product.
using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p[i++] = c;
  return p;
}

inline bool all_finite(const Point& p) {
  return p.allFinite();
}

/// Throws DimensionMismatch when the sizes differ.
void require_same_dim(const Point& a, const Point& b, const char* what);

/// Throws NonFiniteValue when any entry is NaN or infinite.
void require_finite(const Point& p, const char* what);

}  // namespace urep
