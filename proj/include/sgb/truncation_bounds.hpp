#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "sgb/geometry.hpp"
#include "sgb/sample_set.hpp"
#include "sgb/types.hpp"

// Truncation-error bounds for the simplex gradient: the delta bound and its
// uniform/pointwise variants, the radial bound, the square column bound,
// minimum-vertex sweeps, the extended radial bound, and the simplex bound.
// All take the gradient Lipschitz constant L as input.

namespace sgb {

/// Relative off-diagonal mass of U'U below which the columns count as
/// orthogonal (and the radial bound is a certified, not approximate, bound).
inline constexpr double k_orthogonal_rel_tol = 1e-8;

/// Delta bound: ||U^{-1}|| sqrt(n_u) (L/2) Delta^2.
template <typename Scalar>
Scalar delta_bound(const SampleSet<Scalar>& set, Scalar lipschitz) {
  const Scalar n = static_cast<Scalar>(set.dimension());
  return set.inv_norm() * std::sqrt(n) * (lipschitz / 2) * set.delta() * set.delta();
}

/// Uniform variant, valid on the whole ball B(u_ref, Delta): T_d + L Delta.
template <typename Scalar>
Scalar delta_bound_uniform(const SampleSet<Scalar>& set, Scalar lipschitz) {
  return delta_bound(set, lipschitz) + lipschitz * set.delta();
}

/// Pointwise variant at u: T_d + L ||u - u_ref||.
template <typename Scalar, typename Derived>
Scalar delta_bound_pointwise(const SampleSet<Scalar>& set, Scalar lipschitz,
                             const Eigen::MatrixBase<Derived>& u) {
  return delta_bound(set, lipschitz) + lipschitz * (Vector<Scalar>(u) - set.ref_point()).norm();
}

/// True when U'U is diagonal up to a 1e-8 relative off-diagonal mass.
template <typename Scalar>
bool has_orthogonal_columns(const SampleSet<Scalar>& set) {
  Matrix<Scalar> gram = set.displacement().transpose() * set.displacement();
  const Scalar diag_norm = gram.diagonal().norm();
  Matrix<Scalar> off = gram;
  off.diagonal().setZero();
  return off.norm() <= Scalar(k_orthogonal_rel_tol) * diag_norm;
}

/// Radial bound: L times the circumradius of the sample set. A certified
/// bound on the gradient error norm when the columns of U are orthogonal;
/// otherwise an approximate bound that still certifies the error projections
/// along the columns of U. Takes the same value at every vertex.
template <typename Scalar>
Scalar radial_bound(const SampleSet<Scalar>& set, Scalar lipschitz) {
  return lipschitz * circumsphere(set.points()).radius;
}

/// Square column bound: (L/2) || [ ||u_j-u_ref||^2 ]_j || ||U^{-1}||.
/// Never exceeds the delta bound.
template <typename Scalar>
Scalar square_column_bound(const SampleSet<Scalar>& set, Scalar lipschitz) {
  const Scalar col_norm = set.displacement().colwise().squaredNorm().matrix().norm();
  return (lipschitz / 2) * col_norm * set.inv_norm();
}

template <typename Scalar>
struct MinVertexBounds {
  Scalar t_radial;  // constant across vertices; kept for the report layout
  Scalar t_column;
};

/// Smallest radial and square-column bounds over all reference choices.
template <typename Scalar>
MinVertexBounds<Scalar> min_vertex_bounds(const SampleSet<Scalar>& set, Scalar lipschitz) {
  MinVertexBounds<Scalar> out;
  out.t_radial = std::numeric_limits<Scalar>::infinity();
  out.t_column = std::numeric_limits<Scalar>::infinity();
  for (Index j = 0; j < set.points().cols(); ++j) {
    const SampleSet<Scalar> view = rebase(set, j);
    out.t_radial = std::min(out.t_radial, radial_bound(view, lipschitz));
    out.t_column = std::min(out.t_column, square_column_bound(view, lipschitz));
  }
  return out;
}

/// Extended radial bound at an arbitrary point: L ||center - u|| where center
/// is the circumcenter. Equals the radial bound at every vertex and vanishes
/// at the circumcenter. Approximate between vertices, not a certified bound.
template <typename Scalar, typename Derived>
Scalar extended_radial_bound(const SampleSet<Scalar>& set, Scalar lipschitz,
                             const Eigen::MatrixBase<Derived>& u) {
  return lipschitz * (circumsphere(set.points()).center - Vector<Scalar>(u)).norm();
}

template <typename Scalar>
struct SimplexBound {
  Scalar value;            // minimum of the extended radial bound over the hull
  Vector<Scalar> witness;  // hull point attaining it (projection of the circumcenter)
};

/// Simplex bound: minimum of the extended radial bound over the convex hull of
/// the sample points; zero exactly when the circumcenter lies inside the hull.
template <typename Scalar>
SimplexBound<Scalar> simplex_bound(const SampleSet<Scalar>& set, Scalar lipschitz) {
  const Circumsphere<Scalar> sphere = circumsphere(set.points());
  HullProjection<Scalar> proj = nearest_point_in_hull(sphere.center, set.points());
  return SimplexBound<Scalar>{lipschitz * (sphere.center - proj.point).norm(),
                              std::move(proj.point)};
}

/// All truncation bounds of one sample set at its current reference.
template <typename Scalar>
struct TruncationReport {
  Scalar t_delta;
  Scalar t_column;
  Scalar t_radial;
  Scalar t_min_vertex_radial;
  Scalar t_min_vertex_column;
  Scalar t_simplex;
  Scalar lipschitz;
  bool orthogonal_columns;  // whether t_radial is certified here
};

template <typename Scalar>
TruncationReport<Scalar> truncation_report(const SampleSet<Scalar>& set, Scalar lipschitz) {
  const auto mv = min_vertex_bounds(set, lipschitz);
  return TruncationReport<Scalar>{delta_bound(set, lipschitz),
                                  square_column_bound(set, lipschitz),
                                  radial_bound(set, lipschitz),
                                  mv.t_radial,
                                  mv.t_column,
                                  simplex_bound(set, lipschitz).value,
                                  lipschitz,
                                  has_orthogonal_columns(set)};
}

}  // namespace sgb
