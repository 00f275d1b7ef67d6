#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sgb/errors.hpp"
#include "sgb/types.hpp"

// Affine/convex geometry primitives shared by the gradient-error bounds:
// hyperplanes, complement affine subspaces and their distances, circumscribed
// spheres, and nearest-point-in-convex-hull projection. Point sets are passed
// as matrices with one point per column; the functions accept any Eigen
// expression and deduce the scalar from it. All functions are pure.

namespace sgb {

/// Relative singular-value cutoff below which a direction counts as part of
/// the orthogonal complement.
inline constexpr double k_rank_rel_tol = 1e-10;

/// Relative singular-value ratio below which a point set counts as unpoised.
inline constexpr double k_poised_rel_tol = 1e-12;

template <typename Scalar>
struct Hyperplane {
  Vector<Scalar> normal;  // unit normal, sign fixed so the first nonzero component is positive
  Scalar offset;          // normal . x == offset for x on the plane

  Scalar signed_distance(const Vector<Scalar>& p) const { return normal.dot(p) - offset; }
};

/// Bipartition of the indices {0..n_u} of a sample set into two nonempty
/// subsets; each subset spans one of the two complement affine subspaces.
/// Canonical form: index 0 is always in subset_a, so each unordered pair is
/// produced exactly once.
struct ComplementPartition {
  std::vector<int> subset_a;
  std::vector<int> subset_c;
};

template <typename Scalar>
struct Circumsphere {
  Vector<Scalar> center;
  Scalar radius;  // distance from center to the first point, equal to all others
};

namespace detail {

// Smallest/largest singular value of the displacement matrix built from the
// first column; used for poisedness checks on raw point matrices.
template <typename Scalar>
void displacement_extremal_singular_values(const Matrix<Scalar>& points, Scalar& sigma_min,
                                           Scalar& sigma_max) {
  const Index m = points.cols();
  Matrix<Scalar> disp = points.rightCols(m - 1).colwise() - points.col(0);
  Eigen::JacobiSVD<Matrix<Scalar>> svd(disp);
  sigma_max = svd.singularValues()(0);
  sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
}

template <typename Scalar>
void require_poised_points(const Matrix<Scalar>& points) {
  if (points.cols() != points.rows() + 1) {
    throw DimensionMismatch("expected n_u+1 points of dimension n_u, got " +
                            std::to_string(points.cols()) + " points of dimension " +
                            std::to_string(points.rows()));
  }
  Scalar smin, smax;
  displacement_extremal_singular_values(points, smin, smax);
  if (!(smin > Scalar(k_poised_rel_tol) * smax)) {
    throw UnpoisedSet(static_cast<double>(smin), static_cast<double>(smax));
  }
}

// Distance between the two complement affine subspaces of a partition.
// Poisedness of the full point set is the caller's responsibility.
template <typename Scalar>
Scalar partition_distance_unchecked(const Matrix<Scalar>& points,
                                    const ComplementPartition& partition) {
  const Index n = points.rows();
  const auto& a = partition.subset_a;
  const auto& c = partition.subset_c;
  const Vector<Scalar> d = points.col(c[0]) - points.col(a[0]);

  const Index rows = static_cast<Index>(a.size() + c.size()) - 2;
  if (rows == 0) return d.norm();  // two points: plain point-to-point distance

  Matrix<Scalar> directions(rows, n);
  Index r = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    directions.row(r++) = (points.col(a[i]) - points.col(a[0])).transpose();
  }
  for (std::size_t i = 1; i < c.size(); ++i) {
    directions.row(r++) = (points.col(c[i]) - points.col(c[0])).transpose();
  }

  // A vector orthogonal to every row is the normal to both subspaces. Closed
  // forms for the common low-dimensional cases; SVD otherwise. If the rows are
  // rank-deficient the orthogonal complement has dimension > 1 and the
  // distance is the norm of the projection of d onto the whole complement.
  if (n == 2) {
    const Vector<Scalar> row = directions.row(0).transpose();
    const Scalar len = row.norm();
    if (len == Scalar(0)) return d.norm();
    return std::abs(-row(1) * d(0) + row(0) * d(1)) / len;
  }
  if (n == 3 && rows == 2) {
    const Eigen::Matrix<Scalar, 3, 1> r0 = directions.row(0).transpose();
    const Eigen::Matrix<Scalar, 3, 1> r1 = directions.row(1).transpose();
    const Eigen::Matrix<Scalar, 3, 1> normal = r0.cross(r1);
    const Scalar scale = r0.norm() * r1.norm();
    if (normal.norm() > Scalar(k_rank_rel_tol) * scale) {
      return std::abs(normal.dot(d.template head<3>())) / normal.norm();
    }
    // Parallel rows: the complement has dimension 2.
    const Scalar n0 = r0.norm(), n1 = r1.norm();
    if (n0 == Scalar(0) && n1 == Scalar(0)) return d.norm();
    const Eigen::Matrix<Scalar, 3, 1> q = (n0 >= n1 ? (r0 / n0).eval() : (r1 / n1).eval());
    return (d - q * q.dot(d.template head<3>())).norm();
  }

  Eigen::JacobiSVD<Matrix<Scalar>> svd(directions, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > Scalar(k_rank_rel_tol) * sv(0)) ++rank;
  }
  return (svd.matrixV().rightCols(n - rank).transpose() * d).norm();
}

template <typename Scalar>
Circumsphere<Scalar> circumsphere_impl(const Matrix<Scalar>& points) {
  require_poised_points(points);
  const Index n = points.rows();
  Matrix<Scalar> disp = points.rightCols(n).colwise() - points.col(0);
  Vector<Scalar> rhs = disp.colwise().squaredNorm().transpose() / Scalar(2);
  Vector<Scalar> offset = disp.transpose().partialPivLu().solve(rhs);
  Circumsphere<Scalar> sphere;
  sphere.center = points.col(0) + offset;
  sphere.radius = offset.norm();
  return sphere;
}

}  // namespace detail

/// Unique hyperplane through n_u points in R^{n_u}. The normal sign is fixed
/// so that its first nonzero component is positive.
template <typename Derived>
Hyperplane<typename Derived::Scalar> hyperplane_through(
    const Eigen::MatrixBase<Derived>& points_in) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> points = points_in;
  const Index n = points.rows();
  if (points.cols() != n || n < 1) {
    throw DimensionMismatch("hyperplane_through expects n_u points of dimension n_u");
  }

  Vector<Scalar> normal(n);
  if (n == 1) {
    normal(0) = Scalar(1);
  } else {
    Matrix<Scalar> directions = (points.rightCols(n - 1).colwise() - points.col(0)).transpose();
    Eigen::JacobiSVD<Matrix<Scalar>> svd(directions, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > Scalar(k_rank_rel_tol) * sv(0))) {
      throw DegenerateDirections("hyperplane directions are linearly dependent");
    }
    normal = svd.matrixV().col(n - 1);
  }

  for (Index i = 0; i < n; ++i) {
    if (std::abs(normal(i)) > Scalar(1e-12)) {
      if (normal(i) < Scalar(0)) normal = -normal;
      break;
    }
  }
  return Hyperplane<Scalar>{normal, normal.dot(points.col(0))};
}

/// All canonical bipartitions of {0..n_points-1} into two nonempty subsets.
/// There are 2^{n_points-1} - 1 of them; ordering is deterministic.
inline std::vector<ComplementPartition> enumerate_complement_partitions(int n_points) {
  if (n_points < 2) throw DimensionMismatch("need at least two points to partition");
  if (n_points > 21) throw DimensionTooLarge("partition enumeration capped at 21 points");
  const int n_u = n_points - 1;
  const std::uint64_t full = (std::uint64_t{1} << n_u) - 1;
  std::vector<ComplementPartition> out;
  out.reserve(full);
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    ComplementPartition p;
    p.subset_a.push_back(0);
    for (int i = 1; i < n_points; ++i) {
      if (mask & (std::uint64_t{1} << (i - 1))) {
        p.subset_a.push_back(i);
      } else {
        p.subset_c.push_back(i);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Orthogonal distance between the affine subspaces spanned by the two
/// subsets of a partition.
template <typename Derived>
typename Derived::Scalar partition_distance(const Eigen::MatrixBase<Derived>& points_in,
                                            const ComplementPartition& partition) {
  const Matrix<typename Derived::Scalar> points = points_in;
  detail::require_poised_points(points);
  return detail::partition_distance_unchecked(points, partition);
}

template <typename Scalar>
struct MinPartitionDistance {
  Scalar l_min;
  ComplementPartition argmin;
};

/// Shortest distance over all complement-subspace pairs of the point set.
/// Ties are broken by canonical enumeration order.
template <typename Derived>
MinPartitionDistance<typename Derived::Scalar> min_partition_distance(
    const Eigen::MatrixBase<Derived>& points_in) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> points = points_in;
  detail::require_poised_points(points);
  auto partitions = enumerate_complement_partitions(static_cast<int>(points.cols()));
  MinPartitionDistance<Scalar> best;
  best.l_min = std::numeric_limits<Scalar>::infinity();
  for (auto& p : partitions) {
    const Scalar l = detail::partition_distance_unchecked(points, p);
    if (l < best.l_min) {
      best.l_min = l;
      best.argmin = std::move(p);
    }
  }
  return best;
}

/// Sphere through all n_u+1 points. Solved from the first point in centered
/// coordinates: 2 (p_j - p_0) . (c - p_0) = |p_j - p_0|^2.
template <typename Derived>
Circumsphere<typename Derived::Scalar> circumsphere(const Eigen::MatrixBase<Derived>& points_in) {
  const Matrix<typename Derived::Scalar> points = points_in;
  return detail::circumsphere_impl(points);
}

template <typename Scalar>
struct HullProjection {
  Vector<Scalar> point;    // Euclidean projection of the target onto the hull
  Vector<Scalar> weights;  // convex weights: point = vertices * weights
};

/// Euclidean projection of a point onto the convex hull of the given vertices.
/// Solved exactly by enumerating vertex subsets: project onto each subset's
/// affine hull, keep candidates with nonnegative barycentric weights, return
/// the closest. Exhaustive but exact at simplicial sizes (<= n_u+1 vertices).
template <typename DerivedT, typename DerivedV>
HullProjection<typename DerivedV::Scalar> nearest_point_in_hull(
    const Eigen::MatrixBase<DerivedT>& target_in, const Eigen::MatrixBase<DerivedV>& vertices_in) {
  using Scalar = typename DerivedV::Scalar;
  const Vector<Scalar> target = target_in;
  const Matrix<Scalar> vertices = vertices_in;
  const Index n = vertices.rows();
  const Index m = vertices.cols();
  if (m < 1) throw DimensionMismatch("hull projection needs at least one vertex");
  if (target.size() != n) throw DimensionMismatch("hull projection: target dimension mismatch");
  if (m > 20) throw DimensionTooLarge("hull projection enumeration capped at 20 vertices");

  constexpr double weight_tol = -1e-12;
  Scalar best_dist2 = std::numeric_limits<Scalar>::infinity();
  Vector<Scalar> best_point(n);
  Vector<Scalar> best_weights = Vector<Scalar>::Zero(m);

  std::vector<int> subset;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    subset.clear();
    for (Index i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) subset.push_back(static_cast<int>(i));
    }
    const Index k = static_cast<Index>(subset.size());

    Vector<Scalar> point(n);
    Vector<Scalar> weights = Vector<Scalar>::Zero(m);
    if (k == 1) {
      point = vertices.col(subset[0]);
      weights(subset[0]) = Scalar(1);
    } else {
      Matrix<Scalar> basis(n, k - 1);
      for (Index i = 1; i < k; ++i) {
        basis.col(i - 1) = vertices.col(subset[i]) - vertices.col(subset[0]);
      }
      Vector<Scalar> coeffs =
          basis.completeOrthogonalDecomposition().solve(target - vertices.col(subset[0]));
      point = vertices.col(subset[0]) + basis * coeffs;
      weights(subset[0]) = Scalar(1) - coeffs.sum();
      for (Index i = 1; i < k; ++i) weights(subset[i]) = coeffs(i - 1);
      if ((weights.array() < Scalar(weight_tol)).any()) continue;
    }

    const Scalar dist2 = (target - point).squaredNorm();
    if (dist2 < best_dist2) {
      best_dist2 = dist2;
      best_point = point;
      best_weights = weights;
    }
  }

  // Clean up rounding: clamp negligible negatives and renormalize.
  best_weights = best_weights.cwiseMax(Scalar(0));
  best_weights /= best_weights.sum();
  return HullProjection<Scalar>{vertices * best_weights, best_weights};
}

}  // namespace sgb
