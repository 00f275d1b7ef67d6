#pragma once

#include <Eigen/Dense>
#include <utility>

#include "sgb/errors.hpp"
#include "sgb/types.hpp"

// Interpolation sample sets: n_u+1 points in R^{n_u} with a designated
// reference, the cached displacement matrix U = [u_j - u_ref], its conditioning
// data, and scaling helpers. Sets are immutable once built.

namespace sgb {

template <typename Scalar>
class SampleSet {
 public:
  /// Builds the set and verifies poisedness (smallest singular value of U
  /// above 1e-12 of the largest). Points are stored one per column.
  template <typename Derived>
  SampleSet(const Eigen::MatrixBase<Derived>& points, Index ref_index)
      : SampleSet(Matrix<Scalar>(points), ref_index) {}

  SampleSet(Matrix<Scalar> points, Index ref_index) : points_(std::move(points)), ref_(ref_index) {
    const Index n = points_.rows();
    if (n < 1 || points_.cols() != n + 1) {
      throw DimensionMismatch("sample set needs n_u+1 points of dimension n_u >= 1");
    }
    if (ref_ < 0 || ref_ >= points_.cols()) {
      throw DimensionMismatch("reference index out of range");
    }

    displacement_.resize(n, n);
    Index col = 0;
    for (Index j = 0; j < points_.cols(); ++j) {
      if (j == ref_) continue;
      displacement_.col(col++) = points_.col(j) - points_.col(ref_);
    }
    delta_ = displacement_.colwise().norm().maxCoeff();

    Eigen::JacobiSVD<Matrix<Scalar>> svd(displacement_);
    sigma_max_ = svd.singularValues()(0);
    sigma_min_ = svd.singularValues()(n - 1);
    if (!(sigma_min_ > Scalar(1e-12) * sigma_max_)) {
      throw UnpoisedSet(static_cast<double>(sigma_min_), static_cast<double>(sigma_max_));
    }
    lu_.compute(displacement_);
  }

  Index dimension() const { return points_.rows(); }
  Index ref_index() const { return ref_; }
  const Matrix<Scalar>& points() const { return points_; }
  Vector<Scalar> point(Index j) const { return points_.col(j); }
  Vector<Scalar> ref_point() const { return points_.col(ref_); }

  /// Displacement matrix U; column order follows the point order with the
  /// reference skipped.
  const Matrix<Scalar>& displacement() const { return displacement_; }

  /// Delta = max_j ||u_j - u_ref||.
  Scalar delta() const { return delta_; }

  /// Spectral norm of U^{-1}.
  Scalar inv_norm() const { return Scalar(1) / sigma_min_; }

  /// Spectral norm of (U/Delta)^{-1}, i.e. Delta * ||U^{-1}||.
  Scalar scaled_inv_norm() const { return delta_ / sigma_min_; }

  Scalar sigma_min() const { return sigma_min_; }
  Scalar sigma_max() const { return sigma_max_; }

  /// Partial-pivot LU of U, shared by the linear solves downstream.
  const Eigen::PartialPivLU<Matrix<Scalar>>& lu() const { return lu_; }

  /// Differences value_j - value_ref in displacement-column order.
  Vector<Scalar> value_differences(const Vector<Scalar>& values) const {
    if (values.size() != points_.cols()) {
      throw DimensionMismatch("values must align with the sample points");
    }
    Vector<Scalar> y(points_.rows());
    Index row = 0;
    for (Index j = 0; j < points_.cols(); ++j) {
      if (j == ref_) continue;
      y(row++) = values(j) - values(ref_);
    }
    return y;
  }

 private:
  Matrix<Scalar> points_;
  Index ref_;
  Matrix<Scalar> displacement_;
  Scalar delta_;
  Scalar sigma_min_;
  Scalar sigma_max_;
  Eigen::PartialPivLU<Matrix<Scalar>> lu_;
};

template <typename Derived>
SampleSet<typename Derived::Scalar> build_sample_set(const Eigen::MatrixBase<Derived>& points,
                                                     Index ref_index) {
  return SampleSet<typename Derived::Scalar>(points, ref_index);
}

/// Forward-finite-difference arrangement: {origin, origin + h e_1, ..., origin + h e_n}
/// with the origin as reference.
template <typename Derived>
SampleSet<typename Derived::Scalar> ffd_set(const Eigen::MatrixBase<Derived>& origin_in,
                                            typename Derived::Scalar h) {
  using Scalar = typename Derived::Scalar;
  if (!(h > Scalar(0))) throw NonpositiveStep("FFD step must be positive");
  const Vector<Scalar> origin = origin_in;
  const Index n = origin.size();
  Matrix<Scalar> points(n, n + 1);
  points.col(0) = origin;
  for (Index j = 0; j < n; ++j) {
    points.col(j + 1) = origin;
    points(j, j + 1) += h;
  }
  return SampleSet<Scalar>(std::move(points), 0);
}

/// Same point set viewed from another reference.
template <typename Scalar>
SampleSet<Scalar> rebase(const SampleSet<Scalar>& set, Index new_ref) {
  return SampleSet<Scalar>(set.points(), new_ref);
}

/// Componentwise box scaling of raw inputs onto [0, 1].
template <typename Scalar>
struct ScalingSpec {
  Vector<Scalar> lower;
  Vector<Scalar> upper;
};

template <typename Derived>
Vector<typename Derived::Scalar> scale_point(const ScalingSpec<typename Derived::Scalar>& spec,
                                             const Eigen::MatrixBase<Derived>& raw_in) {
  using Scalar = typename Derived::Scalar;
  const Vector<Scalar> raw = raw_in;
  if (spec.lower.size() != spec.upper.size() || raw.size() != spec.lower.size()) {
    throw DimensionMismatch("scaling spec and point dimensions disagree");
  }
  if (!((spec.upper.array() - spec.lower.array()) > Scalar(0)).all()) {
    throw DegenerateRange("scaling range must have upper > lower componentwise");
  }
  return (raw - spec.lower).cwiseQuotient(spec.upper - spec.lower);
}

}  // namespace sgb
