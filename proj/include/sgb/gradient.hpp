#pragma once

#include <Eigen/Dense>

#include "sgb/errors.hpp"
#include "sgb/sample_set.hpp"
#include "sgb/types.hpp"

// Simplex gradient, the linear interpolation model, and the quadratic model
// with prescribed Hessian used by the DFO loop.

namespace sgb {

/// Gradient of the unique linear interpolant of the values over the set:
/// g = U^{-T} y. Independent of the reference choice.
template <typename Scalar, typename Derived>
Vector<Scalar> simplex_gradient(const SampleSet<Scalar>& set,
                                const Eigen::MatrixBase<Derived>& values) {
  return set.lu().transpose().solve(set.value_differences(Vector<Scalar>(values)));
}

/// m(u) = intercept + gradient . u
template <typename Scalar>
struct LinearModel {
  Scalar intercept;
  Vector<Scalar> gradient;

  Scalar operator()(const Vector<Scalar>& u) const { return intercept + gradient.dot(u); }
};

template <typename Scalar, typename Derived>
LinearModel<Scalar> linear_model(const SampleSet<Scalar>& set,
                                 const Eigen::MatrixBase<Derived>& values_in) {
  const Vector<Scalar> values = values_in;
  Vector<Scalar> g = simplex_gradient(set, values);
  const Scalar c = values(set.ref_index()) - g.dot(set.ref_point());
  return LinearModel<Scalar>{c, std::move(g)};
}

/// Quadratic interpolant with prescribed Hessian H:
///   m(u) = 1/2 (u-u0)' H (u-u0) + base_value + lambda . (u-u0),
/// where lambda absorbs the data so that m matches the values at all points.
template <typename Scalar>
struct QuadModel {
  Vector<Scalar> base_point;
  Scalar base_value;
  Matrix<Scalar> hessian;
  Vector<Scalar> lambda;

  Scalar operator()(const Vector<Scalar>& u) const {
    const Vector<Scalar> d = u - base_point;
    return Scalar(0.5) * d.dot(hessian * d) + base_value + lambda.dot(d);
  }

  Vector<Scalar> gradient_at(const Vector<Scalar>& u) const {
    return hessian * (u - base_point) + lambda;
  }
};

template <typename Scalar, typename DerivedV, typename DerivedH>
QuadModel<Scalar> quadratic_model(const SampleSet<Scalar>& set,
                                  const Eigen::MatrixBase<DerivedV>& values_in,
                                  const Eigen::MatrixBase<DerivedH>& hessian_in) {
  const Vector<Scalar> values = values_in;
  const Matrix<Scalar> hessian = hessian_in;
  const Index n = set.dimension();
  if (hessian.rows() != n || hessian.cols() != n) {
    throw DimensionMismatch("hessian dimension mismatch");
  }
  if ((hessian - hessian.transpose()).norm() > Scalar(1e-10)) {
    throw AsymmetricHessian("prescribed hessian must be symmetric");
  }

  const Vector<Scalar> y = set.value_differences(values);
  Vector<Scalar> yq(n);
  for (Index j = 0; j < n; ++j) {
    const auto d = set.displacement().col(j);
    yq(j) = Scalar(0.5) * d.dot(hessian * d);
  }
  Vector<Scalar> lambda = set.lu().transpose().solve((y - yq).eval());
  return QuadModel<Scalar>{set.ref_point(), values(set.ref_index()), hessian, std::move(lambda)};
}

/// Gradient-estimate error with an optional truncation/noise split (the split
/// is only available when the noiseless gradient is known, e.g. in tests).
template <typename Scalar>
struct GradientError {
  Vector<Scalar> total;
  Vector<Scalar> truncation;  // empty when unknown
  Vector<Scalar> noise;       // empty when unknown
};

template <typename Scalar>
GradientError<Scalar> gradient_error(const Vector<Scalar>& estimate,
                                     const Vector<Scalar>& true_gradient) {
  if (estimate.size() != true_gradient.size()) {
    throw DimensionMismatch("gradient dimensions disagree");
  }
  return GradientError<Scalar>{estimate - true_gradient, {}, {}};
}

template <typename Scalar>
GradientError<Scalar> gradient_error(const Vector<Scalar>& estimate,
                                     const Vector<Scalar>& true_gradient,
                                     const Vector<Scalar>& noiseless_estimate) {
  if (estimate.size() != true_gradient.size() || estimate.size() != noiseless_estimate.size()) {
    throw DimensionMismatch("gradient dimensions disagree");
  }
  return GradientError<Scalar>{estimate - true_gradient, noiseless_estimate - true_gradient,
                               estimate - noiseless_estimate};
}

}  // namespace sgb
