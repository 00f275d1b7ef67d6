#pragma once

#include <Eigen/Dense>
#include <random>

#include "sgb/sample_set.hpp"

// Shared generators for the property tests. Everything is seeded by the
// caller, so the suites stay reproducible.

namespace sgb_test {

using sgb::Index;

inline Eigen::MatrixXd random_points(std::mt19937_64& rng, Index dim, Index count,
                                     double box = 1.0) {
  std::uniform_real_distribution<double> unif(-box, box);
  Eigen::MatrixXd points(dim, count);
  for (Index j = 0; j < count; ++j) {
    for (Index i = 0; i < dim; ++i) points(i, j) = unif(rng);
  }
  return points;
}

/// Uniform random poised set; redraws until the conditioning cap holds.
inline sgb::SampleSet<double> random_poised_set(std::mt19937_64& rng, Index dim,
                                                double inv_norm_cap = 1e6, double box = 1.0) {
  for (;;) {
    try {
      sgb::SampleSet<double> set(random_points(rng, dim, dim + 1, box), 0);
      if (set.inv_norm() <= inv_norm_cap) return set;
    } catch (const sgb::UnpoisedSet&) {
    }
  }
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd gauss(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) gauss(i, j) = normal(rng);
  }
  return Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();
}

/// Sample set whose displacement columns are orthogonal (random directions,
/// random lengths), so the radial bound is certified on it.
inline sgb::SampleSet<double> random_orthogonal_set(std::mt19937_64& rng, Index dim,
                                                    double min_len = 0.2, double max_len = 2.0) {
  std::uniform_real_distribution<double> len(min_len, max_len);
  const Eigen::MatrixXd q = random_orthogonal(rng, dim);
  Eigen::MatrixXd points(dim, dim + 1);
  points.col(0) = random_points(rng, dim, 1);
  for (Index j = 0; j < dim; ++j) points.col(j + 1) = points.col(0) + len(rng) * q.col(j);
  return sgb::SampleSet<double>(std::move(points), 0);
}

/// Quadratic with Hessian spectral radius at most `lipschitz`.
struct RandomQuadratic {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd linear;

  double value(const Eigen::VectorXd& u) const { return 0.5 * u.dot(hessian * u) + linear.dot(u); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const { return hessian * u + linear; }
};

inline RandomQuadratic random_quadratic(std::mt19937_64& rng, Index n, double lipschitz) {
  std::uniform_real_distribution<double> eig(-lipschitz, lipschitz);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::MatrixXd q = random_orthogonal(rng, n);
  Eigen::VectorXd lambda(n);
  for (Index i = 0; i < n; ++i) lambda(i) = eig(rng);
  RandomQuadratic quad;
  quad.hessian = q * lambda.asDiagonal() * q.transpose();
  quad.linear.resize(n);
  for (Index i = 0; i < n; ++i) quad.linear(i) = normal(rng);
  return quad;
}

}  // namespace sgb_test
