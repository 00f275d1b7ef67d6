#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "sgb/errors.hpp"
#include "sgb/types.hpp"

// Built-in objective functions used by the reproduction experiments and
// addressable by name from DFO run configurations. Gradients are exact and
// used only on the test/report side (the DFO loop never sees them).

namespace sgb {

struct Objective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  Index dimension;  // 0 = any dimension
};

/// 2 u1^2 - u1 u2 + u2^2 - 2 u1 + 1.4^(2 u1 + u2); gradient Lipschitz constant
/// 5.3 on the unit box. Drives the table1 report.
inline Objective table1_objective() {
  const double c = std::log(1.4);
  return Objective{
      [](const Eigen::VectorXd& u) {
        return 2 * u(0) * u(0) - u(0) * u(1) + u(1) * u(1) - 2 * u(0) +
               std::pow(1.4, 2 * u(0) + u(1));
      },
      [c](const Eigen::VectorXd& u) {
        const double e = std::pow(1.4, 2 * u(0) + u(1));
        Eigen::VectorXd g(2);
        g << 4 * u(0) - u(1) - 2 + 2 * c * e, -u(0) + 2 * u(1) + c * e;
        return g;
      },
      2};
}

/// u1^2 + 6 u2; gradient Lipschitz constant 2. Drives the table2 report.
inline Objective table2_objective() {
  return Objective{
      [](const Eigen::VectorXd& u) { return u(0) * u(0) + 6 * u(1); },
      [](const Eigen::VectorXd& u) {
        Eigen::VectorXd g(2);
        g << 2 * u(0), 6.0;
        return g;
      },
      2};
}

/// Indefinite 5-d quadratic with Hessian spectral radius 4.3014; drives the
/// ex5 Monte Carlo coverage experiment.
inline Objective ex5_objective() {
  return Objective{
      [](const Eigen::VectorXd& u) {
        return u(0) * u(0) - u(1) * u(1) + (u(2) - u(3)) * (u(2) - u(3)) - u(4) * u(4) +
               u(0) * u(2) - u(1) * u(3) - 6 * u(4) + 5 * u(1);
      },
      [](const Eigen::VectorXd& u) {
        Eigen::VectorXd g(5);
        g << 2 * u(0) + u(2), -2 * u(1) - u(3) + 5, 2 * (u(2) - u(3)) + u(0),
            -2 * (u(2) - u(3)) - u(1), -2 * u(4) - 6;
        return g;
      },
      5};
}

/// 2 u1^2 - u1 u2 + u2^2 - 3 u1 + 1.4^(2 u1 + u2); gradient Lipschitz constant
/// 5.3 on [-2,1]x[-2.5,1]. Case study 1.
inline Objective case1_objective() {
  const double c = std::log(1.4);
  return Objective{
      [](const Eigen::VectorXd& u) {
        return 2 * u(0) * u(0) - u(0) * u(1) + u(1) * u(1) - 3 * u(0) +
               std::pow(1.4, 2 * u(0) + u(1));
      },
      [c](const Eigen::VectorXd& u) {
        const double e = std::pow(1.4, 2 * u(0) + u(1));
        Eigen::VectorXd g(2);
        g << 4 * u(0) - u(1) - 3 + 2 * c * e, -u(0) + 2 * u(1) + c * e;
        return g;
      },
      2};
}

/// ||u||^2, i.e. 1/2 u' (2 I) u in any dimension. Case study 2 uses it in R^3.
inline Objective sphere_objective() {
  return Objective{[](const Eigen::VectorXd& u) { return u.squaredNorm(); },
                   [](const Eigen::VectorXd& u) { return (2.0 * u).eval(); }, 0};
}

/// 1/2 u' Q u + c . u for a user-supplied symmetric Q.
inline Objective quadratic_objective(Eigen::MatrixXd Q, Eigen::VectorXd c) {
  if (Q.rows() != Q.cols() || Q.rows() != c.size()) {
    throw DimensionMismatch("quadratic objective needs square Q matching c");
  }
  const Index n = Q.rows();
  return Objective{
      [Q, c](const Eigen::VectorXd& u) { return 0.5 * u.dot(Q * u) + c.dot(u); },
      [Q, c](const Eigen::VectorXd& u) { return (Q * u + c).eval(); }, n};
}

/// Catalog lookup for run configurations. "case2" is an alias of "sphere".
inline Objective objective_by_name(const std::string& name) {
  if (name == "table1" || name == "ex1") return table1_objective();
  if (name == "table2" || name == "ex2") return table2_objective();
  if (name == "ex5") return ex5_objective();
  if (name == "case1") return case1_objective();
  if (name == "case2" || name == "sphere") return sphere_objective();
  throw ParseError("unknown objective '" + name + "'");
}

}  // namespace sgb
