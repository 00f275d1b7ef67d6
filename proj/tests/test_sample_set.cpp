#include <doctest.h>

#include <cmath>
#include <random>

#include "sgb/sample_set.hpp"
#include "test_util.hpp"

using namespace sgb;

namespace {

Eigen::MatrixXd table1_points() {
  Eigen::MatrixXd pts(2, 3);
  pts << 0.5, 0.0, 1.0, 0.0, 1.0, 0.0;
  return pts;
}

}  // namespace

TEST_CASE("build computes the cached displacement data") {
  const SampleSet<double> set(table1_points(), 0);
  CHECK(set.dimension() == 2);
  CHECK(set.delta() == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(set.displacement().col(0).isApprox(Eigen::Vector2d(-0.5, 1), 1e-15));
  CHECK(set.displacement().col(1).isApprox(Eigen::Vector2d(0.5, 0), 1e-15));
  CHECK(set.scaled_inv_norm() ==
        doctest::Approx(set.delta() * set.inv_norm()).epsilon(1e-10));
}

TEST_CASE("construction rejects bad inputs") {
  Eigen::MatrixXd collinear(2, 3);
  collinear << 0, 1, 2, 0, 1, 2;
  CHECK_THROWS_AS(SampleSet<double>(collinear, 0), UnpoisedSet);

  Eigen::MatrixXd too_few(2, 2);
  too_few << 0, 1, 0, 1;
  CHECK_THROWS_AS(SampleSet<double>(too_few, 0), DimensionMismatch);
  CHECK_THROWS_AS(SampleSet<double>(table1_points(), 3), DimensionMismatch);
  CHECK_THROWS_AS(SampleSet<double>(table1_points(), -1), DimensionMismatch);
}

TEST_CASE("FFD sets: layout, inverse norm 1/h, optimal-step sizing") {
  const auto set = ffd_set(Eigen::Vector2d(0, 0), 0.1);
  CHECK(set.point(0).isApprox(Eigen::Vector2d(0, 0), 1e-15));
  CHECK(set.point(1).isApprox(Eigen::Vector2d(0.1, 0), 1e-15));
  CHECK(set.point(2).isApprox(Eigen::Vector2d(0, 0.1), 1e-15));
  CHECK(set.delta() == doctest::Approx(0.1).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.01, 3.0);
  for (Index n = 1; n <= 8; ++n) {
    const double h = step(rng);
    const auto f = ffd_set(sgb_test::random_points(rng, n, 1), h);
    CHECK(f.inv_norm() == doctest::Approx(1.0 / h).epsilon(1e-12));
    CHECK(f.delta() == doctest::Approx(h).epsilon(1e-12));
  }

  // h = 2 sqrt(delta/L) with delta = 0.15, L = 2.5.
  const double h_star = 2.0 * std::sqrt(0.15 / 2.5);
  CHECK(h_star == doctest::Approx(0.4898979486).epsilon(1e-9));
  const auto init = ffd_set(Eigen::Vector3d(2, 5, 3), h_star);
  CHECK(init.points().cols() == 4);

  CHECK_THROWS_AS(ffd_set(Eigen::Vector2d(0, 0), 0.0), NonpositiveStep);
  CHECK_THROWS_AS(ffd_set(Eigen::Vector2d(0, 0), -1.0), NonpositiveStep);
}

TEST_CASE("rebase keeps the point set and recomputes the cached fields") {
  const SampleSet<double> set(table1_points(), 0);
  const auto rebased = rebase(set, 1);
  CHECK(rebased.points() == set.points());
  CHECK(rebased.delta() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto same = rebase(set, 0);
  CHECK(same.delta() == set.delta());
  CHECK(same.displacement() == set.displacement());

  const auto back = rebase(rebased, 0);
  CHECK(back.delta() == doctest::Approx(set.delta()).epsilon(1e-12));
  CHECK(back.inv_norm() == doctest::Approx(set.inv_norm()).epsilon(1e-12));
  CHECK((back.displacement() - set.displacement()).norm() < 1e-12);
}

TEST_CASE("scaling a set by h scales Delta and leaves U/Delta unchanged") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> scale(0.01, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(trial % 5);
    const auto set = sgb_test::random_poised_set(rng, n);
    const double h = scale(rng);
    const SampleSet<double> scaled(h * set.points(), set.ref_index());
    CHECK(scaled.delta() == doctest::Approx(h * set.delta()).epsilon(1e-12));
    const Eigen::MatrixXd u_hat = set.displacement() / set.delta();
    const Eigen::MatrixXd u_hat_scaled = scaled.displacement() / scaled.delta();
    CHECK((u_hat_scaled - u_hat).norm() <= 1e-10);
  }
}

TEST_CASE("scale_point maps the box onto the unit cube") {
  ScalingSpec<double> spec{Eigen::Vector2d(0, 0), Eigen::Vector2d(10, 10)};
  CHECK(scale_point(spec, Eigen::Vector2d(5, 5).eval()).isApprox(Eigen::Vector2d(0.5, 0.5), 1e-15));
  CHECK(scale_point(spec, Eigen::Vector2d(0, 0).eval()).isZero(1e-15));

  ScalingSpec<double> box{Eigen::Vector2d(-2, -2.5), Eigen::Vector2d(1, 1)};
  CHECK(scale_point(box, Eigen::Vector2d(-2, -2.5).eval()).isZero(1e-15));

  ScalingSpec<double> bad{Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 1)};
  CHECK_THROWS_AS(scale_point(bad, Eigen::Vector2d(0, 1).eval()), DegenerateRange);
}
