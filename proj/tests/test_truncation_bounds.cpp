#include <doctest.h>

#include <cmath>
#include <random>

#include "sgb/gradient.hpp"
#include "sgb/objectives.hpp"
#include "sgb/truncation_bounds.hpp"
#include "test_util.hpp"

using namespace sgb;

namespace {

SampleSet<double> table1_set(Index ref = 0) {
  Eigen::MatrixXd pts(2, 3);
  pts << 0.5, 0.0, 1.0, 0.0, 1.0, 0.0;
  return SampleSet<double>(pts, ref);
}

SampleSet<double> table2_set(Index ref = 0) {
  Eigen::MatrixXd pts(2, 3);
  pts << 0.0, -1.0, 1.0, 2.0 / 3.0, 0.5, 0.5;
  return SampleSet<double>(pts, ref);
}

constexpr double k_l1 = 5.3;

}  // namespace

TEST_CASE("delta bound on the reference sets") {
  CHECK(delta_bound(table1_set(0), k_l1) == doctest::Approx(10.719475).epsilon(1e-6));
  CHECK(delta_bound(table1_set(1), k_l1) == doctest::Approx(26.695020).epsilon(1e-6));
  CHECK(delta_bound(table1_set(2), k_l1) == doctest::Approx(21.892438).epsilon(1e-6));

  CHECK(delta_bound(table2_set(0), 2.0) == doctest::Approx(37.0 / 6.0).epsilon(1e-10));
  CHECK(delta_bound(table2_set(1), 2.0) == doctest::Approx(37.968502).epsilon(1e-6));
}

TEST_CASE("delta bound FFD closed form") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> step(0.01, 2.0);
  std::uniform_real_distribution<double> lip(0.1, 10.0);
  for (Index n = 1; n <= 10; ++n) {
    const double h = step(rng);
    const double lipschitz = lip(rng);
    const auto set = ffd_set(sgb_test::random_points(rng, n, 1), h);
    CHECK(delta_bound(set, lipschitz) ==
          doctest::Approx(lipschitz * std::sqrt(static_cast<double>(n)) * h / 2).epsilon(1e-12));
  }
}

TEST_CASE("uniform and pointwise delta bounds") {
  const auto set = table1_set();
  const double td = delta_bound(set, k_l1);
  CHECK(delta_bound_uniform(set, k_l1) == doctest::Approx(16.645055).epsilon(1e-6));
  CHECK(delta_bound_pointwise(set, k_l1, set.ref_point().eval()) ==
        doctest::Approx(td).epsilon(1e-12));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector2d dir(unif(rng), unif(rng));
    if (dir.norm() > 1) continue;
    const Eigen::VectorXd u = set.ref_point() + set.delta() * dir;
    CHECK(delta_bound_pointwise(set, k_l1, u) <= delta_bound_uniform(set, k_l1) + 1e-12);
  }
}

TEST_CASE("radial bound values and rebase invariance") {
  for (Index ref = 0; ref < 3; ++ref) {
    CHECK(radial_bound(table1_set(ref), k_l1) == doctest::Approx(4.190018).epsilon(1e-6));
    CHECK(radial_bound(table2_set(ref), 2.0) == doctest::Approx(6.1666667).epsilon(1e-7));
  }

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 4);
    const auto set = sgb_test::random_poised_set(rng, n, 1e3);
    const double tr = radial_bound(set, 1.7);
    for (Index ref = 1; ref <= n; ++ref) {
      CHECK(std::abs(radial_bound(rebase(set, ref), 1.7) - tr) < 1e-12 * (1 + tr));
    }
  }
}

TEST_CASE("radial bound FFD closed form and orthogonality flag") {
  const auto set = ffd_set(Eigen::Vector3d(0.2, -0.4, 1.0), 0.3);
  CHECK(radial_bound(set, 2.0) ==
        doctest::Approx(2.0 * std::sqrt(3.0) * 0.3 / 2).epsilon(1e-12));
  CHECK(has_orthogonal_columns(set));
  CHECK_FALSE(has_orthogonal_columns(table1_set()));
}

TEST_CASE("square column bound values") {
  CHECK(square_column_bound(table1_set(0), k_l1) == doctest::Approx(7.729923).epsilon(1e-6));
  CHECK(square_column_bound(table1_set(1), k_l1) == doctest::Approx(22.259750).epsilon(1e-6));
  CHECK(square_column_bound(table1_set(2), k_l1) == doctest::Approx(15.600762).epsilon(1e-6));
  CHECK(square_column_bound(table2_set(1), 2.0) == doctest::Approx(27.719873).epsilon(1e-6));
}

TEST_CASE("example-3 family closed forms") {
  const double lipschitz = 2.0;
  for (Index n : {2, 5, 20, 50}) {
    Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(n, n + 1);
    pts(0, 1) = 4.0;
    for (Index j = 2; j <= n; ++j) pts(j - 1, j) = 1.0;
    const SampleSet<double> set(pts, 0);
    const double nd = static_cast<double>(n);
    CHECK(delta_bound(set, lipschitz) ==
          doctest::Approx((lipschitz / 2) * 16 * std::sqrt(nd)).epsilon(1e-12));
    CHECK(square_column_bound(set, lipschitz) ==
          doctest::Approx((lipschitz / 2) * std::sqrt(256 + nd - 1)).epsilon(1e-12));
    CHECK(radial_bound(set, lipschitz) ==
          doctest::Approx((lipschitz / 2) * std::sqrt(16 + nd - 1)).epsilon(1e-12));
  }
}

TEST_CASE("square column never exceeds delta; equality iff equidistant columns") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 1 + static_cast<Index>(trial % 6);
    const auto set = sgb_test::random_poised_set(rng, n);
    CHECK(square_column_bound(set, 2.3) <= delta_bound(set, 2.3) + 1e-9);
  }

  // Equidistant construction: random directions, one common length.
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 4);
    const auto base = sgb_test::random_poised_set(rng, n);
    Eigen::MatrixXd pts(n, n + 1);
    pts.col(0) = base.point(0);
    for (Index j = 0; j < n; ++j) {
      pts.col(j + 1) = pts.col(0) + base.displacement().col(j) / base.displacement().col(j).norm();
    }
    const SampleSet<double> equidistant(pts, 0);
    CHECK(std::abs(square_column_bound(equidistant, 2.0) - delta_bound(equidistant, 2.0)) <=
          1e-10);

    Eigen::MatrixXd perturbed = pts;
    perturbed.col(1) = pts.col(0) + 0.99 * (pts.col(1) - pts.col(0));
    const SampleSet<double> uneven(perturbed, 0);
    CHECK(square_column_bound(uneven, 2.0) < delta_bound(uneven, 2.0) - 1e-12);
  }
}

TEST_CASE("FFD coincidence of the three truncation bounds") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> step(0.01, 2.0);
  std::uniform_real_distribution<double> lip(0.1, 8.0);
  for (Index n = 1; n <= 10; ++n) {
    const double h = step(rng);
    const double lipschitz = lip(rng);
    const auto set = ffd_set(sgb_test::random_points(rng, n, 1), h);
    const double td = delta_bound(set, lipschitz);
    CHECK(std::abs(td - radial_bound(set, lipschitz)) <= 1e-10);
    CHECK(std::abs(td - square_column_bound(set, lipschitz)) <= 1e-10);
  }
}

TEST_CASE("certified bounds hold on random quadratics") {
  std::mt19937_64 rng(57);
  const double lipschitz = 3.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 4);
    const auto quad = sgb_test::random_quadratic(rng, n, lipschitz);
    const auto set = sgb_test::random_poised_set(rng, n);

    Eigen::VectorXd values(n + 1);
    for (Index j = 0; j <= n; ++j) values(j) = quad.value(set.point(j));
    const Eigen::VectorXd eps =
        simplex_gradient(set, values) - quad.gradient(set.ref_point());

    const double tc = square_column_bound(set, lipschitz);
    const double td = delta_bound(set, lipschitz);
    CHECK(eps.norm() <= tc + 1e-9);
    CHECK(tc <= td + 1e-9);

    // Projections along the displacement directions obey the radial bound.
    const double tr = radial_bound(set, lipschitz);
    for (Index j = 0; j < n; ++j) {
      const auto dir = set.displacement().col(j);
      CHECK(std::abs(eps.dot(dir)) / dir.norm() <= tr + 1e-9);
    }
  }

  // With orthogonal displacement columns the radial bound itself is certified.
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 4);
    const auto quad = sgb_test::random_quadratic(rng, n, lipschitz);
    const auto set = sgb_test::random_orthogonal_set(rng, n);
    Eigen::VectorXd values(n + 1);
    for (Index j = 0; j <= n; ++j) values(j) = quad.value(set.point(j));
    const Eigen::VectorXd eps =
        simplex_gradient(set, values) - quad.gradient(set.ref_point());
    CHECK(eps.norm() <= radial_bound(set, lipschitz) + 1e-9);
  }
}

TEST_CASE("minimum-vertex bounds") {
  const auto mv1 = min_vertex_bounds(table1_set(), k_l1);
  CHECK(mv1.t_radial == doctest::Approx(4.190018).epsilon(1e-6));
  CHECK(mv1.t_column == doctest::Approx(7.729923).epsilon(1e-6));

  const auto mv2 = min_vertex_bounds(table2_set(), 2.0);
  CHECK(mv2.t_column == doctest::Approx(6.1666667).epsilon(1e-7));

  const auto ffd = ffd_set(Eigen::Vector2d(1, 1), 0.25);
  const auto mv3 = min_vertex_bounds(ffd, 2.0);
  const double expected = 2.0 * std::sqrt(2.0) * 0.25 / 2;
  CHECK(mv3.t_radial == doctest::Approx(expected).epsilon(1e-12));
  CHECK(mv3.t_column <= delta_bound(ffd, 2.0) + 1e-12);
}

TEST_CASE("extended radial bound") {
  const auto set = table1_set();
  const auto sphere = circumsphere(set.points());
  CHECK(extended_radial_bound(set, k_l1, sphere.center) == 0.0);
  for (Index j = 0; j < 3; ++j) {
    CHECK(std::abs(extended_radial_bound(set, k_l1, set.point(j)) - radial_bound(set, k_l1)) <
          1e-12);
  }

  // One-dimensional exponential interval [1, 2] with L = e^2.5.
  Eigen::MatrixXd pts(1, 2);
  pts << 1.0, 2.0;
  const SampleSet<double> interval(pts, 0);
  const double lipschitz = std::exp(2.5);
  Eigen::VectorXd at(1);
  at << 1.0;
  CHECK(extended_radial_bound(interval, lipschitz, at) ==
        doctest::Approx(6.0912470).epsilon(1e-7));
}

TEST_CASE("simplex bound: witness, zero inside, dominated by the radial bound") {
  const auto ex1 = simplex_bound(table1_set(), k_l1);
  CHECK(ex1.value == doctest::Approx(1.873833).epsilon(1e-6));
  CHECK(ex1.witness.isApprox(Eigen::Vector2d(0.5, 0.5), 1e-8));

  // Equilateral-ish triangle holds its circumcenter.
  Eigen::MatrixXd tri(2, 3);
  tri << 0.0, 1.0, 0.5, 0.0, 0.0, std::sqrt(3.0) / 2;
  const SampleSet<double> nice(tri, 0);
  CHECK(simplex_bound(nice, 2.0).value <= 1e-10);

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(trial % 5);
    const auto set = sgb_test::random_poised_set(rng, n, 1e3);
    const auto sb = simplex_bound(set, 2.0);
    const double tr = radial_bound(set, 2.0);
    CHECK(sb.value <= tr + 1e-9);

    // The simplex bound is the minimum of the extended radial bound over the
    // hull, so it cannot exceed the bound at random hull points.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd w(n + 1);
    for (Index i = 0; i <= n; ++i) w(i) = unif(rng);
    w /= w.sum();
    const Eigen::VectorXd hull_point = set.points() * w;
    CHECK(sb.value <= extended_radial_bound(set, 2.0, hull_point) + 1e-9);
  }
}

TEST_CASE("truncation report aggregates the bound family") {
  const auto report = truncation_report(table1_set(), k_l1);
  CHECK(report.t_delta == doctest::Approx(10.719475).epsilon(1e-6));
  CHECK(report.t_column == doctest::Approx(7.729923).epsilon(1e-6));
  CHECK(report.t_radial == doctest::Approx(4.190018).epsilon(1e-6));
  CHECK(report.t_min_vertex_column == doctest::Approx(7.729923).epsilon(1e-6));
  CHECK(report.t_simplex == doctest::Approx(1.873833).epsilon(1e-6));
  CHECK(report.t_column <= report.t_delta);
  CHECK_FALSE(report.orthogonal_columns);
  CHECK(report.lipschitz == k_l1);
}
