#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "sgb/geometry.hpp"
#include "sgb/noise_bounds.hpp"
#include "sgb/sample_set.hpp"
#include "sgb/truncation_bounds.hpp"
#include "sgb/types.hpp"

// Combined truncation+noise bounds, the FFD total bound with its optimal step,
// and the candidate-parameterized bound functions E(u) used as duality
// constraints by the DFO loop.

namespace sgb {

/// Saturating stand-in for an infinite bound near the anchor hyperplane.
inline constexpr double k_bound_sentinel = 1e300;

/// Total gradient-error bound at the reference: E_c = T_c + 2 delta / l_min.
template <typename Scalar>
Scalar total_bound_Ec(const SampleSet<Scalar>& set, Scalar lipschitz, Scalar delta_noise) {
  return square_column_bound(set, lipschitz) + lmin_bound(set, delta_noise).n_lmin;
}

/// FFD total bound: L sqrt(n_u) h / 2 + 2 delta sqrt(n_u) / h.
template <typename Scalar>
Scalar ffd_error_bound(Index n_u, Scalar lipschitz, Scalar delta_noise, Scalar h) {
  if (!(h > Scalar(0))) throw NonpositiveStep("FFD step must be positive");
  const Scalar n = static_cast<Scalar>(n_u);
  return lipschitz * std::sqrt(n) * h / 2 + 2 * delta_noise * std::sqrt(n) / h;
}

/// Unique minimizer of the FFD total bound: h* = 2 sqrt(delta / L).
template <typename Scalar>
Scalar optimal_ffd_step(Scalar lipschitz, Scalar delta_noise) {
  if (!(lipschitz > Scalar(0))) throw ZeroLipschitz("optimal FFD step needs L > 0");
  if (!(delta_noise > Scalar(0))) {
    throw NonpositiveStep("optimal FFD step degenerates to 0 for delta = 0");
  }
  return 2 * std::sqrt(delta_noise / lipschitz);
}

/// Minimum FFD total bound, E_FFD(h*) = 2 sqrt(n_u L delta). Zero when the
/// noise bound is zero.
template <typename Scalar>
Scalar min_ffd_error_bound(Index n_u, Scalar lipschitz, Scalar delta_noise) {
  return 2 * std::sqrt(static_cast<Scalar>(n_u) * lipschitz * delta_noise);
}

/// Which truncation bound enters the candidate bound E(u).
enum class BoundKind { Radial, Simplex };

/// Fixed data of the duality constraint: the n_u anchor points whose span
/// defines the dividing hyperplane, plus the constants of the bound.
template <typename Scalar>
struct CandidateContext {
  Matrix<Scalar> anchors;  // one point per column, n_u of them
  Scalar lipschitz;
  Scalar delta_noise;
  BoundKind kind;
  Hyperplane<Scalar> hplane;  // hyperplane through the anchors
};

template <typename Derived>
CandidateContext<typename Derived::Scalar> make_candidate_context(
    const Eigen::MatrixBase<Derived>& anchors_in, typename Derived::Scalar lipschitz,
    typename Derived::Scalar delta_noise, BoundKind kind) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> anchors = anchors_in;
  Hyperplane<Scalar> h = hyperplane_through(anchors);  // checks anchor independence
  return CandidateContext<Scalar>{std::move(anchors), lipschitz, delta_noise, kind, std::move(h)};
}

/// Gradient-error bound of the sample set {u, anchors...} as a function of the
/// candidate u: T_r + N_l (Radial) or T_s + N_l (Simplex). Blows up as u
/// approaches the anchor hyperplane; within tolerance of it the candidate is
/// degenerate and the error carries the saturating sentinel.
template <typename Scalar>
Scalar candidate_bound(const CandidateContext<Scalar>& ctx, const Vector<Scalar>& u) {
  const Scalar dist = std::abs(ctx.hplane.signed_distance(u));
  if (dist < Scalar(1e-9) * (Scalar(1) + std::abs(ctx.hplane.offset))) {
    throw DegenerateCandidate("candidate lies on the anchor hyperplane", k_bound_sentinel);
  }

  const Index n = ctx.anchors.rows();
  Matrix<Scalar> points(n, n + 1);
  points.col(0) = u;
  points.rightCols(n) = ctx.anchors;
  const SampleSet<Scalar> set(points, 0);

  Scalar truncation;
  if (ctx.kind == BoundKind::Radial) {
    truncation = radial_bound(set, ctx.lipschitz);
  } else {
    truncation = simplex_bound(set, ctx.lipschitz).value;
  }
  Scalar noise = Scalar(0);
  if (ctx.delta_noise > Scalar(0)) {
    noise = 2 * ctx.delta_noise / min_partition_distance(set.points()).l_min;
  }
  return truncation + noise;
}

/// Non-throwing variant for subproblem solvers: degenerate or unpoised
/// candidates evaluate to the saturating sentinel.
template <typename Scalar>
Scalar candidate_bound_or_sentinel(const CandidateContext<Scalar>& ctx,
                                   const Vector<Scalar>& u) {
  try {
    return candidate_bound(ctx, u);
  } catch (const DegenerateCandidate& e) {
    return static_cast<Scalar>(e.saturated);
  } catch (const UnpoisedSet&) {
    return static_cast<Scalar>(k_bound_sentinel);
  }
}

/// Everything the bounds report for one sample set and constants (L, delta).
template <typename Scalar>
struct BoundReport {
  TruncationReport<Scalar> truncation;
  NoiseReport<Scalar> noise;
  Scalar e_total;  // E_c = T_c + N_l
  Scalar delta;    // max point distance from the reference
  Scalar inv_norm;
  Scalar circumradius;
};

template <typename Scalar>
BoundReport<Scalar> bound_report(const SampleSet<Scalar>& set, Scalar lipschitz,
                                 Scalar delta_noise) {
  BoundReport<Scalar> report;
  report.truncation = truncation_report(set, lipschitz);
  report.noise = lmin_bound(set, delta_noise);
  report.e_total = report.truncation.t_column + report.noise.n_lmin;
  report.delta = set.delta();
  report.inv_norm = set.inv_norm();
  report.circumradius = circumsphere(set.points()).radius;
  return report;
}

}  // namespace sgb
