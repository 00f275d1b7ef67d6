#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "sgb/geometry.hpp"
#include "sgb/sample_set.hpp"
#include "sgb/types.hpp"

// Measurement-noise error bounds for the simplex gradient under noise bounded
// by delta: the conditioning bound, the l-min bound (the least upper bound),
// the exact worst-case brute-force oracle, and the angle diagnostic.

namespace sgb {

/// Conditioning bound: 2 delta sqrt(n_u) ||U^{-1}||.
template <typename Scalar>
Scalar conditioning_bound(const SampleSet<Scalar>& set, Scalar delta_noise) {
  const Scalar n = static_cast<Scalar>(set.dimension());
  return 2 * delta_noise * std::sqrt(n) * set.inv_norm();
}

template <typename Scalar>
struct NoiseReport {
  Scalar n_conditioning;
  Scalar n_lmin;
  Scalar l_min;
  ComplementPartition argmin_partition;
  Scalar delta_noise;
};

/// L-min bound: 2 delta / l_min, where l_min is the shortest distance between
/// complement affine subspaces of the sample set. This is the least upper
/// bound on the noise-induced gradient error; it never exceeds the
/// conditioning bound.
template <typename Scalar>
NoiseReport<Scalar> lmin_bound(const SampleSet<Scalar>& set, Scalar delta_noise) {
  auto min_dist = min_partition_distance(set.points());
  return NoiseReport<Scalar>{conditioning_bound(set, delta_noise),
                             2 * delta_noise / min_dist.l_min, min_dist.l_min,
                             std::move(min_dist.argmin), delta_noise};
}

/// Noise values at the sample points realizing a worst case, |values_j| = delta.
template <typename Scalar>
struct NoiseRealization {
  Vector<Scalar> values;
};

template <typename Scalar>
struct WorstCaseNoise {
  Scalar value;  // max ||eps_n|| over all admissible noise
  NoiseRealization<Scalar> pattern;
};

/// Exhaustive worst case of the noise-induced gradient error over all sign
/// patterns v_j = +-delta (the maximum over the box is attained at such a
/// pattern). Ties break toward the lexicographically first pattern, so the
/// result is deterministic. Equals 2 delta / l_min.
template <typename Scalar>
WorstCaseNoise<Scalar> worst_case_noise_error(const SampleSet<Scalar>& set, Scalar delta_noise) {
  const Index n = set.dimension();
  if (n > 12) throw DimensionTooLarge("worst-case enumeration capped at n_u = 12");
  const Index m = n + 1;

  WorstCaseNoise<Scalar> best;
  best.value = Scalar(-1);
  Vector<Scalar> v(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (Index j = 0; j < m; ++j) {
      v(j) = (mask & (std::uint64_t{1} << j)) ? delta_noise : -delta_noise;
    }
    const Vector<Scalar> eps = set.lu().transpose().solve(set.value_differences(v));
    const Scalar norm = eps.norm();
    if (norm > best.value) {
      best.value = norm;
      best.pattern.values = v;
    }
  }
  return best;
}

/// Angle between the interpolation-data hyperplane and the noiseless one:
/// acos(1 / sqrt(||eps_n||^2 + 1)). Zero for zero error, monotone in the norm.
template <typename Scalar>
Scalar noise_plane_angle(const Vector<Scalar>& eps_n) {
  return std::acos(Scalar(1) / std::sqrt(eps_n.squaredNorm() + Scalar(1)));
}

}  // namespace sgb
