#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sgb/gradient.hpp"
#include "sgb/sample_set.hpp"
#include "sgb/total_bounds.hpp"

// Sequential-programming DFO for noisy unconstrained problems. Each iteration
// interpolates the last n_u+1 evaluations with a quadratic model of prescribed
// Hessian L*I, then minimizes the model on both sides of the hyperplane
// through the n_u most recent iterates, subject to a duality constraint
// E(u) <= E^U bounding the gradient error of the next interpolation set.

namespace sgb {

/// Deterministic seed derivation for sub-streams (solver starts, trials).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9E3779B97F4A7C15ull * (b + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

struct NoiseModel {
  enum class Kind { None, Gaussian, TruncatedGaussian, UniformBounded };
  Kind kind = Kind::None;
  double sigma = 0.0;  // standard deviation (Gaussian kinds)
  double bound = 0.0;  // hard noise bound (TruncatedGaussian, UniformBounded)

  static NoiseModel none() { return {Kind::None, 0.0, 0.0}; }
  static NoiseModel gaussian(double sigma) { return {Kind::Gaussian, sigma, 3.0 * sigma}; }
  static NoiseModel truncated_gaussian(double sigma) {
    return {Kind::TruncatedGaussian, sigma, 3.0 * sigma};
  }
  static NoiseModel uniform(double delta) { return {Kind::UniformBounded, 0.0, delta}; }

  /// Noise bound to declare to the bounds machinery. For plain Gaussian noise
  /// this is the 3-sigma convention of the case studies; realizations may
  /// exceed it with small probability.
  double declared_delta() const { return kind == Kind::None ? 0.0 : bound; }
};

/// Wraps a scalar objective with additive noise and an evaluation counter.
/// Deterministic for a fixed seed; with no noise, repeated evaluation at the
/// same point returns identical values.
class NoisyOracle {
 public:
  using Objective = std::function<double(const Eigen::VectorXd&)>;

  NoisyOracle(Objective objective, NoiseModel noise, std::uint64_t seed);

  double operator()(const Eigen::VectorXd& u);

  std::int64_t eval_count() const { return eval_count_; }
  double delta() const { return noise_.declared_delta(); }
  const NoiseModel& noise() const { return noise_; }

 private:
  Objective objective_;
  NoiseModel noise_;
  std::mt19937_64 rng_;
  std::int64_t eval_count_ = 0;
};

/// Variant A enforces the radial bound with an adaptive budget
/// max(||g_k||/grad_fraction, E*_FFD); variant B enforces the simplex bound
/// with the fixed budget E*_FFD.
enum class DfoVariant { A, B };

struct DfoConfig {
  DfoVariant variant = DfoVariant::A;
  double lipschitz = 1.0;      // L
  double delta = 0.0;          // noise bound fed to the duality constraint
  double init_step = 0.0;      // FFD initialization step; <= 0 selects h* = 2 sqrt(delta/L)
  double grad_fraction = 4.0;  // divisor in the variant-A budget rule
  int max_iters = 60;
  double step_tolerance = 1e-6;
  int multistart_count = 8;
  std::uint64_t solver_seed = 0;
  double budget_inflation = 1.5;  // one-shot budget relaxation when both sides are infeasible
};

struct SideDiagnostics {
  bool attempted = false;
  bool feasible = false;
  int seeds_found = 0;
  int samples_drawn = 0;
  double model_value = std::numeric_limits<double>::quiet_NaN();
  double bound_value = std::numeric_limits<double>::quiet_NaN();
};

struct IterateRecord {
  int iter = 0;  // 0,-1,..,-n_u for the initial FFD evaluations, then 1,2,...
  Eigen::VectorXd point;
  double value_noisy = std::numeric_limits<double>::quiet_NaN();
  double model_value = std::numeric_limits<double>::quiet_NaN();  // m_k at the accepted point
  double budget = std::numeric_limits<double>::quiet_NaN();       // effective E^U
  double bound_value = std::numeric_limits<double>::quiet_NaN();  // E at the accepted point
  int side = 0;  // +1/-1 half-space of the accepted point; 0 during init
  bool budget_inflated = false;
  std::int64_t eval_count = 0;  // cumulative oracle evaluations after this record
  SideDiagnostics plus;
  SideDiagnostics minus;
};

enum class RunStatus { InProgress, Converged, MaxIters, Infeasible };

struct IterateTrace {
  std::vector<IterateRecord> records;
  RunStatus status = RunStatus::InProgress;
  std::string message;
  Index dimension = 0;
};

/// Moving interpolation window: column 0 of the sample set is the newest
/// iterate; sliding drops the oldest (last) column.
struct DfoState {
  SampleSet<double> window;
  Eigen::VectorXd values;
  int iter = 0;
  IterateTrace trace;
};

/// FFD initialization: evaluates the oracle at u0 and u0 + h e_j, building the
/// first window (n_u+1 evaluations).
DfoState init_ffd(NoisyOracle& oracle, const Eigen::VectorXd& u0, double h);

/// Quadratic window model with Hessian L*I.
QuadModel<double> build_model_k(const DfoState& state, const DfoConfig& config);

/// Per-iteration gradient-error budget E_k^U of the configured variant.
double select_budget(const DfoState& state, const DfoConfig& config);

struct SubproblemConfig {
  Eigen::VectorXd box_center;  // seed-sampling box (window centroid)
  double box_halfwidth = 1.0;  // 2 * circumradius of the window
  int multistart_count = 8;
  std::uint64_t seed = 0;
};

struct HalfSpaceSolution {
  Eigen::VectorXd point;
  double model_value;
  double bound_value;
  SideDiagnostics diagnostics;
};

/// Side selection between the two half-space minimizers: the smaller model
/// value wins; ties within 1e-12 go to +1.
int choose_side(double model_plus, double model_minus);

/// Minimizes the model over one half-space subject to E(u) <= budget, by
/// multistart pattern search with an exact penalty on the bound constraint.
/// Returns nothing when no feasible start could be sampled.
std::optional<HalfSpaceSolution> solve_half_space(const QuadModel<double>& model,
                                                  const CandidateContext<double>& ctx,
                                                  double budget, int side,
                                                  const Hyperplane<double>& hplane,
                                                  const SubproblemConfig& cfg);

/// One full iteration: model, budgets, both half-space subproblems, oracle
/// evaluation at the winner, window slide. Ties between sides go to +.
/// Throws BothSidesInfeasible when even the inflated budget yields no point;
/// the input state is untouched in that case.
DfoState step(const DfoState& state, NoisyOracle& oracle, const DfoConfig& config);

/// Full optimization loop: FFD init, then steps until the move stays below
/// step_tolerance for n_u consecutive iterations or max_iters is reached.
/// An infeasible iteration ends the run with the trace collected so far.
IterateTrace run(NoisyOracle& oracle, const Eigen::VectorXd& u0, const DfoConfig& config);

}  // namespace sgb
