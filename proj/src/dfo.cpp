#include "sgb/dfo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgb/geometry.hpp"

namespace sgb {

NoisyOracle::NoisyOracle(Objective objective, NoiseModel noise, std::uint64_t seed)
    : objective_(std::move(objective)), noise_(noise), rng_(seed) {}

double NoisyOracle::operator()(const Eigen::VectorXd& u) {
  ++eval_count_;
  double v = 0.0;
  switch (noise_.kind) {
    case NoiseModel::Kind::None:
      break;
    case NoiseModel::Kind::Gaussian: {
      std::normal_distribution<double> normal(0.0, noise_.sigma);
      v = normal(rng_);
      break;
    }
    case NoiseModel::Kind::TruncatedGaussian: {
      std::normal_distribution<double> normal(0.0, noise_.sigma);
      do {
        v = normal(rng_);
      } while (std::abs(v) > noise_.bound);
      break;
    }
    case NoiseModel::Kind::UniformBounded: {
      std::uniform_real_distribution<double> unif(-noise_.bound, noise_.bound);
      v = unif(rng_);
      break;
    }
  }
  return objective_(u) + v;
}

DfoState init_ffd(NoisyOracle& oracle, const Eigen::VectorXd& u0, double h) {
  if (!(h > 0.0)) throw NonpositiveStep("FFD initialization step must be positive");
  const Index n = u0.size();
  Eigen::MatrixXd points(n, n + 1);
  points.col(0) = u0;
  for (Index j = 0; j < n; ++j) {
    points.col(j + 1) = u0;
    points(j, j + 1) += h;
  }

  Eigen::VectorXd values(n + 1);
  IterateTrace trace;
  trace.dimension = n;
  for (Index j = 0; j <= n; ++j) {
    values(j) = oracle(points.col(j));
    IterateRecord rec;
    rec.iter = static_cast<int>(-j);
    rec.point = points.col(j);
    rec.value_noisy = values(j);
    rec.eval_count = oracle.eval_count();
    trace.records.push_back(std::move(rec));
  }

  DfoState state{SampleSet<double>(std::move(points), 0), std::move(values), 0, std::move(trace)};
  return state;
}

QuadModel<double> build_model_k(const DfoState& state, const DfoConfig& config) {
  const Index n = state.window.dimension();
  Eigen::MatrixXd hessian = config.lipschitz * Eigen::MatrixXd::Identity(n, n);
  return quadratic_model(state.window, state.values, hessian);
}

double select_budget(const DfoState& state, const DfoConfig& config) {
  const double floor =
      min_ffd_error_bound(state.window.dimension(), config.lipschitz, config.delta);
  if (config.variant == DfoVariant::B) return floor;
  const double grad_norm = simplex_gradient(state.window, state.values).norm();
  return std::max(grad_norm / config.grad_fraction, floor);
}

namespace {

struct PatternOutcome {
  Eigen::VectorXd point;
  double model_value;
  double bound_value;
  bool feasible;
};

// Derivative-free local descent of the model under an exact penalty for the
// bound constraint; points on the wrong side of the hyperplane are rejected
// outright. First-improvement compass search with direction persistence,
// doubling the step on success and halving it when no probe improves.
PatternOutcome pattern_search(const QuadModel<double>& model, const CandidateContext<double>& ctx,
                              double budget, int side, const Hyperplane<double>& hplane,
                              const Eigen::VectorXd& start, double step0) {
  const Index n = start.size();
  const double step_min = 1e-7;
  const double step_max = 8.0 * step0;
  const int max_evals = 4000;

  const auto penalized = [&](const Eigen::VectorXd& u, double& bound_out) {
    if (side * hplane.signed_distance(u) <= 0.0) {
      bound_out = k_bound_sentinel;
      return k_bound_sentinel;
    }
    bound_out = candidate_bound_or_sentinel(ctx, u);
    if (bound_out >= k_bound_sentinel) return k_bound_sentinel;
    const double m = model(u);
    return m + 1e3 * (1.0 + std::abs(m)) * std::max(0.0, bound_out - budget);
  };

  Eigen::VectorXd x = start;
  double bound_x = 0.0;
  double fx = penalized(x, bound_x);
  double step = step0;
  int evals = 1;
  Index last_axis = 0;
  int last_sign = 1;

  while (step >= step_min && evals < max_evals) {
    bool improved = false;
    for (Index probe = 0; probe < 2 * n && !improved; ++probe) {
      // Cycle through +-e_i starting from the last successful direction.
      const Index axis = (last_axis + probe / 2) % n;
      const int sign = (probe % 2 == 0) ? last_sign : -last_sign;
      Eigen::VectorXd y = x;
      y(axis) += sign * step;
      double bound_y = 0.0;
      const double fy = penalized(y, bound_y);
      ++evals;
      if (fy < fx) {
        x = std::move(y);
        fx = fy;
        bound_x = bound_y;
        last_axis = axis;
        last_sign = sign;
        improved = true;
      }
    }
    if (improved) {
      step = std::min(2.0 * step, step_max);
    } else {
      step *= 0.5;
    }
  }

  const bool feasible =
      side * hplane.signed_distance(x) > 0.0 && bound_x <= budget + 1e-6;
  const double model_value = model(x);
  return PatternOutcome{std::move(x), model_value, bound_x, feasible};
}

}  // namespace

int choose_side(double model_plus, double model_minus) {
  return model_minus < model_plus - 1e-12 ? -1 : +1;
}

std::optional<HalfSpaceSolution> solve_half_space(const QuadModel<double>& model,
                                                  const CandidateContext<double>& ctx,
                                                  double budget, int side,
                                                  const Hyperplane<double>& hplane,
                                                  const SubproblemConfig& cfg) {
  const Index n = cfg.box_center.size();
  SideDiagnostics diag;
  diag.attempted = true;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-cfg.box_halfwidth, cfg.box_halfwidth);

  const int want = std::max(1, cfg.multistart_count);
  const int max_draws = std::max(400, 80 * want);
  std::vector<Eigen::VectorXd> seeds;
  int draws = 0;
  while (draws < max_draws && static_cast<int>(seeds.size()) < want) {
    ++draws;
    Eigen::VectorXd u(n);
    for (Index i = 0; i < n; ++i) u(i) = cfg.box_center(i) + unif(rng);
    if (side * hplane.signed_distance(u) <= 0.0) continue;
    if (candidate_bound_or_sentinel(ctx, u) <= budget) seeds.push_back(std::move(u));
  }
  diag.samples_drawn = draws;
  diag.seeds_found = static_cast<int>(seeds.size());
  if (seeds.empty()) return std::nullopt;

  std::optional<HalfSpaceSolution> best;
  for (const auto& seed : seeds) {
    PatternOutcome out =
        pattern_search(model, ctx, budget, side, hplane, seed, cfg.box_halfwidth / 4.0);
    if (!out.feasible) continue;
    if (!best || out.model_value < best->model_value) {
      best = HalfSpaceSolution{std::move(out.point), out.model_value, out.bound_value, diag};
    }
  }
  if (best) {
    best->diagnostics.feasible = true;
    best->diagnostics.model_value = best->model_value;
    best->diagnostics.bound_value = best->bound_value;
  }
  return best;
}

namespace {

struct SidePair {
  std::optional<HalfSpaceSolution> plus;
  std::optional<HalfSpaceSolution> minus;
};

SidePair solve_both_sides(const QuadModel<double>& model, const CandidateContext<double>& ctx,
                          double budget, const Hyperplane<double>& hplane,
                          const DfoState& state, const DfoConfig& config) {
  const Circumsphere<double> sphere = circumsphere(state.window.points());
  SubproblemConfig cfg;
  cfg.box_center = state.window.points().rowwise().mean();
  cfg.box_halfwidth = 2.0 * sphere.radius;
  cfg.multistart_count = config.multistart_count;

  SidePair pair;
  cfg.seed = mix_seed(config.solver_seed, mix_seed(static_cast<std::uint64_t>(state.iter), 1));
  pair.plus = solve_half_space(model, ctx, budget, +1, hplane, cfg);
  cfg.seed = mix_seed(config.solver_seed, mix_seed(static_cast<std::uint64_t>(state.iter), 2));
  pair.minus = solve_half_space(model, ctx, budget, -1, hplane, cfg);
  return pair;
}

}  // namespace

DfoState step(const DfoState& state, NoisyOracle& oracle, const DfoConfig& config) {
  const Index n = state.window.dimension();
  const QuadModel<double> model = build_model_k(state, config);
  const Eigen::MatrixXd anchors = state.window.points().leftCols(n);
  const BoundKind kind =
      config.variant == DfoVariant::A ? BoundKind::Radial : BoundKind::Simplex;
  const CandidateContext<double> ctx =
      make_candidate_context(anchors, config.lipschitz, config.delta, kind);
  const Hyperplane<double>& hplane = ctx.hplane;

  double budget = select_budget(state, config);
  bool inflated = false;
  SidePair pair = solve_both_sides(model, ctx, budget, hplane, state, config);
  if (!pair.plus && !pair.minus) {
    inflated = true;
    budget *= config.budget_inflation;
    pair = solve_both_sides(model, ctx, budget, hplane, state, config);
  }
  if (!pair.plus && !pair.minus) {
    std::ostringstream msg;
    msg << "both half-space subproblems infeasible at iteration " << state.iter
        << " (budget " << budget << " after x" << config.budget_inflation << " inflation)";
    throw BothSidesInfeasible(msg.str());
  }

  int side = 0;
  const HalfSpaceSolution* chosen = nullptr;
  if (pair.plus && pair.minus) {
    side = choose_side(pair.plus->model_value, pair.minus->model_value);
    chosen = side > 0 ? &*pair.plus : &*pair.minus;
  } else if (pair.plus) {
    chosen = &*pair.plus;
    side = +1;
  } else {
    chosen = &*pair.minus;
    side = -1;
  }

  const double value = oracle(chosen->point);

  Eigen::MatrixXd points(n, n + 1);
  points.col(0) = chosen->point;
  points.rightCols(n) = state.window.points().leftCols(n);
  Eigen::VectorXd values(n + 1);
  values(0) = value;
  values.tail(n) = state.values.head(n);

  IterateRecord rec;
  rec.iter = state.iter + 1;
  rec.point = chosen->point;
  rec.value_noisy = value;
  rec.model_value = chosen->model_value;
  rec.budget = budget;
  rec.bound_value = chosen->bound_value;
  rec.side = side;
  rec.budget_inflated = inflated;
  rec.eval_count = oracle.eval_count();
  if (pair.plus) rec.plus = pair.plus->diagnostics;
  if (pair.minus) rec.minus = pair.minus->diagnostics;

  DfoState next{SampleSet<double>(std::move(points), 0), std::move(values), state.iter + 1,
                state.trace};
  next.trace.records.push_back(std::move(rec));
  return next;
}

IterateTrace run(NoisyOracle& oracle, const Eigen::VectorXd& u0, const DfoConfig& config) {
  double h = config.init_step;
  if (!(h > 0.0)) h = optimal_ffd_step(config.lipschitz, config.delta);

  DfoState state = init_ffd(oracle, u0, h);
  const Index n = state.window.dimension();

  int small_steps = 0;
  while (state.iter < config.max_iters) {
    const Eigen::VectorXd previous = state.window.point(0);
    try {
      state = step(state, oracle, config);
    } catch (const BothSidesInfeasible& e) {
      state.trace.status = RunStatus::Infeasible;
      state.trace.message = e.what();
      return std::move(state.trace);
    }
    if ((state.window.point(0) - previous).norm() < config.step_tolerance) {
      ++small_steps;
      if (small_steps >= n) {
        state.trace.status = RunStatus::Converged;
        return std::move(state.trace);
      }
    } else {
      small_steps = 0;
    }
  }
  state.trace.status = RunStatus::MaxIters;
  return std::move(state.trace);
}

}  // namespace sgb
