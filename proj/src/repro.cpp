#include "sgb/repro.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <utility>

#include "sgb/gradient.hpp"
#include "sgb/io.hpp"
#include "sgb/objectives.hpp"
#include "sgb/truncation_bounds.hpp"

namespace sgb {

bool ReproResult::passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const ReproCell& c) { return c.pass; });
}

namespace {

ReproCell make_cell(std::string label, double computed, double lo, double hi,
                    std::string provenance) {
  const bool pass = computed >= lo && computed <= hi;
  return ReproCell{std::move(label), computed, lo, hi, std::move(provenance), pass};
}

/// Target matched within max(0.01 absolute, 0.5% relative).
ReproCell golden_cell(std::string label, double computed, double expected) {
  const double tol = std::max(0.01, 0.005 * std::abs(expected));
  return make_cell(std::move(label), computed, expected - tol, expected + tol, "reference");
}

/// Target matched within 0.01 absolute.
ReproCell golden_cell_abs(std::string label, double computed, double expected) {
  return make_cell(std::move(label), computed, expected - 0.01, expected + 0.01, "reference");
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::ofstream open_output(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  std::ofstream os(join_path(dir, file));
  os << std::setprecision(17);
  return os;
}

ReproResult golden_table(const std::string& name, const Objective& objective,
                         const Eigen::MatrixXd& points, double lipschitz,
                         const std::vector<std::array<double, 4>>& expected, bool relative_tol) {
  ReproResult result;
  result.name = name;

  Eigen::VectorXd values(points.cols());
  for (Index j = 0; j < points.cols(); ++j) values(j) = objective.value(points.col(j));

  for (Index ref = 0; ref < points.cols(); ++ref) {
    const SampleSet<double> set(points, ref);
    const Eigen::VectorXd g = simplex_gradient(set, values);
    const double err = (g - objective.gradient(points.col(ref))).norm();
    const std::array<double, 4> computed{err, delta_bound(set, lipschitz),
                                         square_column_bound(set, lipschitz),
                                         radial_bound(set, lipschitz)};
    const char* names[4] = {"|eps_t|", "T_d", "T_c", "T_r"};
    for (int c = 0; c < 4; ++c) {
      const std::string label = "u" + std::to_string(ref) + " " + names[c];
      result.cells.push_back(relative_tol ? golden_cell(label, computed[c], expected[ref][c])
                                          : golden_cell_abs(label, computed[c], expected[ref][c]));
    }
  }
  return result;
}

}  // namespace

ReproResult repro_table1() {
  Eigen::MatrixXd points(2, 3);
  points << 0.5, 0.0, 1.0, 0.0, 1.0, 0.0;
  return golden_table("table1", table1_objective(), points, 5.3,
                      {{2.8443, 10.72, 7.73, 4.19},
                       {4.1788, 26.7, 22.26, 4.19},
                       {3.1386, 21.89, 15.6, 4.19}},
                      true);
}

ReproResult repro_table2() {
  Eigen::MatrixXd points(2, 3);
  points << 0.0, -1.0, 1.0, 2.0 / 3.0, 0.5, 0.5;
  return golden_table("table2", table2_objective(), points, 2.0,
                      {{6.0, 6.1667, 6.1667, 6.1667},
                       {6.3246, 37.97, 27.72, 6.1667},
                       {6.3246, 37.97, 27.72, 6.1667}},
                      false);
}

ReproResult repro_ex3(const std::string& out_dir) {
  ReproResult result;
  result.name = "ex3";
  const double L = 2.0;

  std::ofstream csv;
  if (!out_dir.empty()) {
    csv = open_output(out_dir, "ex3_bounds_vs_dimension.csv");
    csv << "n_u,T_d,T_c,T_r\n";
    result.outputs.push_back(join_path(out_dir, "ex3_bounds_vs_dimension.csv"));
  }

  double dev_d = 0, dev_c = 0, dev_r = 0;
  double margin_rc = std::numeric_limits<double>::infinity();
  double margin_cd = std::numeric_limits<double>::infinity();
  for (Index n = 2; n <= 50; ++n) {
    Eigen::MatrixXd points = Eigen::MatrixXd::Zero(n, n + 1);
    points(0, 1) = 4.0;
    for (Index j = 2; j <= n; ++j) points(j - 1, j) = 1.0;
    const SampleSet<double> set(points, 0);
    const double td = delta_bound(set, L);
    const double tc = square_column_bound(set, L);
    const double tr = radial_bound(set, L);
    const double nd = static_cast<double>(n);
    dev_d = std::max(dev_d, std::abs(td - (L / 2) * 16 * std::sqrt(nd)));
    dev_c = std::max(dev_c, std::abs(tc - (L / 2) * std::sqrt(256 + nd - 1)));
    dev_r = std::max(dev_r, std::abs(tr - (L / 2) * std::sqrt(16 + nd - 1)));
    margin_rc = std::min(margin_rc, tc - tr);
    margin_cd = std::min(margin_cd, td - tc);
    if (csv.is_open()) csv << n << ',' << td << ',' << tc << ',' << tr << '\n';
  }

  result.cells.push_back(make_cell("max |T_d - closed form|", dev_d, 0.0, 1e-9, "analytic"));
  result.cells.push_back(make_cell("max |T_c - closed form|", dev_c, 0.0, 1e-9, "analytic"));
  result.cells.push_back(make_cell("max |T_r - closed form|", dev_r, 0.0, 1e-9, "analytic"));
  result.cells.push_back(make_cell("min T_c - T_r margin", margin_rc, 1e-12,
                                   std::numeric_limits<double>::infinity(), "analytic"));
  result.cells.push_back(make_cell("min T_d - T_c margin", margin_cd, 1e-12,
                                   std::numeric_limits<double>::infinity(), "analytic"));
  return result;
}

Ex5Stats run_ex5_monte_carlo(std::uint64_t seed, int trials, std::ostream* csv) {
  const Objective objective = ex5_objective();
  const double L = 4.3014;
  int covered_radial = 0;
  int covered_column = 0;

  if (csv) *csv << "trial,err_norm,T_c,T_r\n";
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    // Redraw until the conditioning filter accepts the set.
    for (;;) {
      Eigen::MatrixXd points(5, 6);
      for (Index j = 0; j < 6; ++j) {
        for (Index i = 0; i < 5; ++i) points(i, j) = unif(rng);
      }
      try {
        const SampleSet<double> set(points, 0);
        if (set.inv_norm() > 8.0) continue;
        Eigen::VectorXd values(6);
        for (Index j = 0; j < 6; ++j) values(j) = objective.value(points.col(j));
        const double err =
            (simplex_gradient(set, values) - objective.gradient(points.col(0))).norm();
        const double tc = square_column_bound(set, L);
        const double tr = radial_bound(set, L);
        if (err <= tr) ++covered_radial;
        if (err <= tc) ++covered_column;
        if (csv) *csv << trial << ',' << err << ',' << tc << ',' << tr << '\n';
        break;
      } catch (const UnpoisedSet&) {
        continue;
      }
    }
  }
  return Ex5Stats{100.0 * covered_radial / trials, 100.0 * covered_column / trials, trials};
}

ReproResult repro_ex5(std::uint64_t seed, const std::string& out_dir) {
  ReproResult result;
  result.name = "ex5";

  Ex5Stats stats;
  if (!out_dir.empty()) {
    std::ofstream csv = open_output(out_dir, "ex5_coverage.csv");
    result.outputs.push_back(join_path(out_dir, "ex5_coverage.csv"));
    stats = run_ex5_monte_carlo(seed, 1000, &csv);
  } else {
    stats = run_ex5_monte_carlo(seed, 1000, nullptr);
  }

  // Tabulated coverage is 87.8% under the source's own draw; the acceptance
  // band widens it for sampling noise (binomial, n=1000) and distribution
  // differences.
  result.cells.push_back(
      make_cell("radial-bound coverage %", stats.radial_coverage_pct, 83.0, 92.0, "reference"));
  result.cells.push_back(
      make_cell("square-column coverage %", stats.column_coverage_pct, 100.0, 100.0, "analytic"));
  return result;
}

CaseStudySetup case1_setup() {
  return CaseStudySetup{"case1", (Eigen::VectorXd(2) << -2.0, -2.5).finished(), 5.3, 0.1};
}

CaseStudySetup case1_setup_b() {
  return CaseStudySetup{"case1", (Eigen::VectorXd(2) << -2.0, 0.5).finished(), 5.3, 0.1};
}

CaseStudySetup case2_setup() {
  return CaseStudySetup{"case2", (Eigen::VectorXd(3) << 2.0, 5.0, 3.0).finished(), 2.5, 0.05};
}

Eigen::VectorXd case1_optimum() {
  // Newton iteration on the exact gradient of the case-1 objective.
  const double c = std::log(1.4);
  Eigen::VectorXd u(2);
  u << 0.5, 0.0;
  for (int i = 0; i < 50; ++i) {
    const double e = std::pow(1.4, 2 * u(0) + u(1));
    Eigen::VectorXd g(2);
    g << 4 * u(0) - u(1) - 3 + 2 * c * e, -u(0) + 2 * u(1) + c * e;
    Eigen::MatrixXd h(2, 2);
    h << 4 + 4 * c * c * e, -1 + 2 * c * c * e, -1 + 2 * c * c * e, 2 + c * c * e;
    u -= h.partialPivLu().solve(g);
  }
  return u;
}

CaseStudyOutcome run_case_study(const CaseStudySetup& setup, DfoVariant variant,
                                const Eigen::VectorXd& ball_center, double ball_radius,
                                std::uint64_t seed, int max_iters) {
  DfoConfig config;
  config.variant = variant;
  config.lipschitz = setup.lipschitz;
  config.delta = 3.0 * setup.sigma_f;
  config.max_iters = max_iters;
  config.solver_seed = mix_seed(seed, 2);

  NoisyOracle oracle(objective_by_name(setup.objective).value,
                     NoiseModel::gaussian(setup.sigma_f), mix_seed(seed, 1));
  CaseStudyOutcome outcome{run(oracle, setup.u0, config), -1};
  if ((setup.u0 - ball_center).norm() <= ball_radius) {
    outcome.iters_to_ball = 0;
    return outcome;
  }
  for (const auto& rec : outcome.trace.records) {
    if (rec.iter >= 1 && (rec.point - ball_center).norm() <= ball_radius) {
      outcome.iters_to_ball = rec.iter;
      break;
    }
  }
  return outcome;
}

double median_iters(std::vector<int> iters, int never_value) {
  for (int& v : iters) {
    if (v < 0) v = never_value;
  }
  std::sort(iters.begin(), iters.end());
  const std::size_t n = iters.size();
  if (n % 2 == 1) return iters[n / 2];
  return 0.5 * (iters[n / 2 - 1] + iters[n / 2]);
}

double max_duality_violation(const IterateTrace& trace) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& rec : trace.records) {
    if (rec.iter < 1) continue;
    worst = std::max(worst, rec.bound_value - rec.budget);
  }
  return worst;
}

namespace {

constexpr int k_case_seeds = 20;

void write_trace_file(const IterateTrace& trace, const std::string& out_dir,
                      const std::string& file, ReproResult& result) {
  if (out_dir.empty()) return;
  std::ofstream os = open_output(out_dir, file);
  write_trace_csv(trace, os);
  result.outputs.push_back(join_path(out_dir, file));
}

}  // namespace

ReproResult repro_case1(std::uint64_t seed, const std::string& out_dir) {
  ReproResult result;
  result.name = "case1";
  const Eigen::VectorXd opt = case1_optimum();

  std::vector<int> iters_b;
  double worst_violation = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < k_case_seeds; ++s) {
    auto outcome = run_case_study(case1_setup(), DfoVariant::B, opt, 0.5, seed + s, 12);
    iters_b.push_back(outcome.iters_to_ball);
    worst_violation = std::max(worst_violation, max_duality_violation(outcome.trace));
  }
  result.cells.push_back(make_cell("variant 1b median iterations to optimum 0.5-ball",
                                   median_iters(iters_b, 13), 0.0, 3.0, "reference"));
  result.cells.push_back(make_cell("max duality violation", worst_violation,
                                   -std::numeric_limits<double>::infinity(), 1e-6, "analytic"));

  // Figure data: both variants from both starting points, first seed.
  using VariantTag = std::pair<DfoVariant, const char*>;
  for (auto [variant, tag] : {VariantTag{DfoVariant::A, "1a"}, VariantTag{DfoVariant::B, "1b"}}) {
    auto from_a = run_case_study(case1_setup(), variant, opt, 0.5, seed, 60);
    auto from_b = run_case_study(case1_setup_b(), variant, opt, 0.5, seed, 60);
    write_trace_file(from_a.trace, out_dir, std::string("case1_") + tag + "_start_a.csv", result);
    write_trace_file(from_b.trace, out_dir, std::string("case1_") + tag + "_start_b.csv", result);
  }
  return result;
}

ReproResult repro_case2(std::uint64_t seed, const std::string& out_dir) {
  ReproResult result;
  result.name = "case2";
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(3);

  std::vector<int> iters_a, iters_b;
  double worst_violation = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < k_case_seeds; ++s) {
    auto a = run_case_study(case2_setup(), DfoVariant::A, origin, 0.5, seed + s, 25);
    auto b = run_case_study(case2_setup(), DfoVariant::B, origin, 0.5, seed + s, 25);
    iters_a.push_back(a.iters_to_ball);
    iters_b.push_back(b.iters_to_ball);
    worst_violation = std::max(worst_violation, max_duality_violation(a.trace));
    worst_violation = std::max(worst_violation, max_duality_violation(b.trace));
  }
  const double median_a = median_iters(iters_a, 26);
  const double median_b = median_iters(iters_b, 26);
  result.cells.push_back(make_cell("variant 1a median iterations to ||u|| <= 0.5", median_a, 0.0,
                                   16.0, "reference"));
  result.cells.push_back(make_cell("variant 1b median iterations to ||u|| <= 0.5", median_b, 0.0,
                                   10.0, "reference"));
  result.cells.push_back(make_cell("median(1b) - median(1a)", median_b - median_a,
                                   -std::numeric_limits<double>::infinity(), 0.0, "reference"));
  result.cells.push_back(make_cell("max duality violation", worst_violation,
                                   -std::numeric_limits<double>::infinity(), 1e-6, "analytic"));

  auto fig_a = run_case_study(case2_setup(), DfoVariant::A, origin, 0.5, seed, 60);
  auto fig_b = run_case_study(case2_setup(), DfoVariant::B, origin, 0.5, seed, 60);
  write_trace_file(fig_a.trace, out_dir, "case2_1a_trace.csv", result);
  write_trace_file(fig_b.trace, out_dir, "case2_1b_trace.csv", result);
  return result;
}

ReproResult repro_by_name(const std::string& name, std::uint64_t seed,
                          const std::string& out_dir) {
  if (name == "table1") return repro_table1();
  if (name == "table2") return repro_table2();
  if (name == "ex3") return repro_ex3(out_dir);
  if (name == "ex5") return repro_ex5(seed, out_dir);
  if (name == "case1") return repro_case1(seed, out_dir);
  if (name == "case2") return repro_case2(seed, out_dir);
  throw ParseError("unknown experiment '" + name +
                   "' (expected table1, table2, ex3, ex5, case1, case2)");
}

void print_repro_result(const ReproResult& result, std::ostream& os) {
  os << "experiment " << result.name << "\n";
  for (const auto& cell : result.cells) {
    os << "  " << (cell.pass ? "PASS" : "FAIL") << "  " << cell.label << ": " << std::setprecision(6)
       << cell.computed;
    if (cell.lo == cell.hi) {
      os << " (target " << cell.lo << ")";
    } else if (std::isinf(cell.lo) && !std::isinf(cell.hi)) {
      os << " (target <= " << cell.hi << ")";
    } else if (!std::isinf(cell.lo) && std::isinf(cell.hi)) {
      os << " (target >= " << cell.lo << ")";
    } else {
      os << " (target [" << cell.lo << ", " << cell.hi << "])";
    }
    os << " [" << cell.provenance << "]\n";
  }
  for (const auto& out : result.outputs) os << "  wrote " << out << "\n";
}

}  // namespace sgb
