#pragma once

#include <iosfwd>
#include <string>

#include "sgb/dfo.hpp"
#include "sgb/total_bounds.hpp"
#include "sgb/types.hpp"

// File formats of the CLI surface: sample-set files (CSV with the reference
// point in the first row, or JSON with an explicit ref_index), DFO run
// configurations (JSON), and the iterate-trace CSV.

namespace sgb {

struct LoadedSampleSet {
  Eigen::MatrixXd points;  // one point per column
  Index ref_index;
};

/// Reads a sample-set file. Content starting with '{' is parsed as JSON
/// {"ref_index": int, "points": [[...], ...]}; anything else as CSV with one
/// point per row, the first row being the reference point.
LoadedSampleSet read_sample_set(const std::string& path);
LoadedSampleSet parse_sample_set_csv(std::istream& is);
LoadedSampleSet parse_sample_set_json(std::istream& is);

/// Everything needed to launch a DFO run from a config file.
struct DfoRunSpec {
  DfoConfig config;
  NoiseModel noise;
  Eigen::VectorXd u0;
  std::string objective;      // catalog name, or "quadratic"
  Eigen::MatrixXd quad_matrix;
  Eigen::VectorXd quad_linear;
};

/// Parses a JSON run configuration with keys: variant ("1a"/"1b"), L, delta,
/// sigma_f, noise_model, u0, objective, init_step, max_iters, step_tolerance,
/// multistart_count, seed. delta defaults to 3*sigma_f.
DfoRunSpec parse_dfo_spec(const std::string& path);
DfoRunSpec parse_dfo_spec_stream(std::istream& is);

/// Builds the oracle described by a run spec.
NoisyOracle make_oracle(const DfoRunSpec& spec);

/// Trace CSV: iter, u_1..u_n, f_noisy, m_model, budget, side, evals.
void write_trace_csv(const IterateTrace& trace, std::ostream& os);

void print_bound_report_table(const BoundReport<double>& report, std::ostream& os);
std::string bound_report_json(const BoundReport<double>& report);

}  // namespace sgb
