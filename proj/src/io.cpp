#include "sgb/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sgb/objectives.hpp"

namespace sgb {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

Eigen::MatrixXd points_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ParseError("sample-set file contains no points");
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw ParseError("sample-set file contains an empty point");
  for (const auto& row : rows) {
    if (row.size() != dim) throw ParseError("sample-set rows have inconsistent dimensions");
  }
  Eigen::MatrixXd points(dim, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) points(i, j) = rows[j][i];
  }
  return points;
}

}  // namespace

LoadedSampleSet parse_sample_set_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw ParseError("trailing characters in CSV cell '" + cell + "'");
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("cannot parse CSV cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return LoadedSampleSet{points_from_rows(rows), 0};
}

LoadedSampleSet parse_sample_set_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON sample set: ") + e.what());
  }
  if (!j.contains("points") || !j["points"].is_array()) {
    throw ParseError("JSON sample set needs a 'points' array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& p : j["points"]) {
    if (!p.is_array()) throw ParseError("each point must be an array of coordinates");
    rows.push_back(p.get<std::vector<double>>());
  }
  const Index ref = j.value("ref_index", 0);
  Eigen::MatrixXd points = points_from_rows(rows);
  if (ref < 0 || ref >= points.cols()) throw ParseError("ref_index out of range");
  return LoadedSampleSet{std::move(points), ref};
}

LoadedSampleSet read_sample_set(const std::string& path) {
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("'" + path + "' is empty");
  std::istringstream is(text);
  if (text[first] == '{') return parse_sample_set_json(is);
  return parse_sample_set_csv(is);
}

DfoRunSpec parse_dfo_spec_stream(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON run config: ") + e.what());
  }

  DfoRunSpec spec;
  try {
    const std::string variant = j.value("variant", "1a");
    if (variant == "1a") {
      spec.config.variant = DfoVariant::A;
    } else if (variant == "1b") {
      spec.config.variant = DfoVariant::B;
    } else {
      throw ParseError("variant must be '1a' or '1b'");
    }

    if (!j.contains("L")) throw ParseError("run config needs the Lipschitz constant 'L'");
    spec.config.lipschitz = j["L"].get<double>();
    if (!(spec.config.lipschitz > 0)) throw ParseError("'L' must be positive");

    const double sigma_f = j.value("sigma_f", 0.0);
    spec.config.delta = j.contains("delta") ? j["delta"].get<double>() : 3.0 * sigma_f;
    if (spec.config.delta < 0) throw ParseError("'delta' must be nonnegative");

    const std::string noise = j.value("noise_model", sigma_f > 0 ? "gaussian" : "none");
    if (noise == "none") {
      spec.noise = NoiseModel::none();
    } else if (noise == "gaussian") {
      spec.noise = NoiseModel::gaussian(sigma_f);
    } else if (noise == "truncated_gaussian") {
      spec.noise = NoiseModel::truncated_gaussian(sigma_f);
    } else if (noise == "uniform") {
      spec.noise = NoiseModel::uniform(spec.config.delta);
    } else {
      throw ParseError("unknown noise_model '" + noise + "'");
    }

    if (!j.contains("u0") || !j["u0"].is_array() || j["u0"].empty()) {
      throw ParseError("run config needs a nonempty 'u0' array");
    }
    const auto u0 = j["u0"].get<std::vector<double>>();
    spec.u0 = Eigen::Map<const Eigen::VectorXd>(u0.data(), static_cast<Index>(u0.size()));

    spec.objective = j.value("objective", "sphere");
    if (spec.objective == "quadratic") {
      if (!j.contains("Q")) throw ParseError("'quadratic' objective needs a 'Q' matrix");
      const auto rows = j["Q"].get<std::vector<std::vector<double>>>();
      const Index n = static_cast<Index>(rows.size());
      spec.quad_matrix.resize(n, n);
      for (Index r = 0; r < n; ++r) {
        if (static_cast<Index>(rows[r].size()) != n) throw ParseError("'Q' must be square");
        for (Index col = 0; col < n; ++col) spec.quad_matrix(r, col) = rows[r][col];
      }
      spec.quad_linear = Eigen::VectorXd::Zero(n);
      if (j.contains("c")) {
        const auto c = j["c"].get<std::vector<double>>();
        if (static_cast<Index>(c.size()) != n) throw ParseError("'c' must match 'Q'");
        spec.quad_linear = Eigen::Map<const Eigen::VectorXd>(c.data(), n);
      }
    }

    spec.config.init_step = j.value("init_step", 0.0);
    spec.config.max_iters = j.value("max_iters", 60);
    spec.config.step_tolerance = j.value("step_tolerance", 1e-6);
    spec.config.multistart_count = j.value("multistart_count", 8);
    spec.config.grad_fraction = j.value("grad_fraction", 4.0);
    spec.config.solver_seed = j.value("seed", std::uint64_t{0});
    if (spec.config.max_iters < 0 || spec.config.multistart_count < 1 ||
        !(spec.config.step_tolerance > 0) || !(spec.config.grad_fraction > 0)) {
      throw ParseError("nonpositive solver setting in run config");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid run config value: ") + e.what());
  }
  return spec;
}

DfoRunSpec parse_dfo_spec(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open '" + path + "'");
  return parse_dfo_spec_stream(file);
}

NoisyOracle make_oracle(const DfoRunSpec& spec) {
  Objective obj = spec.objective == "quadratic"
                      ? quadratic_objective(spec.quad_matrix, spec.quad_linear)
                      : objective_by_name(spec.objective);
  if (obj.dimension != 0 && obj.dimension != spec.u0.size()) {
    throw ParseError("objective '" + spec.objective + "' expects dimension " +
                     std::to_string(obj.dimension));
  }
  // Oracle noise stream and solver stream are separated deterministically.
  return NoisyOracle(obj.value, spec.noise, mix_seed(spec.config.solver_seed, 0x6f7261636c65));
}

void write_trace_csv(const IterateTrace& trace, std::ostream& os) {
  const Index n = trace.dimension;
  os << "iter";
  for (Index i = 1; i <= n; ++i) os << ",u" << i;
  os << ",f_noisy,m_model,budget,side,evals\n";
  os << std::setprecision(17);
  for (const auto& rec : trace.records) {
    os << rec.iter;
    for (Index i = 0; i < n; ++i) os << ',' << rec.point(i);
    os << ',' << rec.value_noisy << ',' << rec.model_value << ',' << rec.budget << ','
       << (rec.side > 0 ? "plus" : (rec.side < 0 ? "minus" : "init")) << ',' << rec.eval_count
       << '\n';
  }
}

namespace {

nlohmann::json report_to_json(const BoundReport<double>& r) {
  return nlohmann::json{
      {"T_d", r.truncation.t_delta},
      {"T_c", r.truncation.t_column},
      {"T_r", r.truncation.t_radial},
      {"T_rv", r.truncation.t_min_vertex_radial},
      {"T_cv", r.truncation.t_min_vertex_column},
      {"T_s", r.truncation.t_simplex},
      {"N_c", r.noise.n_conditioning},
      {"N_l", r.noise.n_lmin},
      {"E_c", r.e_total},
      {"l_min", r.noise.l_min},
      {"r", r.circumradius},
      {"delta", r.delta},
      {"inv_norm", r.inv_norm},
      {"orthogonal_columns", r.truncation.orthogonal_columns},
      {"lipschitz", r.truncation.lipschitz},
      {"delta_noise", r.noise.delta_noise},
  };
}

}  // namespace

std::string bound_report_json(const BoundReport<double>& report) {
  return report_to_json(report).dump(2);
}

void print_bound_report_table(const BoundReport<double>& report, std::ostream& os) {
  const auto row = [&os](const char* name, double value) {
    os << "  " << std::left << std::setw(22) << name << std::setprecision(10) << value << "\n";
  };
  os << "truncation bounds (L = " << report.truncation.lipschitz << ")\n";
  row("delta bound T_d", report.truncation.t_delta);
  row("square column T_c", report.truncation.t_column);
  row("radial T_r", report.truncation.t_radial);
  row("min-vertex T_rv", report.truncation.t_min_vertex_radial);
  row("min-vertex T_cv", report.truncation.t_min_vertex_column);
  row("simplex T_s", report.truncation.t_simplex);
  os << "  radial bound is " << (report.truncation.orthogonal_columns ? "certified" : "approximate")
     << " (columns " << (report.truncation.orthogonal_columns ? "orthogonal" : "not orthogonal")
     << ")\n";
  os << "noise bounds (delta = " << report.noise.delta_noise << ")\n";
  row("conditioning N_c", report.noise.n_conditioning);
  row("l-min N_l", report.noise.n_lmin);
  row("l_min", report.noise.l_min);
  os << "total\n";
  row("E_c = T_c + N_l", report.e_total);
  os << "geometry\n";
  row("Delta", report.delta);
  row("||U^-1||", report.inv_norm);
  row("circumradius r", report.circumradius);
}

}  // namespace sgb
