#include "sgb/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "sgb/io.hpp"
#include "sgb/repro.hpp"

namespace sgb::cli {

namespace {

constexpr int k_exit_ok = 0;
constexpr int k_exit_parse = 2;
constexpr int k_exit_unpoised = 3;
constexpr int k_exit_golden = 4;
constexpr int k_exit_infeasible = 5;

int cmd_bounds(const std::string& input, double lipschitz, double delta,
               const std::string& format) {
  LoadedSampleSet loaded;
  try {
    loaded = read_sample_set(input);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return k_exit_parse;
  }

  try {
    const SampleSet<double> set(loaded.points, loaded.ref_index);
    const BoundReport<double> report = bound_report(set, lipschitz, delta);
    if (format == "json") {
      std::cout << bound_report_json(report) << "\n";
    } else {
      print_bound_report_table(report, std::cout);
    }
  } catch (const UnpoisedSet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return k_exit_unpoised;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return k_exit_parse;
  }
  return k_exit_ok;
}

int cmd_repro(const std::string& name, std::uint64_t seed, const std::string& out_dir) {
  ReproResult result;
  try {
    result = repro_by_name(name, seed, out_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return k_exit_parse;
  }
  print_repro_result(result, std::cout);
  return result.passed() ? k_exit_ok : k_exit_golden;
}

int cmd_dfo(const std::string& input, const std::string& out_dir) {
  DfoRunSpec spec;
  try {
    spec = parse_dfo_spec(input);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return k_exit_parse;
  }

  NoisyOracle oracle = make_oracle(spec);
  const IterateTrace trace = run(oracle, spec.u0, spec.config);

  std::filesystem::create_directories(out_dir);
  const auto trace_path = (std::filesystem::path(out_dir) / "trace.csv").string();
  std::ofstream os(trace_path);
  write_trace_csv(trace, os);

  const IterateRecord* best = nullptr;
  for (const auto& rec : trace.records) {
    if (!best || rec.value_noisy < best->value_noisy) best = &rec;
  }
  const auto& final_point = trace.records.back().point;
  std::cout << std::setprecision(10);
  std::cout << "status: "
            << (trace.status == RunStatus::Converged
                    ? "converged"
                    : (trace.status == RunStatus::MaxIters ? "max-iters" : "infeasible"))
            << "\n";
  std::cout << "final point:";
  for (Index i = 0; i < final_point.size(); ++i) std::cout << ' ' << final_point(i);
  std::cout << "\nbest noisy value: " << (best ? best->value_noisy : 0.0)
            << "\nevaluations: " << oracle.eval_count() << "\ntrace: " << trace_path << "\n";
  if (trace.status == RunStatus::Infeasible) {
    std::cerr << "error: " << trace.message << "\n";
    return k_exit_infeasible;
  }
  return k_exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"simplex-gradient error bounds and duality-constrained DFO"};
  app.require_subcommand(1);

  std::string input;
  std::string out_dir = ".";
  std::string format = "table";
  std::string repro_name;
  double lipschitz = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 1;

  auto* bounds = app.add_subcommand("bounds", "report all gradient-error bounds of a sample set");
  bounds->add_option("--input", input, "sample-set file (CSV or JSON)")->required();
  bounds->add_option("--lipschitz", lipschitz, "gradient Lipschitz constant L")->required();
  bounds->add_option("--delta", delta, "measurement-noise bound");
  bounds->add_option("--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  auto* repro = app.add_subcommand("repro", "rerun a reference experiment against its targets");
  repro->add_option("name", repro_name, "table1, table2, ex3, ex5, case1, case2")->required();
  repro->add_option("--seed", seed, "base seed for stochastic experiments");
  repro->add_option("--out", out_dir, "directory for emitted CSV data");

  auto* dfo = app.add_subcommand("dfo", "run the duality-constrained DFO loop");
  dfo->add_option("--input,--config", input, "JSON run configuration")->required();
  dfo->add_option("--out", out_dir, "directory for the trace CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return k_exit_parse;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(input, lipschitz, delta, format);
    if (repro->parsed()) return cmd_repro(repro_name, seed, out_dir);
    if (dfo->parsed()) return cmd_dfo(input, out_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return k_exit_parse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return k_exit_ok;
}

}  // namespace sgb::cli
