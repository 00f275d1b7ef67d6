#pragma once

namespace sgb::cli {

/// Command-line entry point. Subcommands: bounds, repro <name>, dfo.
/// Exit codes: 0 ok, 2 parse error, 3 unpoised sample set, 4 golden-value
/// mismatch, 5 infeasible DFO subproblems.
int run(int argc, const char* const* argv);

}  // namespace sgb::cli
