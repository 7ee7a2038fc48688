#pragma once

#include <string>
#include <vector>

namespace e3dsim {

/// Experiment runner behind the e3dsim binary.
///
/// Flags: --config PATH (required), --protocol NAME[,NAME...] (override),
/// --seed N (override), --seeds N..M (sweep), --out DIR, --summary.
/// One simulation per (protocol, seed) pair; each run writes
/// <protocol>_seed<seed>_rounds.csv and <protocol>_seed<seed>_summary.csv
/// into the output directory (written to a temp file and renamed, so failed
/// runs leave no partial files). --summary prints an aligned comparison table
/// sorted by (protocol, seed). Returns 0 on success.
int run_cli(const std::vector<std::string>& args);

/// argv convenience wrapper (argv[0] is ignored).
int run_cli(int argc, const char* const* argv);

}  // namespace e3dsim
