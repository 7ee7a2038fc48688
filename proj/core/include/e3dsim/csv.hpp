#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "e3dsim/engine.hpp"
#include "e3dsim/metrics.hpp"

namespace e3dsim {

/// Header + one row per round, '\n' line endings, floats at 9 significant
/// digits, deaths as ';'-joined ids. Byte-identical for identical runs.
/// Throws std::runtime_error if the sink reports a failure.
void write_round_csv(std::span<const RoundReport> reports, std::ostream& out);

/// Header + a single row for the whole run.
void write_summary_csv(const RunSummary& summary, std::ostream& out);

std::string round_csv_string(std::span<const RoundReport> reports);
std::string summary_csv_string(const RunSummary& summary);

}  // namespace e3dsim
