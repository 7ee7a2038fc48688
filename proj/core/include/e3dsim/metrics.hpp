#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "e3dsim/engine.hpp"

namespace e3dsim {

/// Death-milestone profile of a run. A milestone not reached before the
/// horizon is censored: reported at max_rounds with its flag set.
struct LifetimeStats {
    std::uint32_t first_death_round = 0;
    std::uint32_t rounds_to_10pct_dead = 0;
    std::uint32_t rounds_to_50pct_dead = 0;
    std::uint32_t last_death_round = 0;
    bool first_death_censored = false;
    bool rounds_to_10pct_censored = false;
    bool rounds_to_50pct_censored = false;
    bool last_death_censored = false;
    /// Mean of alive/node_count over the executed rounds up to and including
    /// the last death (all executed rounds when censored); 0 if no rounds ran.
    double usable_capacity = 0.0;
};

LifetimeStats lifetime_stats(const std::vector<std::optional<std::uint32_t>>& death_rounds,
                             std::uint32_t max_rounds,
                             const std::vector<std::uint32_t>& alive_before_series);

/// Population statistics (divide by N): the node set is the whole population,
/// not a sample. cv is stddev/mean, defined as 0 when the mean is 0.
struct DistributionStats {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
    double cv = 0.0;
};

/// Throws std::invalid_argument on an empty list.
DistributionStats distribution_stats(std::span<const double> values);

struct OverheadStats {
    std::uint64_t total_ctrl_msgs = 0;
    std::uint64_t total_data_msgs = 0;
    double ctrl_per_node_round = 0.0;   // total ctrl / sum of alive_before
    double ctrl_energy_fraction = 0.0;  // ctrl energy / total energy spent
    std::uint64_t total_hypothetical_sync_msgs = 0;
};

OverheadStats overhead_stats(std::span<const RoundReport> reports);

/// Everything the summary CSV row and the comparison table need, reduced from
/// one SimulationResult. Survivors enter the death-round distribution censored
/// at max_rounds.
struct RunSummary {
    std::string protocol;
    std::uint64_t seed = 0;
    std::uint32_t node_count = 0;
    std::uint32_t rounds_executed = 0;
    LifetimeStats lifetime;
    DistributionStats death_rounds;
    DistributionStats final_residuals;
    OverheadStats overhead;
};

RunSummary summarize(const SimulationResult& result);

}  // namespace e3dsim
