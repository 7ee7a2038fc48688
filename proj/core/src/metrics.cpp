#include "e3dsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace e3dsim {

LifetimeStats lifetime_stats(const std::vector<std::optional<std::uint32_t>>& death_rounds,
                             std::uint32_t max_rounds,
                             const std::vector<std::uint32_t>& alive_before_series) {
    if (death_rounds.empty()) {
        throw std::invalid_argument("lifetime_stats: need at least one node");
    }
    const std::size_t n = death_rounds.size();
    std::vector<std::uint32_t> deaths;
    for (const auto& d : death_rounds) {
        if (d.has_value()) {
            deaths.push_back(*d);
        }
    }
    std::sort(deaths.begin(), deaths.end());

    LifetimeStats out;
    auto milestone = [&](std::size_t needed, std::uint32_t& value, bool& censored) {
        if (deaths.size() >= needed && needed >= 1) {
            value = deaths[needed - 1];
            censored = false;
        } else {
            value = max_rounds;
            censored = true;
        }
    };
    milestone(1, out.first_death_round, out.first_death_censored);
    milestone((n + 9) / 10, out.rounds_to_10pct_dead, out.rounds_to_10pct_censored);
    milestone((n + 1) / 2, out.rounds_to_50pct_dead, out.rounds_to_50pct_censored);
    milestone(n, out.last_death_round, out.last_death_censored);

    // Capacity profile over the rounds that matter: up to and including the
    // round of the last death, or every executed round while censored.
    std::size_t horizon = out.last_death_censored
                              ? alive_before_series.size()
                              : static_cast<std::size_t>(out.last_death_round) + 1;
    horizon = std::min(horizon, alive_before_series.size());
    if (horizon == 0) {
        out.usable_capacity = 0.0;
    } else {
        double sum = 0.0;
        for (std::size_t r = 0; r < horizon; ++r) {
            sum += static_cast<double>(alive_before_series[r]) / static_cast<double>(n);
        }
        out.usable_capacity = sum / static_cast<double>(horizon);
    }
    return out;
}

DistributionStats distribution_stats(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("distribution_stats: empty list");
    }
    DistributionStats out;
    double sum = 0.0;
    out.min = values[0];
    out.max = values[0];
    for (double v : values) {
        sum += v;
        out.min = std::min(out.min, v);
        out.max = std::max(out.max, v);
    }
    out.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) {
        const double d = v - out.mean;
        sq += d * d;
    }
    out.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    out.cv = out.mean == 0.0 ? 0.0 : out.stddev / out.mean;
    return out;
}

OverheadStats overhead_stats(std::span<const RoundReport> reports) {
    OverheadStats out;
    std::uint64_t node_rounds = 0;
    double ctrl_energy = 0.0;
    double total_energy = 0.0;
    for (const RoundReport& r : reports) {
        out.total_ctrl_msgs += r.ctrl_msgs;
        out.total_data_msgs += r.data_msgs;
        out.total_hypothetical_sync_msgs += r.hypothetical_sync_msgs;
        node_rounds += r.alive_before;
        ctrl_energy += r.energy_ctrl_j;
        total_energy += r.energy_tx_j + r.energy_rx_j + r.energy_ctrl_j;
    }
    out.ctrl_per_node_round =
        node_rounds == 0 ? 0.0
                         : static_cast<double>(out.total_ctrl_msgs) /
                               static_cast<double>(node_rounds);
    out.ctrl_energy_fraction = total_energy == 0.0 ? 0.0 : ctrl_energy / total_energy;
    return out;
}

RunSummary summarize(const SimulationResult& result) {
    RunSummary s;
    s.protocol = std::string(to_string(result.config.protocol));
    s.seed = result.config.seed;
    s.node_count = result.topology.node_count();
    s.rounds_executed = static_cast<std::uint32_t>(result.reports.size());

    std::vector<std::uint32_t> alive_series;
    alive_series.reserve(result.reports.size());
    for (const RoundReport& r : result.reports) {
        alive_series.push_back(r.alive_before);
    }
    s.lifetime = lifetime_stats(result.death_rounds, result.config.max_rounds, alive_series);

    std::vector<double> deaths;
    deaths.reserve(result.death_rounds.size());
    for (const auto& d : result.death_rounds) {
        deaths.push_back(d.has_value() ? static_cast<double>(*d)
                                       : static_cast<double>(result.config.max_rounds));
    }
    s.death_rounds = distribution_stats(deaths);

    std::vector<double> residuals;
    residuals.reserve(result.final_batteries.size());
    for (const Battery& b : result.final_batteries) {
        residuals.push_back(b.residual());
    }
    s.final_residuals = distribution_stats(residuals);

    s.overhead = overhead_stats(result.reports);
    return s;
}

}  // namespace e3dsim
