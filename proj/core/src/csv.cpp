#include "e3dsim/csv.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace e3dsim {
namespace {

// 9 significant digits: enough to compare replays, stable across runs.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string join_ids(const std::vector<NodeId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i != 0) {
            out += ';';
        }
        out += std::to_string(ids[i]);
    }
    return out;
}

void require_good(const std::ostream& out, const char* what) {
    if (!out) {
        throw std::runtime_error(std::string("csv: write failed while emitting ") + what);
    }
}

}  // namespace

void write_round_csv(std::span<const RoundReport> reports, std::ostream& out) {
    out << "round,alive_before,alive_after,packets_delivered,packets_lost,data_msgs,"
           "ctrl_msgs,hypothetical_sync_msgs,energy_tx_j,energy_rx_j,energy_ctrl_j,"
           "residual_mean_j,residual_min_j,residual_max_j,residual_stddev_j,deaths\n";
    require_good(out, "round csv header");
    for (const RoundReport& r : reports) {
        out << r.round << ',' << r.alive_before << ',' << r.alive_after << ','
            << r.packets_delivered << ',' << r.packets_lost << ',' << r.data_msgs << ','
            << r.ctrl_msgs << ',' << r.hypothetical_sync_msgs << ',' << fmt(r.energy_tx_j)
            << ',' << fmt(r.energy_rx_j) << ',' << fmt(r.energy_ctrl_j) << ','
            << fmt(r.residual_mean_j) << ',' << fmt(r.residual_min_j) << ','
            << fmt(r.residual_max_j) << ',' << fmt(r.residual_stddev_j) << ','
            << join_ids(r.deaths) << '\n';
        require_good(out, "round csv row");
    }
}

void write_summary_csv(const RunSummary& s, std::ostream& out) {
    out << "protocol,seed,node_count,rounds,first_death_round,first_death_censored,"
           "rounds_to_10pct_dead,rounds_to_10pct_censored,rounds_to_50pct_dead,"
           "rounds_to_50pct_censored,last_death_round,last_death_censored,usable_capacity,"
           "death_round_mean,death_round_stddev,death_round_min,death_round_max,"
           "death_round_cv,final_residual_mean_j,final_residual_stddev_j,"
           "final_residual_min_j,final_residual_max_j,final_residual_cv,total_data_msgs,"
           "total_ctrl_msgs,ctrl_per_node_round,ctrl_energy_fraction,"
           "total_hypothetical_sync_msgs\n";
    require_good(out, "summary csv header");
    const LifetimeStats& lt = s.lifetime;
    out << s.protocol << ',' << s.seed << ',' << s.node_count << ',' << s.rounds_executed
        << ',' << lt.first_death_round << ',' << (lt.first_death_censored ? 1 : 0) << ','
        << lt.rounds_to_10pct_dead << ',' << (lt.rounds_to_10pct_censored ? 1 : 0) << ','
        << lt.rounds_to_50pct_dead << ',' << (lt.rounds_to_50pct_censored ? 1 : 0) << ','
        << lt.last_death_round << ',' << (lt.last_death_censored ? 1 : 0) << ','
        << fmt(lt.usable_capacity) << ',' << fmt(s.death_rounds.mean) << ','
        << fmt(s.death_rounds.stddev) << ',' << fmt(s.death_rounds.min) << ','
        << fmt(s.death_rounds.max) << ',' << fmt(s.death_rounds.cv) << ','
        << fmt(s.final_residuals.mean) << ',' << fmt(s.final_residuals.stddev) << ','
        << fmt(s.final_residuals.min) << ',' << fmt(s.final_residuals.max) << ','
        << fmt(s.final_residuals.cv) << ',' << s.overhead.total_data_msgs << ','
        << s.overhead.total_ctrl_msgs << ',' << fmt(s.overhead.ctrl_per_node_round) << ','
        << fmt(s.overhead.ctrl_energy_fraction) << ','
        << s.overhead.total_hypothetical_sync_msgs << '\n';
    require_good(out, "summary csv row");
}

std::string round_csv_string(std::span<const RoundReport> reports) {
    std::ostringstream out;
    write_round_csv(reports, out);
    return out.str();
}

std::string summary_csv_string(const RunSummary& summary) {
    std::ostringstream out;
    write_summary_csv(summary, out);
    return out.str();
}

}  // namespace e3dsim
