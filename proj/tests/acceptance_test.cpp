// Acceptance suite: runs the full desk-scale evaluation and prints one
// pass/fail line per criterion. Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "e3dsim/config.hpp"
#include "e3dsim/csv.hpp"
#include "e3dsim/engine.hpp"
#include "e3dsim/metrics.hpp"

using namespace e3dsim;

namespace {

constexpr std::uint64_t kFirstSeed = 1;
constexpr std::uint64_t kLastSeed = 20;

const std::vector<ProtocolKind> kAllProtocols = {
    ProtocolKind::Direct, ProtocolKind::E3d, ProtocolKind::IdealDiffusion,
    ProtocolKind::RandomClustering, ProtocolKind::IdealClustering,
};

SimConfig standard_config(ProtocolKind protocol, std::uint64_t seed) {
    SimConfig cfg;  // the documented defaults are the standard config
    cfg.protocol = protocol;
    cfg.seed = seed;
    return cfg;
}

struct Run {
    SimulationResult result;
    RunSummary summary;
};

using Sweep = std::map<ProtocolKind, std::vector<Run>>;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> first_deaths(const std::vector<Run>& runs) {
    std::vector<double> out;
    for (const Run& r : runs) {
        out.push_back(static_cast<double>(r.summary.lifetime.first_death_round));
    }
    return out;
}

struct Criterion {
    int id;
    std::string label;
    bool pass;
    std::string detail;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// --- criteria -------------------------------------------------------------

Criterion determinism(const Sweep& sweep) {
    bool pass = true;
    std::string detail;
    for (ProtocolKind protocol : kAllProtocols) {
        const SimConfig cfg = standard_config(protocol, kFirstSeed);
        const SimulationResult replay = run_simulation(cfg);
        const std::string a = round_csv_string(sweep.at(protocol)[0].result.reports);
        const std::string b = round_csv_string(replay.reports);
        if (a != b) {
            pass = false;
            detail += std::string(to_string(protocol)) + " differs; ";
        }
    }
    if (pass) {
        detail = "all 5 protocols replay byte-identically at seed 1";
    }
    return {1, "determinism: identical (config, seed) gives byte-identical rounds CSV",
            pass, detail};
}

Criterion conservation(const Sweep& sweep) {
    double worst = 0.0;
    for (const auto& [protocol, runs] : sweep) {
        for (const Run& run : runs) {
            const double node_count =
                static_cast<double>(run.result.topology.node_count());
            const double initial = node_count * run.result.config.initial_energy_j;
            double accounted = 0.0;
            for (const Battery& b : run.result.final_batteries) {
                accounted += b.residual() + b.spent_total();
            }
            worst = std::max(worst, std::abs(accounted - initial) / initial);
        }
    }
    return {2, "energy conservation: initial == residual + spent (rel err <= 1e-9)",
            worst <= 1e-9, fmt("worst relative error %.3e over %zu runs", worst,
                               sweep.size() * (kLastSeed - kFirstSeed + 1))};
}

Criterion closed_form_oracle() {
    SimConfig cfg = standard_config(ProtocolKind::Direct, 1);
    cfg.node_count = 1;

    Topology topo;
    topo.nodes = {{50.0, 50.0}};
    topo.base_station = {cfg.bs_x_m, cfg.bs_y_m};
    topo.field_width = cfg.field_width_m;
    topo.field_height = cfg.field_height_m;
    topo.comm_radius = cfg.comm_radius_m;

    // Arithmetic oracle: per-round cost and the exact number of full rounds.
    const double bits = cfg.data_packet_bits;
    const double d = 150.0;  // (50,50) to (50,200)
    const double per_round = cfg.e_elec_j_per_bit * bits +
                             cfg.eps_amp_j_per_bit_m2 * bits * d * d;
    const auto expected =
        static_cast<std::uint32_t>(std::floor(cfg.initial_energy_j / per_round));

    const SimulationResult result = run_simulation(cfg, topo);
    const bool pass = result.death_rounds[0].has_value() &&
                      *result.death_rounds[0] == expected &&
                      result.reports.size() == expected + 1;
    return {3, "closed-form oracle: lone direct node dies exactly at floor(E0/cost)",
            pass,
            fmt("expected round %u, got %u (per-round cost %.6e J)", expected,
                result.death_rounds[0].value_or(0), per_round)};
}

Criterion loop_freedom(const Sweep& sweep) {
    bool pass = true;
    std::uint64_t worst_hops = 0;
    for (ProtocolKind protocol :
         {ProtocolKind::Direct, ProtocolKind::E3d, ProtocolKind::IdealDiffusion}) {
        for (const Run& run : sweep.at(protocol)) {
            worst_hops = std::max(worst_hops, run.result.max_packet_hops);
            if (run.result.max_packet_hops > run.result.topology.node_count()) {
                pass = false;
            }
            for (const RoundReport& r : run.result.reports) {
                if (r.packets_delivered + r.packets_lost != r.alive_before) {
                    pass = false;
                }
            }
        }
    }
    return {4, "loop freedom: every packet terminates within node_count hops", pass,
            fmt("max hop count seen: %llu (bound 100)",
                static_cast<unsigned long long>(worst_hops))};
}

Criterion lifetime_claim(const Sweep& sweep) {
    const double e3d = median(first_deaths(sweep.at(ProtocolKind::E3d)));
    const double direct = median(first_deaths(sweep.at(ProtocolKind::Direct)));
    return {5, "lifetime: median first death of e3d exceeds direct transmission",
            e3d > direct, fmt("e3d %.1f vs direct %.1f", e3d, direct)};
}

Criterion balance_claim(const Sweep& sweep) {
    auto stddevs = [](const std::vector<Run>& runs) {
        std::vector<double> out;
        for (const Run& r : runs) {
            out.push_back(r.summary.death_rounds.stddev);
        }
        return out;
    };
    const double e3d = median(stddevs(sweep.at(ProtocolKind::E3d)));
    const double direct = median(stddevs(sweep.at(ProtocolKind::Direct)));
    return {6, "balance: death-round spread under e3d is below direct", e3d < direct,
            fmt("median stddev e3d %.2f vs direct %.2f rounds", e3d, direct)};
}

Criterion near_optimality(const Sweep& sweep) {
    const double e3d = median(first_deaths(sweep.at(ProtocolKind::E3d)));
    const double ideal = median(first_deaths(sweep.at(ProtocolKind::IdealDiffusion)));
    return {7, "near-optimality: e3d first death >= 0.7x ideal diffusion",
            e3d >= 0.7 * ideal, fmt("e3d %.1f vs ideal %.1f (ratio %.3f)", e3d, ideal,
                                    ideal > 0.0 ? e3d / ideal : 0.0)};
}

Criterion overhead_claim(const Sweep& sweep) {
    bool pass = true;
    std::string detail;
    for (ProtocolKind protocol :
         {ProtocolKind::IdealDiffusion, ProtocolKind::IdealClustering}) {
        for (const Run& run : sweep.at(protocol)) {
            if (run.summary.overhead.total_hypothetical_sync_msgs <=
                run.summary.overhead.total_data_msgs) {
                pass = false;
                detail += std::string(to_string(protocol)) + " sync <= data; ";
            }
        }
    }
    double worst_rate = 0.0;
    double worst_fraction = 0.0;
    for (const Run& run : sweep.at(ProtocolKind::E3d)) {
        worst_rate = std::max(worst_rate, run.summary.overhead.ctrl_per_node_round);
        worst_fraction =
            std::max(worst_fraction, run.summary.overhead.ctrl_energy_fraction);
    }
    if (worst_rate >= 1.0 || worst_fraction >= 0.05) {
        pass = false;
    }
    detail += fmt("e3d worst ctrl/node/round %.4f, worst ctrl energy fraction %.4f",
                  worst_rate, worst_fraction);
    return {8, "overhead: ideal sync dwarfs data; e3d control stays minimal", pass,
            detail};
}

Criterion clustering_variability(const Sweep& sweep) {
    const auto cv_of = [](const std::vector<Run>& runs) {
        return distribution_stats(first_deaths(runs)).cv;
    };
    const double random_cv = cv_of(sweep.at(ProtocolKind::RandomClustering));
    const double e3d_cv = cv_of(sweep.at(ProtocolKind::E3d));
    return {9, "variability: random clustering first-death CV exceeds e3d",
            random_cv > e3d_cv, fmt("random %.4f vs e3d %.4f", random_cv, e3d_cv)};
}

Criterion round_zero_coincidence() {
    bool pass = true;
    for (std::uint64_t seed = kFirstSeed; seed <= kLastSeed; ++seed) {
        const SimState e3d = make_initial_state(standard_config(ProtocolKind::E3d, seed));
        const SimState ideal =
            make_initial_state(standard_config(ProtocolKind::IdealDiffusion, seed));
        if (plan_round(e3d).next_hop != plan_round(ideal).next_hop) {
            pass = false;
        }
    }
    return {10, "round-0 coincidence: e3d and ideal diffusion plan identically", pass,
            "first-round plans compared for seeds 1..20"};
}

Criterion scale_invariance() {
    bool pass = true;
    for (ProtocolKind protocol : kAllProtocols) {
        for (std::uint64_t seed = kFirstSeed; seed <= 5; ++seed) {
            SimConfig base = standard_config(protocol, seed);
            SimConfig scaled = base;
            scaled.initial_energy_j *= 10.0;
            const RoutingPlan a = plan_round(make_initial_state(base));
            const RoutingPlan b = plan_round(make_initial_state(scaled));
            if (a.next_hop != b.next_hop || a.cluster_heads != b.cluster_heads) {
                pass = false;
            }
        }
    }
    return {11, "scale invariance: 10x initial energy leaves first-round plans intact",
            pass, "all 5 protocols, seeds 1..5"};
}

Criterion metrics_unit_checks() {
    bool pass = true;
    std::string detail = "fixtures match";

    const auto lt = lifetime_stats({{3u}, {5u}, {9u}}, 100, {3, 3, 2, 2, 1, 1, 1, 1, 1, 1});
    if (lt.first_death_round != 3 || lt.rounds_to_50pct_dead != 5 ||
        lt.last_death_round != 9) {
        pass = false;
        detail = "lifetime fixture [3,5,9] mismatch";
    }
    const auto clustered =
        lifetime_stats({{10u}, {10u}, {10u}, {10u}}, 100, std::vector<std::uint32_t>(11, 4));
    if (clustered.first_death_round != 10 || clustered.last_death_round != 10) {
        pass = false;
        detail = "lifetime fixture [10,10,10,10] mismatch";
    }

    const double ones[] = {1.0, 1.0, 1.0};
    const double pair[] = {0.0, 2.0};
    const double single[] = {5.0};
    const auto d1 = distribution_stats(ones);
    const auto d2 = distribution_stats(pair);
    const auto d3 = distribution_stats(single);
    if (std::abs(d1.mean - 1.0) > 1e-12 || d1.stddev != 0.0) {
        pass = false;
        detail = "distribution fixture [1,1,1] mismatch";
    }
    if (std::abs(d2.mean - 1.0) > 1e-12 || std::abs(d2.stddev - 1.0) > 1e-12) {
        pass = false;
        detail = "distribution fixture [0,2] mismatch";
    }
    if (std::abs(d3.mean - 5.0) > 1e-12 || d3.stddev != 0.0 || d3.cv != 0.0) {
        pass = false;
        detail = "distribution fixture [5] mismatch";
    }
    return {12, "metrics unit checks: hand oracles match exactly", pass, detail};
}

}  // namespace

int main() {
    std::printf("e3dsim acceptance: standard config, %d node(s), seeds %llu..%llu\n",
                SimConfig{}.node_count, static_cast<unsigned long long>(kFirstSeed),
                static_cast<unsigned long long>(kLastSeed));

    Sweep sweep;
    for (ProtocolKind protocol : kAllProtocols) {
        for (std::uint64_t seed = kFirstSeed; seed <= kLastSeed; ++seed) {
            SimulationResult result = run_simulation(standard_config(protocol, seed));
            RunSummary summary = summarize(result);
            sweep[protocol].push_back(Run{std::move(result), std::move(summary)});
        }
        const auto& runs = sweep[protocol];
        std::printf("  swept %-18s median first death %6.1f, median rounds %6.1f\n",
                    std::string(to_string(protocol)).c_str(),
                    median(first_deaths(runs)), [&] {
                        std::vector<double> rounds;
                        for (const Run& r : runs) {
                            rounds.push_back(
                                static_cast<double>(r.summary.rounds_executed));
                        }
                        return median(rounds);
                    }());
    }

    const std::vector<Criterion> criteria = {
        determinism(sweep),
        conservation(sweep),
        closed_form_oracle(),
        loop_freedom(sweep),
        lifetime_claim(sweep),
        balance_claim(sweep),
        near_optimality(sweep),
        overhead_claim(sweep),
        clustering_variability(sweep),
        round_zero_coincidence(),
        scale_invariance(),
        metrics_unit_checks(),
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::printf("[%s] %02d %s -- %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), c.detail.c_str());
        if (!c.pass) {
            ++failures;
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
