#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "e3dsim/config.hpp"
#include "e3dsim/energy.hpp"
#include "e3dsim/protocols.hpp"
#include "e3dsim/topology.hpp"

namespace e3dsim {

/// Per-round ledger; one of these per executed round. Rounds are 0-indexed:
/// the first executed round is round 0, and a node's death round is the index
/// of the round in which it died.
struct RoundReport {
    std::uint32_t round = 0;
    std::uint32_t alive_before = 0;
    std::uint32_t alive_after = 0;
    std::uint32_t packets_delivered = 0;
    std::uint32_t packets_lost = 0;
    std::uint64_t data_msgs = 0;
    std::uint64_t ctrl_msgs = 0;
    std::uint64_t hypothetical_sync_msgs = 0;
    double energy_tx_j = 0.0;
    double energy_rx_j = 0.0;
    double energy_ctrl_j = 0.0;
    double residual_mean_j = 0.0;
    double residual_min_j = 0.0;
    double residual_max_j = 0.0;
    double residual_stddev_j = 0.0;
    std::vector<NodeId> deaths;  // ascending ids of nodes that died this round
};

struct PendingBroadcast {
    NodeId node = 0;
    bool busy = false;
};

/// Complete mutable state of one simulation. Owned by a single run; replaying
/// with the same (config, seed) reproduces every field exactly.
struct SimState {
    std::uint32_t round = 0;
    ProtocolKind protocol = ProtocolKind::Direct;
    Topology topology;
    RadioModel radio;
    double initial_energy = 0.0;
    E3dParams e3d;  // weights already normalized
    double head_prob = 0.0;
    bool aggregate = true;
    std::uint64_t seed = 0;

    std::vector<Battery> batteries;
    std::vector<bool> alive;
    std::vector<std::uint32_t> prev_relay_counts;

    // e3D bookkeeping (unused by the other protocols).
    std::vector<NeighborTable> neighbor_tables;
    std::vector<double> advertised_residual;  // value carried by the last broadcast
    std::vector<PendingBroadcast> pending_broadcasts;  // triggered last round, sent this round
    std::vector<NodeId> broadcasts_this_round;         // filled by deliver_pending_broadcasts

    std::uint64_t max_packet_hops = 0;

    std::uint32_t alive_count() const;
};

SimState make_initial_state(const SimConfig& config);
SimState make_initial_state(const SimConfig& config, Topology topology);

/// Apply last round's triggered e3D broadcasts to every receiver's neighbor
/// table and stage them for charging. No-op for the other protocols.
void deliver_pending_broadcasts(SimState& state);

/// This round's RoutingPlan; pure with respect to the state. Random-clustering
/// elections draw from a substream derived from (seed, round), so the plan is
/// a pure function of (round, alive set, seed).
RoutingPlan plan_round(const SimState& state);

/// Engine-level sanity: plan totality, strict progress for diffusion targets,
/// member->head/head->base shape for clustering. Throws std::logic_error.
void validate_plan(const RoutingPlan& plan, const SimState& state);

/// One full round: deliver broadcasts, plan, charge control traffic, forward
/// every alive node's packet to the base station or a death-drop, account
/// everything, stage next round's broadcasts. Advances state.round.
RoundReport run_round(SimState& state);

struct SimulationResult {
    SimConfig config;
    Topology topology;
    std::vector<RoundReport> reports;
    std::vector<std::optional<std::uint32_t>> death_rounds;  // per node; empty = survivor
    std::vector<Battery> final_batteries;
    std::uint64_t max_packet_hops = 0;
};

/// Run until every node is dead or max_rounds is reached.
SimulationResult run_simulation(const SimConfig& config);
SimulationResult run_simulation(const SimConfig& config, Topology topology);

}  // namespace e3dsim
