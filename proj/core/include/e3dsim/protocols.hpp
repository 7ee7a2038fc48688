#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "e3dsim/rng.hpp"
#include "e3dsim/topology.hpp"

namespace e3dsim {

enum class ProtocolKind {
    Direct,
    E3d,
    IdealDiffusion,
    RandomClustering,
    IdealClustering,
};

std::optional<ProtocolKind> protocol_from_string(std::string_view name);
std::string_view to_string(ProtocolKind kind);

/// All config-string names, in declaration order (used by error messages).
std::span<const std::string_view> protocol_names();

/// next_hop value meaning "transmit directly to the base station".
inline constexpr NodeId kBaseStation = std::numeric_limits<NodeId>::max();

/// One node's knowledge about a neighbor, as of that neighbor's most recent
/// status broadcast. Stale in between broadcasts; that staleness is the whole
/// difference between e3D and its ideal counterpart.
struct NeighborEntry {
    NodeId id = 0;
    Position position;
    double last_known_residual = 0.0;
    bool busy = false;  // set for exactly the round after a busy beacon
    std::uint32_t last_broadcast_round = 0;
};

/// Per-node view of every peer within comm_radius, sorted by id.
using NeighborTable = std::vector<NeighborEntry>;

/// Tables as of round 0: every in-radius peer at full initial energy.
std::vector<NeighborTable> make_neighbor_tables(const Topology& topo, double initial_energy);

const NeighborEntry* find_neighbor(const NeighborTable& table, NodeId id);
NeighborEntry* find_neighbor(NeighborTable& table, NodeId id);

struct ControlMessage {
    NodeId sender = 0;
    std::vector<NodeId> receivers;  // broadcast: everyone in range; unicast: one entry
    std::uint32_t bits = 0;
    bool is_broadcast = false;
};

/// One round's routing decision: where every alive node forwards its packet,
/// plus the control traffic the decision required.
struct RoutingPlan {
    std::map<NodeId, NodeId> next_hop;  // alive nodes only; value may be kBaseStation
    std::set<NodeId> cluster_heads;     // clustering protocols only
    std::vector<ControlMessage> control_msgs;
    std::uint64_t hypothetical_sync_count = 0;  // ideal variants: counted, never charged
};

struct E3dParams {
    double w_e = 0.4;  // residual-energy weight
    double w_l = 0.2;  // load weight
    double w_d = 0.4;  // relay-geometry weight
    std::uint32_t load_max = 5;  // busy-beacon threshold, relays per round
};

/// Weights scaled to sum to 1 (the three terms are dimensionless fractions).
E3dParams normalized(const E3dParams& params);

/// Relay score of candidate c as seen by sender n; lower is better.
/// w_e*(1 - residual/initial) + w_l*busy + w_d*(d(n,c)^2 + d(c,BS)^2)/d(n,BS)^2.
double e3d_score(NodeId n, const NeighborEntry& c, const Topology& topo,
                 const E3dParams& params, double initial_energy);

/// Score of skipping every relay and transmitting straight to the sink. The
/// scoring formula applied to the base station itself: geometry ratio exactly
/// 1, no battery to drain, never busy.
double e3d_base_station_score(const E3dParams& params);

/// Everyone transmits straight to the base station. No control traffic.
RoutingPlan plan_direct(const std::vector<bool>& alive);

/// Realistic diffusion: each sender ranks its strict-progress candidates (and
/// the base station itself) by e3d_score using its possibly-stale neighbor
/// table; ties break toward the lower id. `broadcasters` lists the nodes whose
/// status broadcast is delivered this round; the plan carries the matching
/// control messages (receivers are the alive nodes within comm_radius).
RoutingPlan plan_e3d(const Topology& topo, const std::vector<bool>& alive,
                     const std::vector<NeighborTable>& tables, double initial_energy,
                     const E3dParams& params, std::span<const NodeId> broadcasters,
                     std::uint32_t ctrl_bits);

/// Upper-bound diffusion: same rule as plan_e3d but scored against exact
/// current residuals and exact previous-round relay counts
/// (load term w_l*min(prev_relays/load_max, 1)). Control traffic is free;
/// the sync messages global knowledge would need are counted as alive*(alive-1).
RoutingPlan plan_ideal_diffusion(const Topology& topo, const std::vector<bool>& alive,
                                 std::span<const double> exact_residuals,
                                 std::span<const std::uint32_t> prev_relay_counts,
                                 double initial_energy, const E3dParams& params);

/// Random clustering: every alive node self-elects head with probability
/// head_prob; non-heads join the nearest alive head (tie: lower head id);
/// heads transmit to the base station. No heads elected means everyone falls
/// back to direct transmission for the round. Control traffic: one local head
/// advertisement per head plus one unicast join per member. Throws
/// std::invalid_argument if head_prob is outside [0, 1].
RoutingPlan plan_random_clustering(const Topology& topo, const std::vector<bool>& alive,
                                   double head_prob, Rng& rng, std::uint32_t ctrl_bits);

/// Upper-bound clustering: the max(1, round(head_prob*alive)) highest-residual
/// alive nodes (tie: lower id) become heads; members join the nearest head.
/// Control traffic is free; hypothetical sync is alive*(alive-1).
RoutingPlan plan_ideal_clustering(const Topology& topo, const std::vector<bool>& alive,
                                  std::span<const double> exact_residuals, double head_prob);

}  // namespace e3dsim
