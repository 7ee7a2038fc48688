#pragma once

#include <cstdint>
#include <vector>

namespace e3dsim {

struct SimConfig;

using NodeId = std::uint32_t;

struct Position {
    double x = 0.0;
    double y = 0.0;
};

/// Euclidean distance in meters.
double distance(Position a, Position b);

/// Static node layout plus the off-field sink. Immutable once built; safe to
/// share read-only across concurrent simulations.
struct Topology {
    std::vector<Position> nodes;  // index is the NodeId
    Position base_station;
    double field_width = 0.0;   // meters
    double field_height = 0.0;  // meters
    double comm_radius = 0.0;   // meters, hard disk for relay candidates

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes.size()); }
    double distance_to_base(NodeId n) const { return distance(nodes[n], base_station); }
};

/// Uniform random placement over the field. The same (config, seed) pair
/// yields the identical layout bit for bit. Throws std::invalid_argument on
/// non-positive field dimensions or node_count == 0.
Topology generate_topology(const SimConfig& config, std::uint64_t seed);

/// Alive strict-progress relays of n: nodes within comm_radius of n that are
/// strictly closer to the base station, ascending id. An empty result means n
/// can only transmit directly to the base station.
std::vector<NodeId> candidate_next_hops(NodeId n, const Topology& topo,
                                        const std::vector<bool>& alive);

}  // namespace e3dsim
