#include "e3dsim/topology.hpp"

#include <cmath>
#include <stdexcept>

#include "e3dsim/config.hpp"
#include "e3dsim/rng.hpp"

namespace e3dsim {

double distance(Position a, Position b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Topology generate_topology(const SimConfig& config, std::uint64_t seed) {
    if (config.node_count == 0) {
        throw std::invalid_argument("generate_topology: node_count must be >= 1");
    }
    if (!(config.field_width_m > 0.0) || !(config.field_height_m > 0.0)) {
        throw std::invalid_argument("generate_topology: field dimensions must be positive");
    }

    Topology topo;
    topo.field_width = config.field_width_m;
    topo.field_height = config.field_height_m;
    topo.comm_radius = config.comm_radius_m;
    topo.base_station = {config.bs_x_m, config.bs_y_m};
    topo.nodes.reserve(config.node_count);

    Rng rng = Rng::stream(seed, kTopologyStreamTag);
    for (std::uint32_t i = 0; i < config.node_count; ++i) {
        double x = rng.next_double(0.0, config.field_width_m);
        double y = rng.next_double(0.0, config.field_height_m);
        topo.nodes.push_back({x, y});
    }
    return topo;
}

std::vector<NodeId> candidate_next_hops(NodeId n, const Topology& topo,
                                        const std::vector<bool>& alive) {
    std::vector<NodeId> out;
    const Position here = topo.nodes[n];
    const double to_base = distance(here, topo.base_station);
    for (NodeId c = 0; c < topo.node_count(); ++c) {
        if (c == n || !alive[c]) {
            continue;
        }
        if (distance(here, topo.nodes[c]) <= topo.comm_radius &&
            distance(topo.nodes[c], topo.base_station) < to_base) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace e3dsim
