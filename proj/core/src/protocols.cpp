#include "e3dsim/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace e3dsim {
namespace {

constexpr std::array<std::string_view, 5> kProtocolNames = {
    "direct", "e3d", "ideal_diffusion", "random_clustering", "ideal_clustering",
};

// (d(n,c)^2 + d(c,BS)^2) / d(n,BS)^2 -- the ratio of relay amplifier energy to
// direct-transmission amplifier energy, so 1.0 marks the break-even with
// skipping the relay.
double geometry_ratio(Position n, Position c, Position base) {
    const double d_nc = distance(n, c);
    const double d_cb = distance(c, base);
    const double d_nb = distance(n, base);
    return (d_nc * d_nc + d_cb * d_cb) / (d_nb * d_nb);
}

double diffusion_score(double energy_fraction_spent, double load_term, double geometry,
                       const E3dParams& p) {
    return p.w_e * energy_fraction_spent + p.w_l * load_term + p.w_d * geometry;
}

// Argmin over strict-progress candidates plus the base station itself; the
// base station scores w_d (ratio exactly 1, full energy, never busy) and wins
// only strictly, so candidate ties still resolve to the lower id.
template <typename ScoreFn>
NodeId pick_next_hop(NodeId n, const Topology& topo, const std::vector<bool>& alive,
                     const E3dParams& params, ScoreFn&& score_of) {
    NodeId best = kBaseStation;
    double best_score = e3d_base_station_score(params);
    for (NodeId c : candidate_next_hops(n, topo, alive)) {
        const double s = score_of(c);
        if (s < best_score) {
            best = c;
            best_score = s;
        }
    }
    return best;
}

std::vector<NodeId> alive_within_radius(NodeId center, const Topology& topo,
                                        const std::vector<bool>& alive) {
    std::vector<NodeId> out;
    for (NodeId m = 0; m < topo.node_count(); ++m) {
        if (m != center && alive[m] &&
            distance(topo.nodes[center], topo.nodes[m]) <= topo.comm_radius) {
            out.push_back(m);
        }
    }
    return out;
}

}  // namespace

std::optional<ProtocolKind> protocol_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kProtocolNames.size(); ++i) {
        if (name == kProtocolNames[i]) {
            return static_cast<ProtocolKind>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(ProtocolKind kind) {
    return kProtocolNames[static_cast<std::size_t>(kind)];
}

std::span<const std::string_view> protocol_names() {
    return kProtocolNames;
}

std::vector<NeighborTable> make_neighbor_tables(const Topology& topo, double initial_energy) {
    std::vector<NeighborTable> tables(topo.node_count());
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        for (NodeId m = 0; m < topo.node_count(); ++m) {
            if (m == n || distance(topo.nodes[n], topo.nodes[m]) > topo.comm_radius) {
                continue;
            }
            tables[n].push_back(NeighborEntry{m, topo.nodes[m], initial_energy, false, 0});
        }
    }
    return tables;
}

const NeighborEntry* find_neighbor(const NeighborTable& table, NodeId id) {
    auto it = std::lower_bound(table.begin(), table.end(), id,
                               [](const NeighborEntry& e, NodeId v) { return e.id < v; });
    return (it != table.end() && it->id == id) ? &*it : nullptr;
}

NeighborEntry* find_neighbor(NeighborTable& table, NodeId id) {
    return const_cast<NeighborEntry*>(
        find_neighbor(static_cast<const NeighborTable&>(table), id));
}

E3dParams normalized(const E3dParams& params) {
    const double sum = params.w_e + params.w_l + params.w_d;
    if (!(sum > 0.0)) {
        throw std::invalid_argument("e3d weights must have a positive sum");
    }
    E3dParams out = params;
    out.w_e /= sum;
    out.w_l /= sum;
    out.w_d /= sum;
    return out;
}

double e3d_score(NodeId n, const NeighborEntry& c, const Topology& topo,
                 const E3dParams& params, double initial_energy) {
    const double spent_fraction = 1.0 - c.last_known_residual / initial_energy;
    const double load = c.busy ? 1.0 : 0.0;
    return diffusion_score(spent_fraction, load,
                           geometry_ratio(topo.nodes[n], c.position, topo.base_station),
                           params);
}

double e3d_base_station_score(const E3dParams& params) {
    return params.w_d;
}

RoutingPlan plan_direct(const std::vector<bool>& alive) {
    RoutingPlan plan;
    for (NodeId n = 0; n < alive.size(); ++n) {
        if (alive[n]) {
            plan.next_hop[n] = kBaseStation;
        }
    }
    return plan;
}

RoutingPlan plan_e3d(const Topology& topo, const std::vector<bool>& alive,
                     const std::vector<NeighborTable>& tables, double initial_energy,
                     const E3dParams& params, std::span<const NodeId> broadcasters,
                     std::uint32_t ctrl_bits) {
    RoutingPlan plan;
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        if (!alive[n]) {
            continue;
        }
        plan.next_hop[n] = pick_next_hop(n, topo, alive, params, [&](NodeId c) {
            const NeighborEntry* entry = find_neighbor(tables[n], c);
            if (entry == nullptr) {
                throw std::logic_error("plan_e3d: candidate missing from neighbor table");
            }
            return e3d_score(n, *entry, topo, params, initial_energy);
        });
    }
    for (NodeId b : broadcasters) {
        plan.control_msgs.push_back(
            ControlMessage{b, alive_within_radius(b, topo, alive), ctrl_bits, true});
    }
    return plan;
}

RoutingPlan plan_ideal_diffusion(const Topology& topo, const std::vector<bool>& alive,
                                 std::span<const double> exact_residuals,
                                 std::span<const std::uint32_t> prev_relay_counts,
                                 double initial_energy, const E3dParams& params) {
    RoutingPlan plan;
    std::uint64_t alive_count = 0;
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        if (!alive[n]) {
            continue;
        }
        ++alive_count;
        plan.next_hop[n] = pick_next_hop(n, topo, alive, params, [&](NodeId c) {
            const double spent_fraction = 1.0 - exact_residuals[c] / initial_energy;
            const double load = std::min(
                static_cast<double>(prev_relay_counts[c]) / params.load_max, 1.0);
            return diffusion_score(spent_fraction, load,
                                   geometry_ratio(topo.nodes[n], topo.nodes[c],
                                                  topo.base_station),
                                   params);
        });
    }
    if (alive_count > 0) {
        plan.hypothetical_sync_count = alive_count * (alive_count - 1);
    }
    return plan;
}

RoutingPlan plan_random_clustering(const Topology& topo, const std::vector<bool>& alive,
                                   double head_prob, Rng& rng, std::uint32_t ctrl_bits) {
    if (!(head_prob >= 0.0) || !(head_prob <= 1.0)) {
        throw std::invalid_argument("plan_random_clustering: head_prob must be in [0, 1]");
    }
    RoutingPlan plan;
    // Draws happen in ascending id order for alive nodes only, so the election
    // is a pure function of (alive set, rng stream).
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        if (alive[n] && rng.bernoulli(head_prob)) {
            plan.cluster_heads.insert(n);
        }
    }
    if (plan.cluster_heads.empty()) {
        return plan_direct(alive);  // no heads this round: everyone goes direct
    }

    for (NodeId h : plan.cluster_heads) {
        plan.next_hop[h] = kBaseStation;
        plan.control_msgs.push_back(
            ControlMessage{h, alive_within_radius(h, topo, alive), ctrl_bits, true});
    }
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        if (!alive[n] || plan.cluster_heads.count(n) != 0) {
            continue;
        }
        NodeId nearest = kBaseStation;
        double nearest_dist = 0.0;
        for (NodeId h : plan.cluster_heads) {  // ascending, so ties keep the lower id
            const double d = distance(topo.nodes[n], topo.nodes[h]);
            if (nearest == kBaseStation || d < nearest_dist) {
                nearest = h;
                nearest_dist = d;
            }
        }
        plan.next_hop[n] = nearest;
        plan.control_msgs.push_back(ControlMessage{n, {nearest}, ctrl_bits, false});
    }
    return plan;
}

RoutingPlan plan_ideal_clustering(const Topology& topo, const std::vector<bool>& alive,
                                  std::span<const double> exact_residuals, double head_prob) {
    RoutingPlan plan;
    std::vector<NodeId> candidates;
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        if (alive[n]) {
            candidates.push_back(n);
        }
    }
    if (candidates.empty()) {
        return plan;
    }
    const std::uint64_t alive_count = candidates.size();
    std::uint64_t k = static_cast<std::uint64_t>(
        std::llround(head_prob * static_cast<double>(alive_count)));
    k = std::clamp<std::uint64_t>(k, 1, alive_count);

    std::stable_sort(candidates.begin(), candidates.end(), [&](NodeId a, NodeId b) {
        if (exact_residuals[a] != exact_residuals[b]) {
            return exact_residuals[a] > exact_residuals[b];
        }
        return a < b;
    });
    for (std::uint64_t i = 0; i < k; ++i) {
        plan.cluster_heads.insert(candidates[i]);
    }

    for (NodeId h : plan.cluster_heads) {
        plan.next_hop[h] = kBaseStation;
    }
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        if (!alive[n] || plan.cluster_heads.count(n) != 0) {
            continue;
        }
        NodeId nearest = kBaseStation;
        double nearest_dist = 0.0;
        for (NodeId h : plan.cluster_heads) {
            const double d = distance(topo.nodes[n], topo.nodes[h]);
            if (nearest == kBaseStation || d < nearest_dist) {
                nearest = h;
                nearest_dist = d;
            }
        }
        plan.next_hop[n] = nearest;
    }
    plan.hypothetical_sync_count = alive_count * (alive_count - 1);
    return plan;
}

}  // namespace e3dsim
