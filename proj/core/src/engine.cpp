#include "e3dsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace e3dsim {
namespace {

void check(bool condition, const char* message) {
    if (!condition) {
        throw std::logic_error(std::string("engine invariant violated: ") + message);
    }
}

// Decile bin of a residual, counted down from 9 for [90%, 100%]. A broadcast
// fires when the bin drops below the bin of the last advertised value, i.e.
// when the residual strictly crosses a 10%-of-initial boundary.
int decile_bin(double residual, double initial) {
    const int bin = static_cast<int>(std::floor(10.0 * residual / initial));
    return std::clamp(bin, 0, 9);
}

struct ResidualStats {
    double mean, min, max, stddev;
};

ResidualStats residual_stats(const std::vector<Battery>& batteries) {
    double sum = 0.0;
    double lo = batteries.front().residual();
    double hi = lo;
    for (const Battery& b : batteries) {
        const double r = b.residual();
        sum += r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double mean = sum / static_cast<double>(batteries.size());
    double sq = 0.0;
    for (const Battery& b : batteries) {
        const double d = b.residual() - mean;
        sq += d * d;
    }
    return {mean, lo, hi, std::sqrt(sq / static_cast<double>(batteries.size()))};
}

}  // namespace

std::uint32_t SimState::alive_count() const {
    return static_cast<std::uint32_t>(std::count(alive.begin(), alive.end(), true));
}

SimState make_initial_state(const SimConfig& config) {
    return make_initial_state(config, generate_topology(config, config.seed));
}

SimState make_initial_state(const SimConfig& config, Topology topology) {
    validate(config);
    SimState s;
    s.protocol = config.protocol;
    s.topology = std::move(topology);
    s.radio = RadioModel{config.e_elec_j_per_bit, config.eps_amp_j_per_bit_m2,
                         config.data_packet_bits, config.ctrl_packet_bits};
    s.initial_energy = config.initial_energy_j;
    s.e3d = normalized(E3dParams{config.w_e, config.w_l, config.w_d, config.load_max});
    s.head_prob = config.cluster_head_prob;
    s.aggregate = config.aggregate;
    s.seed = config.seed;

    const std::uint32_t n = s.topology.node_count();
    s.batteries.assign(n, Battery(config.initial_energy_j));
    s.alive.assign(n, true);
    s.prev_relay_counts.assign(n, 0);
    if (s.protocol == ProtocolKind::E3d) {
        s.neighbor_tables = make_neighbor_tables(s.topology, s.initial_energy);
        s.advertised_residual.assign(n, s.initial_energy);
    }
    return s;
}

void deliver_pending_broadcasts(SimState& s) {
    s.broadcasts_this_round.clear();
    if (s.protocol != ProtocolKind::E3d) {
        s.pending_broadcasts.clear();
        return;
    }
    for (const PendingBroadcast& pb : s.pending_broadcasts) {
        if (!s.alive[pb.node]) {
            continue;
        }
        // A node that cannot afford the transmit stays silent; otherwise the
        // tables would reflect a broadcast that is never charged or counted.
        double reach = 0.0;
        for (NodeId m = 0; m < s.topology.node_count(); ++m) {
            if (m == pb.node || !s.alive[m]) {
                continue;
            }
            const double d = distance(s.topology.nodes[pb.node], s.topology.nodes[m]);
            if (d <= s.topology.comm_radius) {
                reach = std::max(reach, d);
            }
        }
        if (s.batteries[pb.node].residual() < tx_cost(s.radio, s.radio.ctrl_bits, reach)) {
            continue;
        }

        const double value = s.batteries[pb.node].residual();
        for (NodeId m = 0; m < s.topology.node_count(); ++m) {
            if (m == pb.node || !s.alive[m]) {
                continue;
            }
            if (NeighborEntry* entry = find_neighbor(s.neighbor_tables[m], pb.node)) {
                entry->last_known_residual = value;
                entry->busy = pb.busy;
                entry->last_broadcast_round = s.round;
            }
        }
        s.advertised_residual[pb.node] = value;
        s.broadcasts_this_round.push_back(pb.node);
    }
    s.pending_broadcasts.clear();
}

RoutingPlan plan_round(const SimState& s) {
    switch (s.protocol) {
        case ProtocolKind::Direct:
            return plan_direct(s.alive);
        case ProtocolKind::E3d:
            return plan_e3d(s.topology, s.alive, s.neighbor_tables, s.initial_energy, s.e3d,
                            s.broadcasts_this_round, s.radio.ctrl_bits);
        case ProtocolKind::IdealDiffusion: {
            std::vector<double> residuals;
            residuals.reserve(s.batteries.size());
            for (const Battery& b : s.batteries) {
                residuals.push_back(b.residual());
            }
            return plan_ideal_diffusion(s.topology, s.alive, residuals, s.prev_relay_counts,
                                        s.initial_energy, s.e3d);
        }
        case ProtocolKind::RandomClustering: {
            Rng rng = Rng::stream(s.seed, kClusterStreamTag, s.round);
            return plan_random_clustering(s.topology, s.alive, s.head_prob, rng,
                                          s.radio.ctrl_bits);
        }
        case ProtocolKind::IdealClustering: {
            std::vector<double> residuals;
            residuals.reserve(s.batteries.size());
            for (const Battery& b : s.batteries) {
                residuals.push_back(b.residual());
            }
            return plan_ideal_clustering(s.topology, s.alive, residuals, s.head_prob);
        }
    }
    throw std::logic_error("plan_round: unknown protocol");
}

void validate_plan(const RoutingPlan& plan, const SimState& s) {
    const Topology& topo = s.topology;
    for (NodeId n = 0; n < topo.node_count(); ++n) {
        check(s.alive[n] == (plan.next_hop.count(n) != 0),
              "alive nodes and next_hop keys must coincide");
    }
    const bool clustered = !plan.cluster_heads.empty();
    for (const auto& [sender, dest] : plan.next_hop) {
        if (dest == kBaseStation) {
            if (clustered) {
                // with heads elected, only heads report straight to the sink
                check(plan.cluster_heads.count(sender) != 0,
                      "non-head routed to base in a clustering plan");
            }
            continue;
        }
        check(dest < topo.node_count() && s.alive[dest], "next hop must be an alive node");
        if (clustered) {
            check(plan.cluster_heads.count(dest) != 0, "member must route to a head");
            check(plan.cluster_heads.count(sender) == 0, "head must route to base");
        } else {
            check(topo.distance_to_base(dest) < topo.distance_to_base(sender),
                  "diffusion next hop must make strict progress");
        }
    }
}

RoundReport run_round(SimState& s) {
    const std::uint32_t n = s.topology.node_count();

    deliver_pending_broadcasts(s);
    const RoutingPlan plan = plan_round(s);
    validate_plan(plan, s);

    RoundReport rep;
    rep.round = s.round;
    rep.alive_before = s.alive_count();
    rep.hypothetical_sync_msgs = plan.hypothetical_sync_count;

    std::vector<NodeId> deaths;
    auto charge = [&](NodeId id, double amount, EnergyCategory cat) {
        const DrainOutcome out = s.batteries[id].drain(amount, cat);
        if (out != DrainOutcome::Rejected) {
            switch (cat) {
                case EnergyCategory::Tx: rep.energy_tx_j += amount; break;
                case EnergyCategory::Rx: rep.energy_rx_j += amount; break;
                case EnergyCategory::Ctrl: rep.energy_ctrl_j += amount; break;
            }
        }
        if (out != DrainOutcome::Ok) {
            s.alive[id] = false;
            deaths.push_back(id);
        }
        return out;
    };

    // The packet obligations of this round: every node alive at planning time
    // originates exactly one packet, delivered or lost.
    std::vector<NodeId> senders;
    senders.reserve(rep.alive_before);
    for (NodeId i = 0; i < n; ++i) {
        if (s.alive[i]) {
            senders.push_back(i);
        }
    }

    // Control traffic. Both tx and rx sides are charged to the ctrl category;
    // a broadcast is one transmission at the farthest addressed receiver, paid
    // once, with every alive receiver paying the electronics to hear it.
    for (const ControlMessage& msg : plan.control_msgs) {
        if (!s.alive[msg.sender]) {
            continue;
        }
        double reach = 0.0;
        if (msg.is_broadcast) {
            for (NodeId r : msg.receivers) {
                reach = std::max(reach, distance(s.topology.nodes[msg.sender],
                                                 s.topology.nodes[r]));
            }
        } else {
            check(msg.receivers.size() == 1, "unicast control message needs one receiver");
            reach = distance(s.topology.nodes[msg.sender], s.topology.nodes[msg.receivers[0]]);
        }
        if (charge(msg.sender, tx_cost(s.radio, msg.bits, reach), EnergyCategory::Ctrl) ==
            DrainOutcome::Rejected) {
            continue;  // never transmitted; receivers hear nothing
        }
        rep.ctrl_msgs += 1;
        for (NodeId r : msg.receivers) {
            if (s.alive[r]) {
                charge(r, rx_cost(s.radio, msg.bits), EnergyCategory::Ctrl);
            }
        }
    }

    // Data phase. Senders go farthest-from-base first so relays hold their
    // whole batch before transmitting; with clustering, members go before
    // heads (a head may sit farther from the base than its members).
    const bool clustered = !plan.cluster_heads.empty();
    std::stable_sort(senders.begin(), senders.end(), [&](NodeId a, NodeId b) {
        const bool a_head = clustered && plan.cluster_heads.count(a) != 0;
        const bool b_head = clustered && plan.cluster_heads.count(b) != 0;
        if (a_head != b_head) {
            return !a_head;
        }
        const double da = s.topology.distance_to_base(a);
        const double db = s.topology.distance_to_base(b);
        if (da != db) {
            return da > db;
        }
        return a < b;
    });

    std::vector<std::uint32_t> relay_counts(n, 0);
    std::vector<std::vector<std::uint32_t>> buffers(n);  // hop counts of held packets

    auto note_hops = [&](std::uint32_t hops) {
        check(hops <= n, "packet exceeded the node_count hop bound");
        s.max_packet_hops = std::max<std::uint64_t>(s.max_packet_hops, hops);
    };

    for (NodeId sender : senders) {
        std::vector<std::uint32_t> batch;
        batch.push_back(0);  // own packet first
        batch.insert(batch.end(), buffers[sender].begin(), buffers[sender].end());
        buffers[sender].clear();

        if (!s.alive[sender]) {  // died earlier this round; everything it holds drops
            rep.packets_lost += static_cast<std::uint32_t>(batch.size());
            continue;
        }

        const NodeId dest = plan.next_hop.at(sender);
        if (clustered && s.aggregate && plan.cluster_heads.count(sender) != 0) {
            // Head reports once, whatever it collected folds into one packet.
            const double d = s.topology.distance_to_base(sender);
            if (charge(sender, tx_cost(s.radio, s.radio.data_bits, d), EnergyCategory::Tx) ==
                DrainOutcome::Rejected) {
                rep.packets_lost += static_cast<std::uint32_t>(batch.size());
                continue;
            }
            rep.data_msgs += 1;
            rep.packets_delivered += static_cast<std::uint32_t>(batch.size());
            for (std::uint32_t hops : batch) {
                note_hops(hops + 1);
            }
            continue;
        }

        const double hop_dist = dest == kBaseStation
                                    ? s.topology.distance_to_base(sender)
                                    : distance(s.topology.nodes[sender], s.topology.nodes[dest]);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const DrainOutcome out =
                charge(sender, tx_cost(s.radio, s.radio.data_bits, hop_dist), EnergyCategory::Tx);
            if (out == DrainOutcome::Rejected) {
                rep.packets_lost += static_cast<std::uint32_t>(batch.size() - i);
                break;
            }
            rep.data_msgs += 1;
            const std::uint32_t hops = batch[i] + 1;
            note_hops(hops);
            if (dest == kBaseStation) {
                rep.packets_delivered += 1;
            } else if (!s.alive[dest]) {
                rep.packets_lost += 1;  // transmitted into a dead relay
            } else if (charge(dest, rx_cost(s.radio, s.radio.data_bits), EnergyCategory::Rx) ==
                       DrainOutcome::Rejected) {
                rep.packets_lost += 1;
            } else {
                buffers[dest].push_back(hops);
                relay_counts[dest] += 1;
            }
            if (out == DrainOutcome::SpentAndDied) {
                rep.packets_lost += static_cast<std::uint32_t>(batch.size() - i - 1);
                break;
            }
        }
    }

    check(rep.packets_delivered + rep.packets_lost == rep.alive_before,
          "every packet must be delivered or lost");

    // Stage next round's e3D broadcasts: decile crossing since the last
    // advertisement, or a busy beacon after relaying load_max+ packets.
    if (s.protocol == ProtocolKind::E3d) {
        for (NodeId i = 0; i < n; ++i) {
            if (!s.alive[i]) {
                continue;
            }
            const bool busy = relay_counts[i] >= s.e3d.load_max;
            const bool crossed =
                decile_bin(s.batteries[i].residual(), s.initial_energy) <
                decile_bin(s.advertised_residual[i], s.initial_energy);
            if (busy || crossed) {
                s.pending_broadcasts.push_back(PendingBroadcast{i, busy});
            }
        }
        // Busy flags last exactly one round: the one just planned.
        for (NeighborTable& table : s.neighbor_tables) {
            for (NeighborEntry& entry : table) {
                entry.busy = false;
            }
        }
    }

    s.prev_relay_counts = std::move(relay_counts);

    std::sort(deaths.begin(), deaths.end());
    rep.deaths = std::move(deaths);
    rep.alive_after = s.alive_count();

    const ResidualStats stats = residual_stats(s.batteries);
    rep.residual_mean_j = stats.mean;
    rep.residual_min_j = stats.min;
    rep.residual_max_j = stats.max;
    rep.residual_stddev_j = stats.stddev;

    s.round += 1;
    return rep;
}

SimulationResult run_simulation(const SimConfig& config) {
    return run_simulation(config, generate_topology(config, config.seed));
}

SimulationResult run_simulation(const SimConfig& config, Topology topology) {
    SimState s = make_initial_state(config, std::move(topology));

    SimulationResult result;
    result.config = config;
    result.topology = s.topology;
    result.death_rounds.assign(s.topology.node_count(), std::nullopt);

    while (s.round < config.max_rounds && s.alive_count() > 0) {
        RoundReport rep = run_round(s);
        for (NodeId id : rep.deaths) {
            result.death_rounds[id] = rep.round;
        }
        result.reports.push_back(std::move(rep));
    }

    result.final_batteries = s.batteries;
    result.max_packet_hops = s.max_packet_hops;
    return result;
}

}  // namespace e3dsim
