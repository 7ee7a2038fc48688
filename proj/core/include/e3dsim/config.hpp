#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "e3dsim/protocols.hpp"

namespace e3dsim {

/// Full experiment description; enough to replay a run bit for bit.
struct SimConfig {
    double field_width_m = 100.0;
    double field_height_m = 100.0;
    std::uint32_t node_count = 100;
    double bs_x_m = 50.0;
    double bs_y_m = 200.0;
    double initial_energy_j = 0.5;
    std::uint32_t data_packet_bits = 2000;
    std::uint32_t ctrl_packet_bits = 64;
    double e_elec_j_per_bit = 50e-9;
    double eps_amp_j_per_bit_m2 = 100e-12;
    double comm_radius_m = 30.0;
    ProtocolKind protocol = ProtocolKind::E3d;
    std::uint64_t seed = 1;
    std::uint32_t max_rounds = 100000;
    double cluster_head_prob = 0.015;
    bool aggregate = true;
    double w_e = 0.4;
    double w_l = 0.2;
    double w_d = 0.4;
    std::uint32_t load_max = 5;

    bool operator==(const SimConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse `key = value` lines ('#' starts a comment). Unknown keys, malformed
/// numbers, out-of-range values and unknown protocol names raise ConfigError
/// naming the key and line. Omitted keys keep the defaults above.
SimConfig parse_config(std::string_view text);

/// Inverse of parse_config, used for round-trip tests and run provenance.
/// Floats are rendered losslessly.
std::string render_config(const SimConfig& config);

/// Range validation shared by parse_config and programmatic construction.
/// Throws ConfigError on the first violated constraint.
void validate(const SimConfig& config);

}  // namespace e3dsim
