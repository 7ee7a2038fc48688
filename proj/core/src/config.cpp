#include "e3dsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace e3dsim {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view value, std::string_view key, int line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(line, "malformed number for '" + std::string(key) + "': '" +
                       std::string(value) + "'");
    }
    return out;
}

template <typename UInt>
UInt parse_uint(std::string_view value, std::string_view key, int line) {
    UInt out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(line, "malformed unsigned integer for '" + std::string(key) + "': '" +
                       std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view value, std::string_view key, int line) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    fail(line, "malformed bool for '" + std::string(key) +
                   "' (expected true/false/1/0): '" + std::string(value) + "'");
}

std::string join_protocol_names() {
    std::string out;
    for (std::string_view name : protocol_names()) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name;
    }
    return out;
}

using Setter = std::function<void(SimConfig&, std::string_view value, int line)>;

const std::map<std::string_view, Setter>& setters() {
    static const std::map<std::string_view, Setter> table = {
        {"field_width_m", [](SimConfig& c, std::string_view v, int l) {
             c.field_width_m = parse_double(v, "field_width_m", l); }},
        {"field_height_m", [](SimConfig& c, std::string_view v, int l) {
             c.field_height_m = parse_double(v, "field_height_m", l); }},
        {"node_count", [](SimConfig& c, std::string_view v, int l) {
             c.node_count = parse_uint<std::uint32_t>(v, "node_count", l); }},
        {"bs_x_m", [](SimConfig& c, std::string_view v, int l) {
             c.bs_x_m = parse_double(v, "bs_x_m", l); }},
        {"bs_y_m", [](SimConfig& c, std::string_view v, int l) {
             c.bs_y_m = parse_double(v, "bs_y_m", l); }},
        {"initial_energy_j", [](SimConfig& c, std::string_view v, int l) {
             c.initial_energy_j = parse_double(v, "initial_energy_j", l); }},
        {"data_packet_bits", [](SimConfig& c, std::string_view v, int l) {
             c.data_packet_bits = parse_uint<std::uint32_t>(v, "data_packet_bits", l); }},
        {"ctrl_packet_bits", [](SimConfig& c, std::string_view v, int l) {
             c.ctrl_packet_bits = parse_uint<std::uint32_t>(v, "ctrl_packet_bits", l); }},
        {"e_elec_j_per_bit", [](SimConfig& c, std::string_view v, int l) {
             c.e_elec_j_per_bit = parse_double(v, "e_elec_j_per_bit", l); }},
        {"eps_amp_j_per_bit_m2", [](SimConfig& c, std::string_view v, int l) {
             c.eps_amp_j_per_bit_m2 = parse_double(v, "eps_amp_j_per_bit_m2", l); }},
        {"comm_radius_m", [](SimConfig& c, std::string_view v, int l) {
             c.comm_radius_m = parse_double(v, "comm_radius_m", l); }},
        {"protocol", [](SimConfig& c, std::string_view v, int l) {
             const auto kind = protocol_from_string(v);
             if (!kind) {
                 fail(l, "unknown protocol '" + std::string(v) +
                             "' (accepted: " + join_protocol_names() + ")");
             }
             c.protocol = *kind; }},
        {"seed", [](SimConfig& c, std::string_view v, int l) {
             c.seed = parse_uint<std::uint64_t>(v, "seed", l); }},
        {"max_rounds", [](SimConfig& c, std::string_view v, int l) {
             c.max_rounds = parse_uint<std::uint32_t>(v, "max_rounds", l); }},
        {"cluster_head_prob", [](SimConfig& c, std::string_view v, int l) {
             c.cluster_head_prob = parse_double(v, "cluster_head_prob", l); }},
        {"aggregate", [](SimConfig& c, std::string_view v, int l) {
             c.aggregate = parse_bool(v, "aggregate", l); }},
        {"w_e", [](SimConfig& c, std::string_view v, int l) {
             c.w_e = parse_double(v, "w_e", l); }},
        {"w_l", [](SimConfig& c, std::string_view v, int l) {
             c.w_l = parse_double(v, "w_l", l); }},
        {"w_d", [](SimConfig& c, std::string_view v, int l) {
             c.w_d = parse_double(v, "w_d", l); }},
        {"load_max", [](SimConfig& c, std::string_view v, int l) {
             c.load_max = parse_uint<std::uint32_t>(v, "load_max", l); }},
    };
    return table;
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ConfigError("config: " + message);
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void validate(const SimConfig& c) {
    require(c.node_count >= 1, "node_count must be >= 1");
    require(c.field_width_m > 0.0, "field_width_m must be positive");
    require(c.field_height_m > 0.0, "field_height_m must be positive");
    require(std::isfinite(c.bs_x_m) && std::isfinite(c.bs_y_m),
            "base station coordinates must be finite");
    require(c.initial_energy_j > 0.0, "initial_energy_j must be positive");
    require(c.data_packet_bits > 0, "data_packet_bits must be positive");
    require(c.ctrl_packet_bits > 0, "ctrl_packet_bits must be positive");
    require(c.ctrl_packet_bits <= c.data_packet_bits,
            "ctrl_packet_bits must not exceed data_packet_bits");
    require(c.e_elec_j_per_bit > 0.0, "e_elec_j_per_bit must be positive");
    require(c.eps_amp_j_per_bit_m2 > 0.0, "eps_amp_j_per_bit_m2 must be positive");
    require(c.comm_radius_m > 0.0, "comm_radius_m must be positive");
    require(c.cluster_head_prob >= 0.0 && c.cluster_head_prob <= 1.0,
            "cluster_head_prob must be in [0, 1]");
    require(c.w_e >= 0.0 && c.w_l >= 0.0 && c.w_d >= 0.0, "weights must be non-negative");
    require(c.w_e + c.w_l + c.w_d > 0.0, "weights must have a positive sum");
    require(c.load_max >= 1, "load_max must be >= 1");
}

SimConfig parse_config(std::string_view text) {
    SimConfig config;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(line_no, "expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            fail(line_no, "unknown key '" + std::string(key) + "'");
        }
        it->second(config, value, line_no);
    }
    validate(config);
    return config;
}

std::string render_config(const SimConfig& c) {
    std::ostringstream out;
    out << "field_width_m = " << fmt_double(c.field_width_m) << '\n'
        << "field_height_m = " << fmt_double(c.field_height_m) << '\n'
        << "node_count = " << c.node_count << '\n'
        << "bs_x_m = " << fmt_double(c.bs_x_m) << '\n'
        << "bs_y_m = " << fmt_double(c.bs_y_m) << '\n'
        << "initial_energy_j = " << fmt_double(c.initial_energy_j) << '\n'
        << "data_packet_bits = " << c.data_packet_bits << '\n'
        << "ctrl_packet_bits = " << c.ctrl_packet_bits << '\n'
        << "e_elec_j_per_bit = " << fmt_double(c.e_elec_j_per_bit) << '\n'
        << "eps_amp_j_per_bit_m2 = " << fmt_double(c.eps_amp_j_per_bit_m2) << '\n'
        << "comm_radius_m = " << fmt_double(c.comm_radius_m) << '\n'
        << "protocol = " << to_string(c.protocol) << '\n'
        << "seed = " << c.seed << '\n'
        << "max_rounds = " << c.max_rounds << '\n'
        << "cluster_head_prob = " << fmt_double(c.cluster_head_prob) << '\n'
        << "aggregate = " << (c.aggregate ? "true" : "false") << '\n'
        << "w_e = " << fmt_double(c.w_e) << '\n'
        << "w_l = " << fmt_double(c.w_l) << '\n'
        << "w_d = " << fmt_double(c.w_d) << '\n'
        << "load_max = " << c.load_max << '\n';
    return out.str();
}

}  // namespace e3dsim
