#include "e3dsim/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>

#include "e3dsim/config.hpp"
#include "e3dsim/csv.hpp"
#include "e3dsim/engine.hpp"
#include "e3dsim/metrics.hpp"

namespace e3dsim {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write-to-temp then rename, so interrupted or failed runs never leave a
// partial file behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        }
        out << content;
        if (!out) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        throw std::runtime_error("--seeds expects N..M, got '" + text + "'");
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    try {
        lo = std::stoull(text.substr(0, dots));
        hi = std::stoull(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw std::runtime_error("--seeds expects N..M, got '" + text + "'");
    }
    if (lo > hi) {
        throw std::runtime_error("--seeds range is empty: '" + text + "'");
    }
    return {lo, hi};
}

int run_cli_impl(const std::vector<std::string>& args) {
    CLI::App app{"Round-based energy simulator for wireless sensor network routing"};
    app.name("e3dsim");

    std::string config_path;
    std::string protocol_list;
    std::uint64_t seed_override = 0;
    std::string seeds_range;
    std::string out_dir = ".";
    bool print_summary = false;

    app.add_option("--config", config_path, "Experiment config file (key = value lines)")
        ->required();
    app.add_option("--protocol", protocol_list,
                   "Override the config protocol; comma-separated list sweeps several");
    auto* seed_opt = app.add_option("--seed", seed_override, "Override the config seed");
    auto* seeds_opt =
        app.add_option("--seeds", seeds_range, "Seed sweep N..M (inclusive)");
    seed_opt->excludes(seeds_opt);
    app.add_option("--out", out_dir, "Output directory for per-run CSV files");
    app.add_flag("--summary", print_summary, "Print a comparison table to stdout");

    // CLI11 wants argv back-to-front.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const SimConfig base = parse_config(read_file(config_path));

    std::vector<ProtocolKind> protocols;
    if (protocol_list.empty()) {
        protocols.push_back(base.protocol);
    } else {
        for (const std::string& name : split(protocol_list, ',')) {
            const auto kind = protocol_from_string(name);
            if (!kind) {
                throw std::runtime_error("unknown protocol '" + name + "' in --protocol");
            }
            protocols.push_back(*kind);
        }
    }

    std::vector<std::uint64_t> seeds;
    if (!seeds_range.empty()) {
        const auto [lo, hi] = parse_seed_range(seeds_range);
        for (std::uint64_t s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
    } else if (seed_opt->count() > 0) {
        seeds.push_back(seed_override);
    } else {
        seeds.push_back(base.seed);
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw std::runtime_error("cannot create output directory: " + out_dir);
    }

    std::vector<RunSummary> summaries;
    for (ProtocolKind protocol : protocols) {
        for (std::uint64_t seed : seeds) {
            SimConfig cfg = base;
            cfg.protocol = protocol;
            cfg.seed = seed;
            const SimulationResult result = run_simulation(cfg);
            const RunSummary summary = summarize(result);

            const std::string stem =
                std::string(to_string(protocol)) + "_seed" + std::to_string(seed);
            write_file_atomic(fs::path(out_dir) / (stem + "_rounds.csv"),
                              round_csv_string(result.reports));
            write_file_atomic(fs::path(out_dir) / (stem + "_summary.csv"),
                              summary_csv_string(summary));
            summaries.push_back(summary);
        }
    }

    if (print_summary) {
        std::sort(summaries.begin(), summaries.end(),
                  [](const RunSummary& a, const RunSummary& b) {
                      return std::tie(a.protocol, a.seed) < std::tie(b.protocol, b.seed);
                  });
        std::printf("%-20s %8s %12s %12s %18s\n", "protocol", "seed", "first_death",
                    "50pct_dead", "ctrl/node/round");
        for (const RunSummary& s : summaries) {
            std::printf("%-20s %8llu %12u %12u %18.6f\n", s.protocol.c_str(),
                        static_cast<unsigned long long>(s.seed),
                        s.lifetime.first_death_round, s.lifetime.rounds_to_50pct_dead,
                        s.overhead.ctrl_per_node_round);
        }
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    try {
        return run_cli_impl(args);
    } catch (const std::exception& e) {
        std::cerr << "e3dsim: error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args);
}

}  // namespace e3dsim
