#pragma once

#include <cstdint>
#include <random>

namespace e3dsim {

// splitmix64 finalizer, used to derive independent substreams from one master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic uniform generator. std::mt19937_64 output is fully specified
/// by the standard, and the [0,1) mapping below sidesteps the
/// implementation-defined std::uniform_real_distribution, so sequences are
/// reproducible bit for bit across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Substream derived from (seed, tag, index); same inputs, same stream.
    static Rng stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
        return Rng(splitmix64(splitmix64(seed ^ tag) + index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::mt19937_64 engine_;
};

// Stream tags for the simulator's independent random uses.
inline constexpr std::uint64_t kTopologyStreamTag = 0x746f706f6c6f6779ull;
inline constexpr std::uint64_t kClusterStreamTag = 0x636c757374657273ull;

}  // namespace e3dsim
