#pragma once

#include <cstdint>
#include <initializer_list>

namespace uavecon {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Small self-contained PRNG so seeded scenarios reproduce bit-for-bit
/// independently of the standard library's distribution implementations.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_u01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

private:
    std::uint64_t state_;
};

/// Folds stream identifiers into a base seed; used to derive independent
/// sub-streams for (scenario, fleet size, trial, attempt).
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = base;
    for (std::uint64_t part : path) {
        state ^= splitmix64_next(state) + part * 0x9E3779B97F4A7C15ull;
        splitmix64_next(state);
    }
    return state;
}

}  // namespace uavecon
