#pragma once
#include <cstdint>
#include <random>

namespace vcselcov {

/// Seeded generator with portable derived draws. std::uniform_*_distribution is
/// implementation-defined, so the mappings below are spelled out to keep runs
/// byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). Lemire's multiply-shift; bias < 2^-64.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace vcselcov
