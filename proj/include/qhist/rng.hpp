#pragma once

#include <cstdint>
#include <random>

namespace qhist {

/// splitmix64 step; used to derive independent per-trajectory seeds from
/// (seed, index) so results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic per-stream generator. std::mt19937_64 has a fully
/// specified sequence; the uniform mapping below avoids the
/// implementation-defined std::uniform_real_distribution.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t s = seed;
        (void)splitmix64(s);
        s ^= 0xA3C59AC2ED1F847BULL * (stream_index + 1);
        std::uint64_t a = splitmix64(s), b = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        eng_.seed(seq);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

} // namespace qhist
