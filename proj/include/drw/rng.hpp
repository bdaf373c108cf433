#pragma once

#include <cstdint>
#include <random>

namespace drw {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for substream `index` of the master seed. Streams are decorrelated by
/// double splitmix mixing; the mapping is fixed, so campaign results do not
/// depend on how streams are distributed over workers.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0xD1B54A32D192ED03ULL));
}

using RngEngine = std::mt19937_64;

inline RngEngine make_engine(std::uint64_t seed, std::uint64_t stream_index) {
    return RngEngine(substream_seed(seed, stream_index));
}

/// Uniform double in [0,1) from the top 53 bits. Bit-exact across platforms,
/// unlike std::uniform_real_distribution.
inline double uniform_unit(RngEngine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(RngEngine& eng, double p) {
    return uniform_unit(eng) < p;
}

/// Binomial draw by explicit coin flips; n is tiny everywhere this is used.
inline int binomial_flips(RngEngine& eng, int n, double p) {
    int k = 0;
    for (int i = 0; i < n; ++i)
        if (bernoulli(eng, p)) ++k;
    return k;
}

/// Rademacher +/-1 entry.
inline double rademacher(RngEngine& eng) {
    return (eng() & 1ULL) ? 1.0 : -1.0;
}

} // namespace drw
