#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace semidyn {

// Reproducibility contract: every random quantity in the library comes from an
// mt19937_64 engine (output sequence fixed by the C++ standard) whose seed is
// derived with splitmix64 from (user seed, stream kind, trial index). Mappings
// from raw 64-bit words to doubles are hand-rolled below so results do not
// depend on standard-library distribution internals.
enum class StreamKind : std::uint64_t {
    Letters = 0,  // i.i.d. generator indices of law mu
    Probes = 1,   // m-distributed probe points
    Starts = 2,   // random start points / unit vectors
    Generic = 3,  // everything else (tests, search heuristics)
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, StreamKind kind, std::uint64_t trial) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (static_cast<std::uint64_t>(kind) << 56));
    s = splitmix64(s ^ trial);
    return std::mt19937_64(s);
}

// Uniform in [0, 1) with 53-bit resolution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Categorical draw by cumulative weights (weights sum to 1).
inline int categorical(std::mt19937_64& rng, const std::vector<double>& weights) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

// Standard normal via Box-Muller (the second value is discarded; callers here
// draw few gaussians compared to uniforms and determinism beats thrift).
inline double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

inline std::vector<double> gaussian_vector(std::mt19937_64& rng, int d) {
    std::vector<double> v(static_cast<size_t>(d));
    for (double& c : v) c = gaussian(rng);
    return v;
}

} // namespace semidyn
