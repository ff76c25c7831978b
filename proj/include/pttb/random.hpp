#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace pttb {

// The standard distributions are implementation-defined; these helpers keep
// seeded runs identical across standard libraries.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n), rejection sampled.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    return static_cast<std::size_t>(draw % bound);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

inline double standard_normal(Rng& rng) {
    // Box-Muller; one draw per call keeps the stream easy to reason about.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// Index drawn with probability proportional to exp(log_weights[i]).
std::size_t sample_log_categorical(std::span<const double> log_weights, Rng& rng);

/// FNV-1a, used to fold dataset names into seeds.
std::uint64_t stable_hash(std::string_view text);

/// Deterministic seed derived from a list of integers via std::seed_seq.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace pttb
