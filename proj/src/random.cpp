#include "pttb/random.hpp"

#include <algorithm>
#include <cmath>

#include "pttb/core_model.hpp"

namespace pttb {

std::size_t sample_log_categorical(std::span<const double> log_weights, Rng& rng) {
    if (log_weights.empty()) throw InvalidArgument("sample_log_categorical: no candidates");
    const double top = *std::max_element(log_weights.begin(), log_weights.end());
    if (!std::isfinite(top)) throw InvalidArgument("sample_log_categorical: no finite weight");
    std::vector<double> w(log_weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(log_weights[i] - top);
        total += w[i];
    }
    double u = uniform01(rng) * total;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (u < w[i]) return i;
        u -= w[i];
    }
    // Rounding can leave u marginally above the last weight.
    for (std::size_t i = w.size(); i > 0; --i) {
        if (w[i - 1] > 0.0) return i - 1;
    }
    return w.size() - 1;
}

std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::vector<std::uint32_t> words;
    for (std::uint64_t p : parts) {
        words.push_back(static_cast<std::uint32_t>(p & 0xffffffffULL));
        words.push_back(static_cast<std::uint32_t>(p >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace pttb
