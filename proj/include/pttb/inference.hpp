#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pttb/core_model.hpp"
#include "pttb/likelihood.hpp"
#include "pttb/random.hpp"

namespace pttb {

class EnumerationCapExceeded : public Error {
public:
    using Error::Error;
};

inline constexpr double kDefaultEnumerationCap = 1e6;

// ─── Threshold candidates ────────────────────────────────────

/// Per-cue candidate discrimination thresholds, uniform prior over each set.
class ThresholdGrid {
public:
    /// Single candidate 0 for every cue: the thresholdless model.
    static ThresholdGrid zeros(std::size_t num_cues);
    /// Single fixed candidate `t` for every cue.
    static ThresholdGrid fixed(std::size_t num_cues, double t);

    /// Candidates must be non-empty, ascending, unique and non-negative.
    explicit ThresholdGrid(std::vector<std::vector<double>> candidates);

    std::size_t num_cues() const { return candidates_.size(); }
    std::size_t levels(std::size_t cue) const { return candidates_.at(cue).size(); }
    double value(std::size_t cue, std::size_t level) const { return candidates_.at(cue).at(level); }
    const std::vector<double>& candidates(std::size_t cue) const { return candidates_.at(cue); }

    /// Level index of `value` for `cue`; throws InvalidArgument if absent.
    std::size_t level_of(std::size_t cue, double value) const;
    /// Sum over cues of ln(number of candidates).
    double log_num_combinations() const;

    bool operator==(const ThresholdGrid&) const = default;

private:
    std::vector<std::vector<double>> candidates_;
};

/// Candidates {0} ∪ {quantiles j/K, j = 1..K-1} of |δ| over the training pairs,
/// linear interpolation between order statistics. A cue whose |δ| never varies
/// gets {0}.
ThresholdGrid default_threshold_grid(const PairwiseComparisons& data, std::size_t k);

// ─── Compiled comparisons ────────────────────────────────────

/// Training pairs reduced to what the likelihood can see: for every cue and
/// threshold level, the sign of the difference relative to the observed
/// winner (+1 means the winner has the larger value, 0 means no
/// discrimination). Pairs with identical signatures are merged.
class CompiledComparisons {
public:
    CompiledComparisons(const PairwiseComparisons& data, const ThresholdGrid& grid);

    std::size_t num_cues() const { return grid_.num_cues(); }
    std::size_t num_patterns() const { return multiplicity_.size(); }
    const ThresholdGrid& grid() const { return grid_; }
    double weight() const { return weight_; }
    double multiplicity(std::size_t pattern) const { return multiplicity_[pattern]; }
    int sign(std::size_t pattern, std::size_t cue, std::size_t level) const {
        return signs_[pattern * stride_ + offset_[cue] + level];
    }

    /// Weighted counts for a configuration given as threshold levels.
    FitCounts count(const std::vector<std::size_t>& order, const std::vector<Direction>& directions,
                    const std::vector<std::size_t>& levels) const;

private:
    ThresholdGrid grid_;
    double weight_;
    std::vector<std::size_t> offset_;
    std::size_t stride_ = 0;
    std::vector<std::int8_t> signs_;
    std::vector<double> multiplicity_;
};

// ─── Posterior ───────────────────────────────────────────────

enum class PosteriorMode { Exact, Sampled };

struct PosteriorEntry {
    TtbStrategy strategy;
    FitCounts counts;
    double log_posterior;  // unnormalized, includes the uniform prior
};

struct StrategyPosterior {
    PosteriorMode mode = PosteriorMode::Exact;
    std::vector<PosteriorEntry> entries;
    std::vector<double> probabilities;  // Exact only
    ThresholdGrid grid = ThresholdGrid::zeros(1);
    std::size_t sample_count = 0;       // Sampled only
    std::size_t burn_in = 0;            // Sampled only
    double log_normalizer = 0.0;        // Exact only

    /// Exact probabilities, or 1/S per sample.
    std::vector<double> entry_weights() const;
    /// Highest log posterior, first in entry order on ties.
    const PosteriorEntry& map_entry() const;
};

/// Uniform prior over (order, directions, threshold levels).
double log_strategy_prior(const ThresholdGrid& grid);

/// Scores every configuration. Throws EnumerationCapExceeded when
/// M!·2^M·∏K_m exceeds `cap`. Enumeration order: permutations in
/// lexicographic order, then direction bit patterns (bit m set = negative),
/// then threshold levels with the last cue varying fastest.
StrategyPosterior exhaustive_posterior(const PairwiseComparisons& data, const NoisePrior& prior = {},
                                       const std::optional<ThresholdGrid>& thresholds = std::nullopt,
                                       double cap = kDefaultEnumerationCap);

struct SamplerConfig {
    std::size_t samples = 1000;
    std::size_t burn_in = 100;
    std::uint64_t seed = 0;
    /// Starting point; random when empty.
    std::optional<TtbStrategy> initial;

    void validate() const;
};

/// One collapsed Gibbs chain over (order, directions, threshold levels).
/// Holds a reference to `data`, which must outlive the chain.
class GibbsChain {
public:
    struct Candidate {
        std::size_t position;
        Direction direction;
        std::size_t level;
        FitCounts counts;
        double log_posterior;
    };

    GibbsChain(const CompiledComparisons& data, const NoisePrior& prior, std::uint64_t seed,
               const std::optional<TtbStrategy>& initial = std::nullopt);

    /// All configurations reachable by moving `cue` to any of the M slots
    /// (others keep their relative order) with either direction and any of
    /// its threshold levels. Includes the current configuration.
    std::vector<Candidate> candidates(std::size_t cue) const;

    void update_cue(std::size_t cue);
    /// Visits every cue once in a fresh random order.
    void sweep();

    TtbStrategy strategy() const;
    const FitCounts& counts() const { return counts_; }
    double log_posterior() const { return log_posterior_; }

private:
    double score(const FitCounts& weighted) const;
    void set_state(std::vector<std::size_t> order, std::vector<Direction> directions,
                   std::vector<std::size_t> levels);

    const CompiledComparisons& data_;
    NoisePrior prior_;
    double log_z_;
    double log_prior_;
    Rng rng_;
    std::vector<std::size_t> order_;
    std::vector<Direction> directions_;
    std::vector<std::size_t> levels_;
    FitCounts counts_;
    double log_posterior_ = 0.0;
};

/// Runs burn_in + samples sweeps and records the state after each
/// post-burn-in sweep.
StrategyPosterior gibbs_sample(const PairwiseComparisons& data, const NoisePrior& prior, const SamplerConfig& config,
                               const std::optional<ThresholdGrid>& thresholds = std::nullopt);

/// result[cue][rank]: posterior probability that `cue` is consulted at position `rank`.
std::vector<std::vector<double>> cue_rank_marginals(const StrategyPosterior& posterior);

}  // namespace pttb
