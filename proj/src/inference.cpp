#include "pttb/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "pttb/special_functions.hpp"

namespace pttb {

// ─── ThresholdGrid ───────────────────────────────────────────

ThresholdGrid ThresholdGrid::zeros(std::size_t num_cues) { return fixed(num_cues, 0.0); }

ThresholdGrid ThresholdGrid::fixed(std::size_t num_cues, double t) {
    return ThresholdGrid(std::vector<std::vector<double>>(num_cues, std::vector<double>{t}));
}

ThresholdGrid::ThresholdGrid(std::vector<std::vector<double>> candidates) : candidates_(std::move(candidates)) {
    if (candidates_.empty()) throw InvalidArgument("ThresholdGrid: no cues");
    for (const auto& c : candidates_) {
        if (c.empty()) throw InvalidArgument("ThresholdGrid: empty candidate set");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!(c[i] >= 0.0) || !std::isfinite(c[i])) throw InvalidArgument("ThresholdGrid: thresholds must be non-negative");
            if (i > 0 && !(c[i] > c[i - 1])) throw InvalidArgument("ThresholdGrid: candidates must be strictly ascending");
        }
    }
}

std::size_t ThresholdGrid::level_of(std::size_t cue, double value) const {
    const auto& c = candidates_.at(cue);
    auto it = std::find(c.begin(), c.end(), value);
    if (it == c.end()) {
        throw InvalidArgument("ThresholdGrid: threshold " + std::to_string(value) + " is not a candidate for cue " +
                              std::to_string(cue + 1));
    }
    return static_cast<std::size_t>(it - c.begin());
}

double ThresholdGrid::log_num_combinations() const {
    double s = 0.0;
    for (const auto& c : candidates_) s += std::log(static_cast<double>(c.size()));
    return s;
}

ThresholdGrid default_threshold_grid(const PairwiseComparisons& data, std::size_t k) {
    if (k < 1) throw InvalidArgument("default_threshold_grid: K must be at least 1");
    const std::size_t m = data.num_cues();
    std::vector<std::vector<double>> grid(m, std::vector<double>{0.0});
    if (k == 1 || data.empty()) return ThresholdGrid(std::move(grid));

    std::vector<double> abs_delta(data.size());
    for (std::size_t cue = 0; cue < m; ++cue) {
        for (std::size_t p = 0; p < data.size(); ++p) {
            abs_delta[p] = std::abs(data.first_item(p)[cue] - data.second_item(p)[cue]);
        }
        std::sort(abs_delta.begin(), abs_delta.end());
        if (abs_delta.front() == abs_delta.back()) continue;
        const double n = static_cast<double>(abs_delta.size());
        for (std::size_t j = 1; j < k; ++j) {
            const double h = (n - 1.0) * static_cast<double>(j) / static_cast<double>(k);
            const auto lo = static_cast<std::size_t>(std::floor(h));
            const std::size_t hi = std::min(lo + 1, abs_delta.size() - 1);
            const double q = abs_delta[lo] + (h - std::floor(h)) * (abs_delta[hi] - abs_delta[lo]);
            grid[cue].push_back(q);
        }
        auto& g = grid[cue];
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    return ThresholdGrid(std::move(grid));
}

// ─── CompiledComparisons ─────────────────────────────────────

namespace {

struct SignatureHash {
    std::size_t operator()(const std::vector<std::int8_t>& v) const {
        std::uint64_t h = 14695981039346656037ULL;
        for (std::int8_t c : v) {
            h ^= static_cast<std::uint8_t>(c);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

CompiledComparisons::CompiledComparisons(const PairwiseComparisons& data, const ThresholdGrid& grid)
    : grid_(grid), weight_(data.weight()) {
    const std::size_t m = data.num_cues();
    if (grid_.num_cues() != m) {
        throw DimensionMismatch("CompiledComparisons: grid has " + std::to_string(grid_.num_cues()) +
                                " cues, data has " + std::to_string(m));
    }
    offset_.resize(m);
    for (std::size_t c = 0; c < m; ++c) {
        offset_[c] = stride_;
        stride_ += grid_.levels(c);
    }

    std::unordered_map<std::vector<std::int8_t>, std::size_t, SignatureHash> index;
    std::vector<std::int8_t> sig(stride_);
    for (std::size_t p = 0; p < data.size(); ++p) {
        const auto a = data.first_item(p);
        const auto b = data.second_item(p);
        const int orient = data.pairs()[p].first_wins ? 1 : -1;
        for (std::size_t c = 0; c < m; ++c) {
            const double delta = a[c] - b[c];
            const int s = delta > 0.0 ? orient : (delta < 0.0 ? -orient : 0);
            for (std::size_t k = 0; k < grid_.levels(c); ++k) {
                sig[offset_[c] + k] = static_cast<std::int8_t>(std::abs(delta) > grid_.value(c, k) ? s : 0);
            }
        }
        auto [it, inserted] = index.try_emplace(sig, multiplicity_.size());
        if (inserted) {
            signs_.insert(signs_.end(), sig.begin(), sig.end());
            multiplicity_.push_back(1.0);
        } else {
            multiplicity_[it->second] += 1.0;
        }
    }
}

FitCounts CompiledComparisons::count(const std::vector<std::size_t>& order, const std::vector<Direction>& directions,
                                     const std::vector<std::size_t>& levels) const {
    FitCounts raw;
    for (std::size_t p = 0; p < num_patterns(); ++p) {
        int decided = 0;
        for (std::size_t cue : order) {
            const int s = sign(p, cue, levels[cue]);
            if (s != 0) {
                decided = s * sign_of(directions[cue]);
                break;
            }
        }
        if (decided > 0) {
            raw.n_correct += multiplicity_[p];
        } else if (decided < 0) {
            raw.n_incorrect += multiplicity_[p];
        } else {
            raw.n_undecided += multiplicity_[p];
        }
    }
    return raw.scaled(weight_);
}

// ─── Posterior helpers ───────────────────────────────────────

std::vector<double> StrategyPosterior::entry_weights() const {
    if (mode == PosteriorMode::Exact) return probabilities;
    return std::vector<double>(entries.size(), entries.empty() ? 0.0 : 1.0 / static_cast<double>(entries.size()));
}

const PosteriorEntry& StrategyPosterior::map_entry() const {
    if (entries.empty()) throw InvalidArgument("StrategyPosterior::map_entry: empty posterior");
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].log_posterior > entries[best].log_posterior) best = i;
    }
    return entries[best];
}

double log_strategy_prior(const ThresholdGrid& grid) {
    const double m = static_cast<double>(grid.num_cues());
    return -(std::lgamma(m + 1.0) + m * std::log(2.0) + grid.log_num_combinations());
}

namespace {

std::vector<double> threshold_values(const ThresholdGrid& grid, const std::vector<std::size_t>& levels) {
    std::vector<double> t(levels.size());
    for (std::size_t c = 0; c < levels.size(); ++c) t[c] = grid.value(c, levels[c]);
    return t;
}

double score_counts(const FitCounts& c, const NoisePrior& prior, double log_z, double log_prior) {
    return log_prior - log_z + c.n_undecided * std::log(0.5) +
           log_beta_inc_half(c.n_incorrect + prior.alpha, c.n_correct + prior.beta);
}

}  // namespace

StrategyPosterior exhaustive_posterior(const PairwiseComparisons& data, const NoisePrior& prior,
                                       const std::optional<ThresholdGrid>& thresholds, double cap) {
    prior.validate();
    const std::size_t m = data.num_cues();
    const ThresholdGrid grid = thresholds.value_or(ThresholdGrid::zeros(m));
    const CompiledComparisons compiled(data, grid);

    double total = std::tgamma(static_cast<double>(m) + 1.0) * std::pow(2.0, static_cast<double>(m));
    for (std::size_t c = 0; c < m; ++c) total *= static_cast<double>(grid.levels(c));
    if (total > cap) {
        throw EnumerationCapExceeded("exhaustive_posterior: " + std::to_string(static_cast<long double>(total)) +
                                     " configurations exceed the cap of " + std::to_string(cap) +
                                     "; use MCMC instead");
    }

    StrategyPosterior post;
    post.mode = PosteriorMode::Exact;
    post.grid = grid;
    post.entries.reserve(static_cast<std::size_t>(total));

    const double log_z = log_beta_inc_half(prior.alpha, prior.beta);
    const double log_prior = log_strategy_prior(grid);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Direction> dirs(m);
    std::vector<std::size_t> levels(m);
    do {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
            for (std::size_t c = 0; c < m; ++c) {
                dirs[c] = (bits >> c) & 1U ? Direction::Negative : Direction::Positive;
            }
            std::fill(levels.begin(), levels.end(), 0);
            while (true) {
                const FitCounts counts = compiled.count(order, dirs, levels);
                post.entries.push_back({TtbStrategy(order, dirs, threshold_values(grid, levels)), counts,
                                        score_counts(counts, prior, log_z, log_prior)});
                // Mixed-radix increment, last cue fastest.
                bool wrapped = true;
                for (std::size_t c = m; c-- > 0;) {
                    if (++levels[c] < grid.levels(c)) {
                        wrapped = false;
                        break;
                    }
                    levels[c] = 0;
                }
                if (wrapped) break;
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));

    double top = -std::numeric_limits<double>::infinity();
    for (const auto& e : post.entries) top = std::max(top, e.log_posterior);
    double sum = 0.0;
    post.probabilities.resize(post.entries.size());
    for (std::size_t i = 0; i < post.entries.size(); ++i) {
        post.probabilities[i] = std::exp(post.entries[i].log_posterior - top);
        sum += post.probabilities[i];
    }
    for (double& p : post.probabilities) p /= sum;
    post.log_normalizer = top + std::log(sum);
    return post;
}

// ─── Gibbs sampling ──────────────────────────────────────────

void SamplerConfig::validate() const {
    if (samples < 1) throw InvalidArgument("SamplerConfig: at least one sample is required");
}

GibbsChain::GibbsChain(const CompiledComparisons& data, const NoisePrior& prior, std::uint64_t seed,
                       const std::optional<TtbStrategy>& initial)
    : data_(data),
      prior_(prior),
      log_z_(log_beta_inc_half(prior.alpha, prior.beta)),
      log_prior_(log_strategy_prior(data.grid())),
      rng_(seed) {
    prior_.validate();
    const std::size_t m = data_.num_cues();
    std::vector<std::size_t> order(m);
    std::vector<Direction> dirs(m);
    std::vector<std::size_t> levels(m);
    if (initial) {
        if (initial->num_cues() != m) throw DimensionMismatch("GibbsChain: initial strategy has wrong cue count");
        order = initial->order();
        dirs = initial->directions();
        for (std::size_t c = 0; c < m; ++c) levels[c] = data_.grid().level_of(c, initial->thresholds()[c]);
    } else {
        std::iota(order.begin(), order.end(), std::size_t{0});
        shuffle(order, rng_);
        for (std::size_t c = 0; c < m; ++c) {
            dirs[c] = uniform_index(rng_, 2) == 0 ? Direction::Positive : Direction::Negative;
            levels[c] = uniform_index(rng_, data_.grid().levels(c));
        }
    }
    set_state(std::move(order), std::move(dirs), std::move(levels));
}

double GibbsChain::score(const FitCounts& weighted) const { return score_counts(weighted, prior_, log_z_, log_prior_); }

void GibbsChain::set_state(std::vector<std::size_t> order, std::vector<Direction> directions,
                           std::vector<std::size_t> levels) {
    order_ = std::move(order);
    directions_ = std::move(directions);
    levels_ = std::move(levels);
    counts_ = data_.count(order_, directions_, levels_);
    log_posterior_ = score(counts_);
}

TtbStrategy GibbsChain::strategy() const {
    return TtbStrategy(order_, directions_, threshold_values(data_.grid(), levels_));
}

std::vector<GibbsChain::Candidate> GibbsChain::candidates(std::size_t cue) const {
    const std::size_t m = data_.num_cues();
    if (cue >= m) throw InvalidArgument("GibbsChain::candidates: cue index out of range");
    const std::size_t n_levels = data_.grid().levels(cue);

    std::vector<std::size_t> rest;
    rest.reserve(m - 1);
    for (std::size_t c : order_) {
        if (c != cue) rest.push_back(c);
    }

    // Outcome classes: 0 correct, 1 incorrect, 2 undecided. For each pattern the
    // remaining cues decide at rest position q (m - 1 = nobody). Moving `cue` to
    // slot p overrides that outcome exactly when q >= p and `cue` discriminates.
    // table[(level * m + q) * 6 + side * 3 + outcome], side 0: sign +1, 1: sign -1.
    std::vector<double> table(n_levels * m * 6, 0.0);
    std::array<double, 3> base{0.0, 0.0, 0.0};
    for (std::size_t p = 0; p < data_.num_patterns(); ++p) {
        const double w = data_.multiplicity(p);
        std::size_t q = m - 1;
        int outcome = 2;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            const std::size_t c = rest[j];
            const int s = data_.sign(p, c, levels_[c]);
            if (s != 0) {
                q = j;
                outcome = s * sign_of(directions_[c]) > 0 ? 0 : 1;
                break;
            }
        }
        base[static_cast<std::size_t>(outcome)] += w;
        for (std::size_t k = 0; k < n_levels; ++k) {
            const int s = data_.sign(p, cue, k);
            if (s == 0) continue;
            const std::size_t side = s > 0 ? 0 : 1;
            table[(k * m + q) * 6 + side * 3 + static_cast<std::size_t>(outcome)] += w;
        }
    }
    // Suffix sums over q.
    for (std::size_t k = 0; k < n_levels; ++k) {
        for (std::size_t q = m - 1; q > 0; --q) {
            for (std::size_t i = 0; i < 6; ++i) table[(k * m + q - 1) * 6 + i] += table[(k * m + q) * 6 + i];
        }
    }

    std::vector<Candidate> out;
    out.reserve(2 * m * n_levels);
    for (std::size_t pos = 0; pos < m; ++pos) {
        for (Direction dir : {Direction::Positive, Direction::Negative}) {
            for (std::size_t k = 0; k < n_levels; ++k) {
                const double* row = &table[(k * m + pos) * 6];
                std::array<double, 3> raw = base;
                double agree = 0.0;
                double disagree = 0.0;
                for (std::size_t side = 0; side < 2; ++side) {
                    const double total = row[side * 3] + row[side * 3 + 1] + row[side * 3 + 2];
                    for (std::size_t o = 0; o < 3; ++o) raw[o] -= row[side * 3 + o];
                    const int s = side == 0 ? 1 : -1;
                    (s == sign_of(dir) ? agree : disagree) += total;
                }
                raw[0] += agree;
                raw[1] += disagree;
                const FitCounts counts = FitCounts{raw[0], raw[1], raw[2]}.scaled(data_.weight());
                out.push_back({pos, dir, k, counts, score(counts)});
            }
        }
    }
    return out;
}

void GibbsChain::update_cue(std::size_t cue) {
    const auto cands = candidates(cue);
    std::vector<double> logw(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) logw[i] = cands[i].log_posterior;
    const auto& pick = cands[sample_log_categorical(logw, rng_)];

    std::vector<std::size_t> order;
    order.reserve(order_.size());
    for (std::size_t c : order_) {
        if (c != cue) order.push_back(c);
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(pick.position), cue);
    order_ = std::move(order);
    directions_[cue] = pick.direction;
    levels_[cue] = pick.level;
    counts_ = pick.counts;
    log_posterior_ = pick.log_posterior;
}

void GibbsChain::sweep() {
    std::vector<std::size_t> visit(data_.num_cues());
    std::iota(visit.begin(), visit.end(), std::size_t{0});
    shuffle(visit, rng_);
    for (std::size_t cue : visit) update_cue(cue);
}

StrategyPosterior gibbs_sample(const PairwiseComparisons& data, const NoisePrior& prior, const SamplerConfig& config,
                               const std::optional<ThresholdGrid>& thresholds) {
    config.validate();
    prior.validate();
    const ThresholdGrid grid = thresholds.value_or(ThresholdGrid::zeros(data.num_cues()));
    const CompiledComparisons compiled(data, grid);
    GibbsChain chain(compiled, prior, config.seed, config.initial);

    StrategyPosterior post;
    post.mode = PosteriorMode::Sampled;
    post.grid = grid;
    post.sample_count = config.samples;
    post.burn_in = config.burn_in;
    post.entries.reserve(config.samples);
    for (std::size_t s = 0; s < config.burn_in + config.samples; ++s) {
        chain.sweep();
        if (s >= config.burn_in) post.entries.push_back({chain.strategy(), chain.counts(), chain.log_posterior()});
    }
    return post;
}

std::vector<std::vector<double>> cue_rank_marginals(const StrategyPosterior& posterior) {
    if (posterior.entries.empty()) throw InvalidArgument("cue_rank_marginals: empty posterior");
    const std::size_t m = posterior.entries.front().strategy.num_cues();
    std::vector<std::vector<double>> out(m, std::vector<double>(m, 0.0));
    const auto weights = posterior.entry_weights();
    for (std::size_t i = 0; i < posterior.entries.size(); ++i) {
        const auto& order = posterior.entries[i].strategy.order();
        for (std::size_t r = 0; r < m; ++r) out[order[r]][r] += weights[i];
    }
    return out;
}

}  // namespace pttb
