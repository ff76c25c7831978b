#include "pttb/likelihood.hpp"

#include <cmath>

#include "pttb/special_functions.hpp"

namespace pttb {

namespace {

void validate_counts(const FitCounts& c) {
    if (!(c.n_correct >= 0.0) || !(c.n_incorrect >= 0.0) || !(c.n_undecided >= 0.0) || !std::isfinite(c.n_correct) ||
        !std::isfinite(c.n_incorrect) || !std::isfinite(c.n_undecided)) {
        throw InvalidArgument("FitCounts: counts must be finite and non-negative");
    }
}

}  // namespace

void NoisePrior::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw InvalidArgument("NoisePrior: alpha and beta must be finite and positive");
    }
}

double TruncatedBetaPosterior::mean() const { return trunc_beta_mean(a, b); }

FitCounts count_outcomes(const TtbStrategy& strategy, const PairwiseComparisons& data) {
    if (data.num_cues() != strategy.num_cues()) {
        throw DimensionMismatch("count_outcomes: data has " + std::to_string(data.num_cues()) +
                                " cues, strategy has " + std::to_string(strategy.num_cues()));
    }
    FitCounts raw;
    for (std::size_t p = 0; p < data.size(); ++p) {
        const Outcome o = ttb_predict(strategy, data.first_item(p), data.second_item(p));
        if (o == Outcome::Undecided) {
            raw.n_undecided += 1.0;
        } else if ((o == Outcome::FirstWins) == data.pairs()[p].first_wins) {
            raw.n_correct += 1.0;
        } else {
            raw.n_incorrect += 1.0;
        }
    }
    return raw.scaled(data.weight());
}

double log_marginal_likelihood(const FitCounts& counts, const NoisePrior& prior) {
    validate_counts(counts);
    prior.validate();
    const double log_z = log_beta_inc_half(prior.alpha, prior.beta);
    return -log_z + counts.n_undecided * std::log(0.5) +
           log_beta_inc_half(counts.n_incorrect + prior.alpha, counts.n_correct + prior.beta);
}

TruncatedBetaPosterior epsilon_posterior(const FitCounts& counts, const NoisePrior& prior) {
    validate_counts(counts);
    prior.validate();
    return {counts.n_incorrect + prior.alpha, counts.n_correct + prior.beta};
}

}  // namespace pttb
