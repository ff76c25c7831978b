#pragma once

#include "pttb/core_model.hpp"

namespace pttb {

/// Beta(alpha, beta) prior on the flip probability, restricted to (0, 1/2).
struct NoisePrior {
    double alpha = 1.0;
    double beta = 1.0;

    static NoisePrior uniform() { return {}; }
    void validate() const;
};

/// Weighted numbers of correct, incorrect and undecided predictions.
struct FitCounts {
    double n_correct = 0.0;
    double n_incorrect = 0.0;
    double n_undecided = 0.0;

    FitCounts scaled(double w) const { return {n_correct * w, n_incorrect * w, n_undecided * w}; }
    bool operator==(const FitCounts&) const = default;
};

/// Beta(a, b) restricted to (0, 1/2): the conditional posterior of the flip probability.
struct TruncatedBetaPosterior {
    double a = 1.0;
    double b = 1.0;

    double mean() const;
};

FitCounts count_outcomes(const TtbStrategy& strategy, const PairwiseComparisons& data);

/// ln p(Y | X, g, d) with the flip probability integrated out:
/// -ln Z + N_undecided ln(1/2) + ln B_{1/2}(N_i + alpha, N_c + beta).
double log_marginal_likelihood(const FitCounts& counts, const NoisePrior& prior = {});

TruncatedBetaPosterior epsilon_posterior(const FitCounts& counts, const NoisePrior& prior = {});

}  // namespace pttb
