#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pttb/core_model.hpp"
#include "pttb/inference.hpp"
#include "pttb/likelihood.hpp"

namespace pttb {

enum class DecidedLabel { First, Second, Coin };

struct PredictiveResult {
    double p_first = 0.5;
    double p_second = 0.5;
    DecidedLabel decided = DecidedLabel::Coin;
};

/// Posterior predictive for new pairs. Identical strategies in the posterior
/// are merged once up front, so repeated MCMC draws cost nothing extra.
class PosteriorPredictor {
public:
    PosteriorPredictor(const StrategyPosterior& posterior, const NoisePrior& prior = {});

    PredictiveResult predict(std::span<const double> x1, std::span<const double> x2) const;

    /// Same credit rule as evaluate_accuracy, with test pairs grouped by
    /// their discrimination signature.
    double accuracy(const PairwiseComparisons& test) const;

    std::size_t num_distinct_strategies() const { return strategies_.size(); }

private:
    struct Distinct {
        TtbStrategy strategy;
        std::vector<std::size_t> levels;
        double weight;
        double p_agree;     // B(a, b + 1) / B(a, b): no flip
        double p_disagree;  // B(a + 1, b) / B(a, b): flip
    };
    std::vector<Distinct> strategies_;
    ThresholdGrid grid_;
};

PredictiveResult predictive_prob(const StrategyPosterior& posterior, const NoisePrior& prior,
                                 std::span<const double> x1, std::span<const double> x2);

/// Returns p(first item wins); exactly 0.5 is an abstention.
using PairPredictor = std::function<double(std::span<const double>, std::span<const double>)>;

/// 1 for a correct decided label, 0 for a wrong one, 0.5 for p_first == 1/2.
double accuracy_credit(double p_first, bool first_wins);

/// Mean credit over the test pairs. Throws InvalidArgument on an empty test set.
double evaluate_accuracy(const PairPredictor& predictor, const PairwiseComparisons& test);

}  // namespace pttb
