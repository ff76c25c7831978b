#include "pttb/prediction.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "pttb/special_functions.hpp"

namespace pttb {

namespace {

DecidedLabel decide(double p_first, double p_second) {
    if (p_first > p_second) return DecidedLabel::First;
    if (p_second > p_first) return DecidedLabel::Second;
    return DecidedLabel::Coin;
}

}  // namespace

PosteriorPredictor::PosteriorPredictor(const StrategyPosterior& posterior, const NoisePrior& prior)
    : grid_(posterior.grid) {
    if (posterior.entries.empty()) throw InvalidArgument("PosteriorPredictor: empty posterior");
    prior.validate();
    const auto weights = posterior.entry_weights();

    // Keyed on the strategy; counts are a function of it, so merging is exact.
    std::map<std::tuple<std::vector<std::size_t>, std::vector<Direction>, std::vector<double>>, std::size_t> seen;
    for (std::size_t i = 0; i < posterior.entries.size(); ++i) {
        const auto& e = posterior.entries[i];
        auto key = std::make_tuple(e.strategy.order(), e.strategy.directions(), e.strategy.thresholds());
        auto [it, inserted] = seen.try_emplace(std::move(key), strategies_.size());
        if (!inserted) {
            strategies_[it->second].weight += weights[i];
            continue;
        }
        const double a = e.counts.n_incorrect + prior.alpha;
        const double b = e.counts.n_correct + prior.beta;
        const double log_norm = log_beta_inc_half(a, b);
        std::vector<std::size_t> levels(e.strategy.num_cues());
        for (std::size_t c = 0; c < levels.size(); ++c) levels[c] = grid_.level_of(c, e.strategy.thresholds()[c]);
        strategies_.push_back({e.strategy, std::move(levels), weights[i],
                               std::exp(log_beta_inc_half(a, b + 1.0) - log_norm),
                               std::exp(log_beta_inc_half(a + 1.0, b) - log_norm)});
    }
}

PredictiveResult PosteriorPredictor::predict(std::span<const double> x1, std::span<const double> x2) const {
    double p_first = 0.0;
    double p_second = 0.0;
    for (const auto& s : strategies_) {
        switch (ttb_predict(s.strategy, x1, x2)) {
            case Outcome::FirstWins:
                p_first += s.weight * s.p_agree;
                p_second += s.weight * s.p_disagree;
                break;
            case Outcome::SecondWins:
                p_first += s.weight * s.p_disagree;
                p_second += s.weight * s.p_agree;
                break;
            case Outcome::Undecided:
                p_first += s.weight * 0.5;
                p_second += s.weight * 0.5;
                break;
        }
    }
    const double normalized = p_first / (p_first + p_second);
    return {normalized, 1.0 - normalized, decide(p_first, p_second)};
}

double PosteriorPredictor::accuracy(const PairwiseComparisons& test) const {
    if (test.empty()) throw InvalidArgument("accuracy: empty test set");
    const CompiledComparisons compiled(test, grid_);
    double credit = 0.0;
    double total = 0.0;
    for (std::size_t p = 0; p < compiled.num_patterns(); ++p) {
        // Orientation is folded: "agree" means the observed winner is predicted.
        double p_observed = 0.0;
        double p_other = 0.0;
        for (const auto& s : strategies_) {
            int decided = 0;
            for (std::size_t cue : s.strategy.order()) {
                const int sg = compiled.sign(p, cue, s.levels[cue]);
                if (sg != 0) {
                    decided = sg * sign_of(s.strategy.directions()[cue]);
                    break;
                }
            }
            if (decided > 0) {
                p_observed += s.weight * s.p_agree;
                p_other += s.weight * s.p_disagree;
            } else if (decided < 0) {
                p_observed += s.weight * s.p_disagree;
                p_other += s.weight * s.p_agree;
            } else {
                p_observed += s.weight * 0.5;
                p_other += s.weight * 0.5;
            }
        }
        credit += compiled.multiplicity(p) * accuracy_credit(p_observed / (p_observed + p_other), true);
        total += compiled.multiplicity(p);
    }
    return credit / total;
}

PredictiveResult predictive_prob(const StrategyPosterior& posterior, const NoisePrior& prior,
                                 std::span<const double> x1, std::span<const double> x2) {
    return PosteriorPredictor(posterior, prior).predict(x1, x2);
}

double accuracy_credit(double p_first, bool first_wins) {
    if (p_first == 0.5) return 0.5;
    return (p_first > 0.5) == first_wins ? 1.0 : 0.0;
}

double evaluate_accuracy(const PairPredictor& predictor, const PairwiseComparisons& test) {
    if (test.empty()) throw InvalidArgument("evaluate_accuracy: empty test set");
    double credit = 0.0;
    for (std::size_t p = 0; p < test.size(); ++p) {
        credit += accuracy_credit(predictor(test.first_item(p), test.second_item(p)), test.pairs()[p].first_wins);
    }
    return credit / static_cast<double>(test.size());
}

}  // namespace pttb
