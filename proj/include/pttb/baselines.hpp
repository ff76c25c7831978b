#pragma once

#include <span>
#include <vector>

#include "pttb/core_model.hpp"

namespace pttb {

// ─── Classic Take The Best ───────────────────────────────────

struct CueValidity {
    double validity = 0.5;  // folded into [0.5, 1]
    Direction direction = Direction::Positive;
    std::size_t discriminating_count = 0;
};

/// Per-cue validity over the pairs where the cue differs at all.
std::vector<CueValidity> cue_validities(const PairwiseComparisons& train);

/// Orders cues by descending folded validity (ties: ascending cue index),
/// directions from the validity fold, thresholds zero.
TtbStrategy classic_ttb_fit(const PairwiseComparisons& train);

// ─── Logistic regression on cue differences ──────────────────

inline constexpr double kLogRegRidge = 1e-4;

struct LogRegModel {
    std::vector<double> weights;
    bool converged = false;
    std::size_t iterations = 0;
    /// Penalized loss after each accepted step; starts with the loss at zero weights.
    std::vector<double> loss_history;
};

/// Negative Bernoulli log-likelihood of the pairs under logistic(βᵀδ) plus
/// (λ/2)·|β|².
double logreg_loss(std::span<const double> weights, const PairwiseComparisons& train, double ridge = kLogRegRidge);
std::vector<double> logreg_gradient(std::span<const double> weights, const PairwiseComparisons& train,
                                    double ridge = kLogRegRidge);

/// Damped Newton iterations. Never throws for non-convergence: the best
/// iterate is returned with `converged == false`.
LogRegModel logreg_fit(const PairwiseComparisons& train, double ridge = kLogRegRidge, std::size_t max_iterations = 100);

/// p(first wins) = logistic(βᵀ(x1 − x2)).
double logreg_predict(const LogRegModel& model, std::span<const double> x1, std::span<const double> x2);

}  // namespace pttb
