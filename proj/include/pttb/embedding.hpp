#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "pttb/core_model.hpp"
#include "pttb/likelihood.hpp"

namespace pttb {

// Bayesian linear regression f(x) = wᵀx whose pairwise feedback comes from an
// agent that only sees f through a Take The Best heuristic.

struct WeightGrid {
    double lo = -2.0;
    double hi = 2.0;
    std::size_t steps = 47;  // per axis

    std::vector<double> axis() const;
};

struct RegressionTask {
    std::vector<std::vector<double>> x;  // direct covariates
    std::vector<double> y;               // direct responses
    double noise_variance = 1.0;         // σ²
    double prior_variance = 1.0;         // τ²
    WeightGrid grid;

    void validate() const;
};

struct AgentConfig {
    std::vector<std::vector<double>> points;  // X_G
    double threshold = 0.25;                  // covariate differences must exceed this
    std::size_t subset_size = 10;
    std::uint64_t seed = 0;
    /// Down-weights both the X_G training comparisons and the observed pairs.
    bool transitivity_weight = true;

    /// per_axis × per_axis uniform grid on [lo, hi]².
    static std::vector<std::vector<double>> uniform_points(std::size_t per_axis = 5, double lo = -1.0, double hi = 1.0);
    void validate() const;
};

/// All pairs of a subset of X_G with observed outcomes h (first_wins).
struct PreferenceObservations {
    std::vector<std::vector<double>> points;
    std::vector<Comparison> pairs;
    double weight = 1.0;
};

/// Subset of X_G (indices) drawn without replacement from the agent seed.
std::vector<std::size_t> select_subset(const AgentConfig& agent);

/// The agent's TTB: MAP strategy of the exhaustive posterior on all pairs of
/// X_G labelled by w, with every cue threshold fixed at the agent threshold.
TtbStrategy fit_agent_strategy(std::span<const double> w, const AgentConfig& agent, const NoisePrior& prior = {});

/// H from the agent's TTB on all pairs of the subset; undecided pairs are
/// settled by a seeded fair coin.
PreferenceObservations simulate_agent(std::span<const double> true_w, const AgentConfig& agent,
                                      const NoisePrior& prior = {});

/// Same subset, but labelled by the true function itself (ties by coin).
PreferenceObservations unbiased_observations(std::span<const double> true_w, const AgentConfig& agent);

/// ln p(H | X_H, X_G, w) under the probabilistic TTB induced by w on X_G.
double ttb_evidence(std::span<const double> w, const AgentConfig& agent, const PreferenceObservations& obs,
                    const NoisePrior& prior = {});

/// ln p(H | X_H, w) under flip noise κ ~ U(0, 1/2) around sign(wᵀδ).
double unbiased_evidence(std::span<const double> w, const PreferenceObservations& obs);

enum class PairwiseModel { None, Ttb, Unbiased };
enum class DensityScaling { Normalized, Max1 };

struct GridDensity {
    std::vector<double> w1;
    std::vector<double> w2;
    std::vector<double> values;  // values[i * w2.size() + j] at (w1[i], w2[j])
    DensityScaling scaling = DensityScaling::Max1;

    double at(std::size_t i, std::size_t j) const { return values[i * w2.size() + j]; }
    /// Grid cell of the largest value (first on ties).
    std::pair<std::size_t, std::size_t> argmax() const;
    /// Share of total grid mass within Euclidean `radius` of `center`.
    double mass_within(std::span<const double> center, double radius) const;
};

/// Evaluates p(w | D, H) over the weight grid. `obs` and `agent` are required
/// for the models that use them.
GridDensity grid_posterior(const RegressionTask& task, const PreferenceObservations* obs, const AgentConfig* agent,
                           PairwiseModel model, DensityScaling scaling = DensityScaling::Max1,
                           const NoisePrior& prior = {});

struct EmbeddingConfig {
    std::vector<double> true_w{1.0, 0.8};
    std::size_t direct_observations = 2;
    double covariate_lo = -1.0;
    double covariate_hi = 1.0;
    std::size_t grid_points_per_axis = 5;
    double agent_threshold = 0.25;
    std::size_t subset_size = 10;
    bool transitivity_weight = true;
    double noise_variance = 1.0;
    double prior_variance = 1.0;
    WeightGrid weight_grid;
    NoisePrior prior;
    std::uint64_t seed = 0;
};

struct EmbeddingPanel {
    std::string name;
    GridDensity density;
};

struct EmbeddingResult {
    RegressionTask task;
    AgentConfig agent;
    TtbStrategy agent_strategy = TtbStrategy::identity(2);
    PreferenceObservations ttb_obs;
    PreferenceObservations unbiased_obs;
    std::vector<EmbeddingPanel> panels;  // no_pairwise, ttb_obs_ttb_model, unbiased_obs_ttb_model,
                                         // ttb_obs_unbiased_model, unbiased_obs_unbiased_model
};

EmbeddingResult run_embedding_experiment(const EmbeddingConfig& config);

/// panel_<name>.csv (w1, w2, density) per panel, plus SVG heatmaps when requested.
void write_embedding_outputs(const EmbeddingResult& result, const std::vector<double>& true_w,
                             const std::filesystem::path& dir, bool svg);

}  // namespace pttb
