#include "pttb/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "pttb/benchmark.hpp"
#include "pttb/inference.hpp"
#include "pttb/random.hpp"
#include "pttb/special_functions.hpp"
#include "pttb/svg.hpp"

namespace pttb {

std::vector<double> WeightGrid::axis() const {
    if (steps < 2) throw InvalidArgument("WeightGrid: at least 2 steps per axis");
    if (!(hi > lo)) throw InvalidArgument("WeightGrid: empty range");
    std::vector<double> a(steps);
    for (std::size_t i = 0; i < steps; ++i) a[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return a;
}

void RegressionTask::validate() const {
    if (!(noise_variance > 0.0) || !(prior_variance > 0.0)) throw InvalidArgument("RegressionTask: variances must be positive");
    if (x.size() != y.size()) throw DimensionMismatch("RegressionTask: covariate and response counts differ");
    for (const auto& xi : x) {
        if (xi.size() != 2) throw DimensionMismatch("RegressionTask: grid evaluation needs 2-dimensional covariates");
    }
    (void)grid.axis();
}

std::vector<std::vector<double>> AgentConfig::uniform_points(std::size_t per_axis, double lo, double hi) {
    if (per_axis < 2) throw InvalidArgument("AgentConfig: need at least 2 grid points per axis");
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < per_axis; ++i) {
        for (std::size_t j = 0; j < per_axis; ++j) {
            const double step = (hi - lo) / static_cast<double>(per_axis - 1);
            pts.push_back({lo + step * static_cast<double>(i), lo + step * static_cast<double>(j)});
        }
    }
    return pts;
}

void AgentConfig::validate() const {
    if (points.empty()) throw InvalidArgument("AgentConfig: no covariate grid points");
    if (!(threshold >= 0.0)) throw InvalidArgument("AgentConfig: threshold must be non-negative");
    if (subset_size < 2 || subset_size > points.size()) {
        throw InvalidArgument("AgentConfig: subset size must lie in [2, number of grid points]");
    }
    for (const auto& p : points) {
        if (p.size() != points.front().size()) throw DimensionMismatch("AgentConfig: grid points differ in dimension");
    }
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_w(std::span<const double> w, std::size_t dim, const char* where) {
    if (w.size() != dim) {
        throw DimensionMismatch(std::string(where) + ": weight vector has " + std::to_string(w.size()) +
                                " entries, covariates have " + std::to_string(dim));
    }
}

// All pairs of X_G labelled by w; tied pairs are dropped.
PairwiseComparisons induced_comparisons(std::span<const double> w, const AgentConfig& agent) {
    std::vector<double> f(agent.points.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = dot(w, agent.points[i]);
    return build_comparisons_allow_empty(ItemTable(agent.points, std::move(f)), PairPolicy::all_pairs(),
                                         agent.transitivity_weight);
}

PairwiseComparisons as_comparisons(const PreferenceObservations& obs) {
    return PairwiseComparisons(ItemTable(obs.points, std::vector<double>(obs.points.size(), 0.0)), obs.pairs, obs.weight);
}

PreferenceObservations subset_pairs(const AgentConfig& agent) {
    PreferenceObservations obs;
    for (std::size_t i : select_subset(agent)) obs.points.push_back(agent.points[i]);
    for (std::size_t i = 0; i < obs.points.size(); ++i)
        for (std::size_t j = i + 1; j < obs.points.size(); ++j) obs.pairs.push_back({i, j, false});
    obs.weight = agent.transitivity_weight ? transitivity_weight(obs.points.size()) : 1.0;
    return obs;
}

double log_sum_exp(const std::vector<double>& v) {
    const double top = *std::max_element(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += std::exp(x - top);
    return top + std::log(s);
}

}  // namespace

std::vector<std::size_t> select_subset(const AgentConfig& agent) {
    agent.validate();
    std::vector<std::size_t> idx(agent.points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(derive_seed({agent.seed, 0}));
    shuffle(idx, rng);
    idx.resize(agent.subset_size);
    return idx;
}

TtbStrategy fit_agent_strategy(std::span<const double> w, const AgentConfig& agent, const NoisePrior& prior) {
    agent.validate();
    check_w(w, agent.points.front().size(), "fit_agent_strategy");
    const auto train = induced_comparisons(w, agent);
    const auto post = exhaustive_posterior(train, prior, ThresholdGrid::fixed(w.size(), agent.threshold));
    return post.map_entry().strategy;
}

PreferenceObservations simulate_agent(std::span<const double> true_w, const AgentConfig& agent, const NoisePrior& prior) {
    const TtbStrategy strategy = fit_agent_strategy(true_w, agent, prior);
    PreferenceObservations obs = subset_pairs(agent);
    Rng coin(derive_seed({agent.seed, 1}));
    for (auto& p : obs.pairs) {
        switch (ttb_predict(strategy, obs.points[p.first], obs.points[p.second])) {
            case Outcome::FirstWins: p.first_wins = true; break;
            case Outcome::SecondWins: p.first_wins = false; break;
            case Outcome::Undecided: p.first_wins = uniform_index(coin, 2) == 1; break;
        }
    }
    return obs;
}

PreferenceObservations unbiased_observations(std::span<const double> true_w, const AgentConfig& agent) {
    agent.validate();
    check_w(true_w, agent.points.front().size(), "unbiased_observations");
    PreferenceObservations obs = subset_pairs(agent);
    Rng coin(derive_seed({agent.seed, 2}));
    for (auto& p : obs.pairs) {
        const double fa = dot(true_w, obs.points[p.first]);
        const double fb = dot(true_w, obs.points[p.second]);
        p.first_wins = fa == fb ? uniform_index(coin, 2) == 1 : fa > fb;
    }
    return obs;
}

double ttb_evidence(std::span<const double> w, const AgentConfig& agent, const PreferenceObservations& obs,
                    const NoisePrior& prior) {
    agent.validate();
    check_w(w, agent.points.front().size(), "ttb_evidence");
    if (obs.pairs.empty()) return 0.0;
    const ThresholdGrid grid = ThresholdGrid::fixed(w.size(), agent.threshold);
    const auto post = exhaustive_posterior(induced_comparisons(w, agent), prior, grid);
    const CompiledComparisons observed(as_comparisons(obs), grid);

    std::vector<std::size_t> levels(w.size(), 0);
    std::vector<double> terms;
    terms.reserve(post.entries.size());
    for (std::size_t i = 0; i < post.entries.size(); ++i) {
        const auto& e = post.entries[i];
        const FitCounts h = observed.count(e.strategy.order(), e.strategy.directions(), levels);
        const double a = e.counts.n_incorrect + prior.alpha;
        const double b = e.counts.n_correct + prior.beta;
        terms.push_back(std::log(post.probabilities[i]) + h.n_undecided * std::log(0.5) +
                        log_beta_inc_half(a + h.n_incorrect, b + h.n_correct) - log_beta_inc_half(a, b));
    }
    return log_sum_exp(terms);
}

double unbiased_evidence(std::span<const double> w, const PreferenceObservations& obs) {
    double right = 0.0, wrong = 0.0, tie = 0.0;
    for (const auto& p : obs.pairs) {
        const auto& a = obs.points.at(p.first);
        const auto& b = obs.points.at(p.second);
        check_w(w, a.size(), "unbiased_evidence");
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += w[k] * (a[k] - b[k]);
        if (s == 0.0) {
            tie += 1.0;
        } else if ((s > 0.0) == p.first_wins) {
            right += 1.0;
        } else {
            wrong += 1.0;
        }
    }
    return std::log(2.0) + tie * std::log(0.5) + log_beta_inc_half(wrong + 1.0, right + 1.0);
}

std::pair<std::size_t, std::size_t> GridDensity::argmax() const {
    const auto it = std::max_element(values.begin(), values.end());
    const auto k = static_cast<std::size_t>(it - values.begin());
    return {k / w2.size(), k % w2.size()};
}

double GridDensity::mass_within(std::span<const double> center, double radius) const {
    if (center.size() != 2) throw DimensionMismatch("mass_within: center must be 2-dimensional");
    double inside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < w1.size(); ++i) {
        for (std::size_t j = 0; j < w2.size(); ++j) {
            const double v = at(i, j);
            total += v;
            if (std::hypot(w1[i] - center[0], w2[j] - center[1]) <= radius) inside += v;
        }
    }
    return inside / total;
}

GridDensity grid_posterior(const RegressionTask& task, const PreferenceObservations* obs, const AgentConfig* agent,
                           PairwiseModel model, DensityScaling scaling, const NoisePrior& prior) {
    task.validate();
    if (model != PairwiseModel::None && obs == nullptr) throw InvalidArgument("grid_posterior: observations required");
    if (model == PairwiseModel::Ttb && agent == nullptr) throw InvalidArgument("grid_posterior: agent config required");

    GridDensity g;
    g.w1 = task.grid.axis();
    g.w2 = task.grid.axis();
    g.scaling = scaling;
    std::vector<double> logp(g.w1.size() * g.w2.size());
    for (std::size_t i = 0; i < g.w1.size(); ++i) {
        for (std::size_t j = 0; j < g.w2.size(); ++j) {
            const double w[2] = {g.w1[i], g.w2[j]};
            double lp = -(w[0] * w[0] + w[1] * w[1]) / (2.0 * task.prior_variance);
            for (std::size_t n = 0; n < task.x.size(); ++n) {
                const double r = task.y[n] - dot(w, task.x[n]);
                lp -= r * r / (2.0 * task.noise_variance);
            }
            if (model == PairwiseModel::Ttb) lp += ttb_evidence(w, *agent, *obs, prior);
            if (model == PairwiseModel::Unbiased) lp += unbiased_evidence(w, *obs);
            logp[i * g.w2.size() + j] = lp;
        }
    }
    const double top = *std::max_element(logp.begin(), logp.end());
    g.values.resize(logp.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < logp.size(); ++k) {
        g.values[k] = std::exp(logp[k] - top);
        sum += g.values[k];
    }
    if (scaling == DensityScaling::Normalized) {
        for (double& v : g.values) v /= sum;
    }
    return g;
}

EmbeddingResult run_embedding_experiment(const EmbeddingConfig& config) {
    if (config.true_w.size() != 2) throw InvalidArgument("embedding experiment: true w must be 2-dimensional");
    EmbeddingResult result;

    Rng rng(derive_seed({config.seed, 10}));
    RegressionTask& task = result.task;
    task.noise_variance = config.noise_variance;
    task.prior_variance = config.prior_variance;
    task.grid = config.weight_grid;
    for (std::size_t n = 0; n < config.direct_observations; ++n) {
        std::vector<double> x(2);
        for (double& v : x) v = config.covariate_lo + (config.covariate_hi - config.covariate_lo) * uniform01(rng);
        task.y.push_back(dot(config.true_w, x) + std::sqrt(config.noise_variance) * standard_normal(rng));
        task.x.push_back(std::move(x));
    }
    task.validate();

    AgentConfig& agent = result.agent;
    agent.points = AgentConfig::uniform_points(config.grid_points_per_axis, config.covariate_lo, config.covariate_hi);
    agent.threshold = config.agent_threshold;
    agent.subset_size = config.subset_size;
    agent.seed = derive_seed({config.seed, 20});
    agent.transitivity_weight = config.transitivity_weight;
    agent.validate();

    result.agent_strategy = fit_agent_strategy(config.true_w, agent, config.prior);
    result.ttb_obs = simulate_agent(config.true_w, agent, config.prior);
    result.unbiased_obs = unbiased_observations(config.true_w, agent);

    auto panel = [&](const char* name, const PreferenceObservations* obs, PairwiseModel model) {
        result.panels.push_back({name, grid_posterior(task, obs, &agent, model, DensityScaling::Max1, config.prior)});
    };
    panel("no_pairwise", nullptr, PairwiseModel::None);
    panel("ttb_obs_ttb_model", &result.ttb_obs, PairwiseModel::Ttb);
    panel("unbiased_obs_ttb_model", &result.unbiased_obs, PairwiseModel::Ttb);
    panel("ttb_obs_unbiased_model", &result.ttb_obs, PairwiseModel::Unbiased);
    panel("unbiased_obs_unbiased_model", &result.unbiased_obs, PairwiseModel::Unbiased);
    return result;
}

void write_embedding_outputs(const EmbeddingResult& result, const std::vector<double>& true_w,
                             const std::filesystem::path& dir, bool svg) {
    std::filesystem::create_directories(dir);
    for (const auto& p : result.panels) {
        const auto path = dir / ("panel_" + p.name + ".csv");
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path.string());
        out << "w1,w2,density\n";
        const auto& d = p.density;
        for (std::size_t i = 0; i < d.w1.size(); ++i) {
            for (std::size_t j = 0; j < d.w2.size(); ++j) {
                out << format_number(d.w1[i]) << ',' << format_number(d.w2[j]) << ',' << format_number(d.at(i, j)) << '\n';
            }
        }
        if (!svg) continue;
        // Rows run from the largest w1 down; columns are w2.
        svg::Heatmap map;
        map.title = p.name;
        const std::size_t n1 = d.w1.size();
        for (std::size_t r = 0; r < n1; ++r) {
            const std::size_t i = n1 - 1 - r;
            std::vector<double> row(d.w2.size());
            for (std::size_t j = 0; j < d.w2.size(); ++j) row[j] = d.at(i, j);
            map.values.push_back(std::move(row));
        }
        if (true_w.size() == 2 && n1 > 1 && d.w2.size() > 1) {
            const double step1 = d.w1[1] - d.w1[0];
            const double step2 = d.w2[1] - d.w2[0];
            map.marker = std::make_pair((true_w[1] - d.w2.front()) / step2, (d.w1.back() - true_w[0]) / step1);
        }
        svg::heatmap(dir / ("panel_" + p.name + ".svg"), map);
    }
}

}  // namespace pttb
