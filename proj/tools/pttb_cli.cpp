// pttb: command-line front end for fitting, benchmarking, traces, the
// regression embedding experiment and single-pair prediction.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pttb/baselines.hpp"
#include "pttb/benchmark.hpp"
#include "pttb/embedding.hpp"
#include "pttb/inference.hpp"
#include "pttb/likelihood.hpp"
#include "pttb/prediction.hpp"
#include "pttb/svg.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kBadArguments = 2, kDataError = 3, kCapExceeded = 4 };

struct BadArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("PTTB_SEED");
    if (env == nullptr || *env == '\0') return 0;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw BadArguments("");
        return v;
    } catch (...) {
        throw BadArguments(std::string("PTTB_SEED is not an unsigned integer: ") + env);
    }
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw BadArguments("");
        } catch (...) {
            throw BadArguments(what + ": not a number: '" + tok + "'");
        }
    }
    if (out.empty()) throw BadArguments(what + ": empty list");
    return out;
}

std::string join_order(const pttb::TtbStrategy& s) {
    std::string out;
    for (std::size_t i = 0; i < s.order().size(); ++i) out += (i ? " " : "") + std::to_string(s.order()[i] + 1);
    return out;
}

std::string join_directions(const pttb::TtbStrategy& s) {
    std::string out;
    for (std::size_t i = 0; i < s.order().size(); ++i) {
        out += s.directions()[s.order()[i]] == pttb::Direction::Positive ? '+' : '-';
    }
    return out;
}

std::string join_thresholds(const pttb::TtbStrategy& s) {
    std::string out;
    for (std::size_t i = 0; i < s.order().size(); ++i) {
        out += (i ? " " : "") + pttb::format_number(s.thresholds()[s.order()[i]]);
    }
    return out;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw pttb::Error("cannot write " + path.string());
    return out;
}

void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                    const std::vector<std::string>& argv) {
    json m;
    m["tool"] = "pttb";
    m["version"] = PTTB_VERSION;
    m["command"] = command;
    m["argv"] = argv;
    m["config"] = config;
    open_out(dir / "manifest.json") << m.dump(2) << '\n';
}

// ─── Shared model options ────────────────────────────────────

struct DataOptions {
    std::string path;
    std::string criterion;
    std::vector<std::string> ignore;

    void add(CLI::App* app) {
        app->add_option("--data", path, "CSV file with a header row")->required();
        app->add_option("--criterion", criterion, "Criterion column")->required();
        app->add_option("--ignore", ignore, "Columns that are neither cue nor criterion")->delimiter(',');
    }
    json to_json() const { return {{"data", path}, {"criterion", criterion}, {"ignore", ignore}}; }
};

struct ModelOptions {
    std::string thresholds = "none";
    bool no_transitivity_weight = false;
    double alpha = 1.0;
    double beta = 1.0;

    void add(CLI::App* app) {
        app->add_option("--thresholds", thresholds, "none | auto:K | comma-separated candidate list")
            ->capture_default_str();
        app->add_flag("--no-transitivity-weight", no_transitivity_weight, "Use unit weights on training pairs");
        app->add_option("--alpha", alpha, "Beta prior alpha on epsilon")->capture_default_str();
        app->add_option("--beta", beta, "Beta prior beta on epsilon")->capture_default_str();
    }
    pttb::NoisePrior prior() const {
        pttb::NoisePrior p{alpha, beta};
        p.validate();
        return p;
    }
    std::optional<pttb::ThresholdGrid> grid(const pttb::PairwiseComparisons& data) const {
        if (thresholds == "none") return std::nullopt;
        if (thresholds.rfind("auto:", 0) == 0) {
            std::size_t k = 0;
            try {
                k = std::stoul(thresholds.substr(5));
            } catch (...) {
                throw BadArguments("--thresholds auto:K needs a positive integer K");
            }
            if (k == 0) throw BadArguments("--thresholds auto:K needs K >= 1");
            return pttb::default_threshold_grid(data, k);
        }
        auto values = parse_doubles(thresholds, "--thresholds");
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return pttb::ThresholdGrid(std::vector<std::vector<double>>(data.num_cues(), values));
    }
    json to_json() const {
        return {{"thresholds", thresholds},
                {"transitivity_weight", !no_transitivity_weight},
                {"alpha", alpha},
                {"beta", beta}};
    }
};

struct SamplingOptions {
    std::string method = "mcmc";
    std::size_t samples = 1000;
    std::size_t burn_in = 100;
    double cap = pttb::kDefaultEnumerationCap;

    void add(CLI::App* app) {
        app->add_option("--method", method, "exact | mcmc")
            ->check(CLI::IsMember({"exact", "mcmc"}))
            ->capture_default_str();
        app->add_option("--samples", samples, "Recorded Gibbs samples")->capture_default_str();
        app->add_option("--burnin", burn_in, "Discarded Gibbs sweeps")->capture_default_str();
        app->add_option("--cap", cap, "Largest configuration count for exact enumeration")->capture_default_str();
    }
    json to_json() const { return {{"method", method}, {"samples", samples}, {"burnin", burn_in}, {"cap", cap}}; }
};

struct Fitted {
    pttb::LoadedTable loaded;
    std::optional<pttb::PairwiseComparisons> data;
    pttb::StrategyPosterior posterior;
};

Fitted fit_posterior(const DataOptions& d, const ModelOptions& m, const SamplingOptions& s, std::uint64_t seed) {
    Fitted f{pttb::load_item_table(d.path, d.criterion, d.ignore), std::nullopt, {}};
    f.data.emplace(pttb::build_comparisons(f.loaded.table, pttb::PairPolicy::all_pairs(), !m.no_transitivity_weight));
    const auto grid = m.grid(*f.data);
    if (s.method == "exact") {
        f.posterior = pttb::exhaustive_posterior(*f.data, m.prior(), grid, s.cap);
    } else {
        pttb::SamplerConfig sc;
        sc.samples = s.samples;
        sc.burn_in = s.burn_in;
        sc.seed = seed;
        f.posterior = pttb::gibbs_sample(*f.data, m.prior(), sc, grid);
    }
    return f;
}

json strategy_json(const pttb::TtbStrategy& s) {
    return {{"order", join_order(s)}, {"directions", join_directions(s)}, {"thresholds", join_thresholds(s)}};
}

// ─── fit ─────────────────────────────────────────────────────

struct FitCommand {
    DataOptions data;
    ModelOptions model;
    SamplingOptions sampling;
    std::optional<std::uint64_t> seed;
    std::string out = "pttb_fit";
    std::size_t top = 20;
    bool svg = false;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("fit", "Posterior over TTB strategies for one dataset");
        data.add(cmd);
        model.add(cmd);
        sampling.add(cmd);
        cmd->add_option("--seed", seed, "Sampler seed (default: PTTB_SEED or 0)");
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
        cmd->add_option("--top", top, "Configurations listed in summary.json")->capture_default_str();
        cmd->add_flag("--svg", svg, "Also write ranks.svg");
    }

    void run(const std::vector<std::string>& argv) {
        const std::uint64_t s = seed.value_or(default_seed());
        const Fitted f = fit_posterior(data, model, sampling, s);
        const auto& post = f.posterior;
        fs::create_directories(out);

        // Aggregate identical strategies; entry order decides ties.
        struct Row {
            const pttb::PosteriorEntry* entry;
            double probability;
            std::size_t first_seen;
        };
        std::vector<Row> rows;
        std::map<std::tuple<std::vector<std::size_t>, std::vector<pttb::Direction>, std::vector<double>>, std::size_t>
            index;
        const auto weights = post.entry_weights();
        for (std::size_t i = 0; i < post.entries.size(); ++i) {
            const auto& st = post.entries[i].strategy;
            auto key = std::make_tuple(st.order(), st.directions(), st.thresholds());
            auto [it, inserted] = index.emplace(key, rows.size());
            if (inserted) rows.push_back({&post.entries[i], 0.0, i});
            rows[it->second].probability += weights[i];
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            if (a.probability != b.probability) return a.probability > b.probability;
            return a.first_seen < b.first_seen;
        });

        auto out_post = open_out(fs::path(out) / "posterior.csv");
        out_post << "rank,order,directions,thresholds,n_correct,n_incorrect,n_undecided,log_posterior,probability\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& e = *rows[r].entry;
            out_post << r + 1 << ',' << join_order(e.strategy) << ',' << join_directions(e.strategy) << ','
                     << join_thresholds(e.strategy) << ',' << pttb::format_number(e.counts.n_correct) << ','
                     << pttb::format_number(e.counts.n_incorrect) << ',' << pttb::format_number(e.counts.n_undecided)
                     << ',' << pttb::format_number(e.log_posterior) << ',' << pttb::format_number(rows[r].probability)
                     << '\n';
        }

        if (post.mode == pttb::PosteriorMode::Sampled) {
            auto out_s = open_out(fs::path(out) / "samples.csv");
            out_s << "sample,order,directions,thresholds,log_posterior\n";
            for (std::size_t i = 0; i < post.entries.size(); ++i) {
                const auto& e = post.entries[i];
                out_s << i + 1 << ',' << join_order(e.strategy) << ',' << join_directions(e.strategy) << ','
                      << join_thresholds(e.strategy) << ',' << pttb::format_number(e.log_posterior) << '\n';
            }
        }

        const auto validities = pttb::cue_validities(*f.data);
        std::optional<fs::path> svg_path;
        if (svg) svg_path = fs::path(out) / "ranks.svg";
        pttb::export_cue_rank_heatmap(post, validities, f.loaded.table.cue_names(), fs::path(out) / "ranks.csv",
                                      svg_path);

        double eps_mean = 0.0;
        for (std::size_t i = 0; i < post.entries.size(); ++i) {
            eps_mean += weights[i] * pttb::epsilon_posterior(post.entries[i].counts, model.prior()).mean();
        }
        json summary;
        summary["method"] = sampling.method;
        summary["items"] = f.loaded.table.num_items();
        summary["dropped_rows"] = f.loaded.dropped_rows;
        summary["pairs"] = f.data->size();
        summary["pair_weight"] = f.data->weight();
        summary["cues"] = f.loaded.table.cue_names();
        summary["entries"] = post.entries.size();
        summary["distinct_strategies"] = rows.size();
        summary["epsilon_posterior_mean"] = eps_mean;
        summary["map"] = strategy_json(post.map_entry().strategy);
        summary["map"]["log_posterior"] = post.map_entry().log_posterior;
        json top_rows = json::array();
        for (std::size_t r = 0; r < std::min(top, rows.size()); ++r) {
            json j = strategy_json(rows[r].entry->strategy);
            j["probability"] = rows[r].probability;
            top_rows.push_back(j);
        }
        summary["top"] = top_rows;
        open_out(fs::path(out) / "summary.json") << summary.dump(2) << '\n';

        json config = data.to_json();
        config.update(model.to_json());
        config.update(sampling.to_json());
        config["seed"] = s;
        config["out"] = out;
        config["top"] = top;
        config["svg"] = svg;
        write_manifest(out, "fit", config, argv);
        std::cout << "wrote " << rows.size() << " configurations to " << out << '\n';
    }
};

// ─── bench ───────────────────────────────────────────────────

struct BenchCommand {
    std::vector<std::string> datasets;
    std::string fractions = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::size_t reps = 100;
    std::vector<std::string> methods{"PTTB", "PTTB-CDT", "TTB", "LOGREG"};
    std::size_t samples = 1000;
    std::size_t burn_in = 100;
    std::size_t levels = 4;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
    bool no_timing = false;
    bool no_transitivity_weight = false;
    std::string out = "pttb_bench";
    bool svg = false;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("bench", "Replicated train/test accuracy comparison");
        cmd->add_option("--dataset", datasets, "NAME=PATH:CRITERION[:IGNORED,...] (repeatable)")->required();
        cmd->add_option("--fractions", fractions, "Training fractions")->capture_default_str();
        cmd->add_option("--reps", reps, "Replications per fraction")->capture_default_str();
        cmd->add_option("--methods", methods, "PTTB, PTTB-CDT, TTB, LOGREG")->delimiter(',');
        cmd->add_option("--samples", samples, "Gibbs samples per fit")->capture_default_str();
        cmd->add_option("--burnin", burn_in, "Gibbs burn-in per fit")->capture_default_str();
        cmd->add_option("--levels", levels, "Threshold quantile levels K for PTTB-CDT")->capture_default_str();
        cmd->add_option("--seed", seed, "Base seed (default: PTTB_SEED or 0)");
        cmd->add_option("--jobs", jobs, "Concurrent work units")->capture_default_str();
        cmd->add_flag("--no-timing", no_timing, "Write 0 in the seconds column");
        cmd->add_flag("--no-transitivity-weight", no_transitivity_weight, "Unit weights on PTTB training pairs");
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
        cmd->add_flag("--svg", svg, "Also write accuracy curves per dataset");
    }

    static pttb::DatasetSpec parse_dataset(const std::string& text) {
        const auto eq = text.find('=');
        if (eq == std::string::npos || eq == 0) throw BadArguments("--dataset expects NAME=PATH:CRITERION, got " + text);
        pttb::DatasetSpec spec;
        spec.name = text.substr(0, eq);
        std::vector<std::string> parts;
        std::stringstream ss(text.substr(eq + 1));
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
            throw BadArguments("--dataset expects NAME=PATH:CRITERION[:IGNORED,...], got " + text);
        }
        spec.path = parts[0];
        spec.criterion = parts[1];
        if (parts.size() == 3) {
            std::stringstream is(parts[2]);
            while (std::getline(is, tok, ',')) {
                if (!tok.empty()) spec.ignore_columns.push_back(tok);
            }
        }
        return spec;
    }

    void run(const std::vector<std::string>& argv) {
        pttb::BenchmarkConfig config;
        for (const auto& d : datasets) config.datasets.push_back(parse_dataset(d));
        config.fractions = parse_doubles(fractions, "--fractions");
        config.replications = reps;
        config.methods.clear();
        for (const auto& m : methods) {
            try {
                config.methods.push_back(pttb::parse_method(m));
            } catch (const pttb::InvalidArgument& e) {
                throw BadArguments(e.what());
            }
        }
        config.samples = samples;
        config.burn_in = burn_in;
        config.threshold_levels = levels;
        config.base_seed = seed.value_or(default_seed());
        config.transitivity_weight = !no_transitivity_weight;
        config.jobs = jobs;
        config.record_timing = !no_timing;
        config.validate();

        const auto table = pttb::run_benchmark(config);
        fs::create_directories(out);
        pttb::write_results_csv(table, fs::path(out) / "results.csv");
        const auto summary = pttb::summarize(table);
        pttb::write_summary_csv(summary, fs::path(out) / "summary.csv");
        for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';

        if (svg) {
            for (const auto& d : config.datasets) {
                std::vector<pttb::svg::Series> series;
                for (auto m : config.methods) {
                    pttb::svg::Series s{pttb::method_name(m), {}, {}};
                    for (const auto& row : summary) {
                        if (row.dataset == d.name && row.method == s.name) {
                            s.x.push_back(row.fraction);
                            s.y.push_back(row.mean_accuracy);
                        }
                    }
                    series.push_back(std::move(s));
                }
                pttb::svg::line_chart(fs::path(out) / ("accuracy_" + d.name + ".svg"), d.name, "training fraction",
                                      "mean test accuracy", series);
            }
        }

        json cfg;
        json ds = json::array();
        for (const auto& d : config.datasets) {
            ds.push_back({{"name", d.name}, {"path", d.path.string()}, {"criterion", d.criterion},
                          {"ignore", d.ignore_columns}});
        }
        cfg["datasets"] = ds;
        cfg["fractions"] = config.fractions;
        cfg["replications"] = reps;
        json ms = json::array();
        for (auto m : config.methods) ms.push_back(pttb::method_name(m));
        cfg["methods"] = ms;
        cfg["samples"] = samples;
        cfg["burnin"] = burn_in;
        cfg["levels"] = levels;
        cfg["seed"] = config.base_seed;
        cfg["jobs"] = jobs;
        cfg["record_timing"] = config.record_timing;
        cfg["transitivity_weight"] = config.transitivity_weight;
        cfg["svg"] = svg;
        cfg["warnings"] = table.warnings;
        write_manifest(out, "bench", cfg, argv);
        std::cout << "wrote " << table.rows.size() << " result rows to " << out << '\n';
    }
};

// ─── trace ───────────────────────────────────────────────────

struct TraceCommand {
    DataOptions data;
    ModelOptions model;
    std::size_t iterations = 50;
    std::size_t restarts = 1;
    std::optional<std::uint64_t> seed;
    std::string out = "pttb_trace";
    bool svg = false;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("trace", "Log posterior after each Gibbs sweep from random starts");
        data.add(cmd);
        model.add(cmd);
        cmd->add_option("--iterations", iterations, "Sweeps per chain")->capture_default_str();
        cmd->add_option("--restarts", restarts, "Independent chains")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Seed (default: PTTB_SEED or 0)");
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
        cmd->add_flag("--svg", svg, "Also write trace.svg");
    }

    void run(const std::vector<std::string>& argv) {
        const std::uint64_t s = seed.value_or(default_seed());
        const auto loaded = pttb::load_item_table(data.path, data.criterion, data.ignore);
        const auto comparisons =
            pttb::build_comparisons(loaded.table, pttb::PairPolicy::all_pairs(), !model.no_transitivity_weight);
        const auto grid = model.grid(comparisons);
        fs::create_directories(out);
        std::vector<pttb::svg::Series> series;
        for (std::size_t r = 0; r < restarts; ++r) {
            const auto trace =
                pttb::trace_log_posterior(comparisons, model.prior(), iterations, pttb::derive_seed({s, r}), grid);
            const std::string name = restarts == 1 ? "trace.csv" : "trace_" + std::to_string(r + 1) + ".csv";
            pttb::write_trace_csv(trace, fs::path(out) / name);
            pttb::svg::Series line{"restart " + std::to_string(r + 1), {}, trace.scaled};
            for (std::size_t i = 0; i < trace.scaled.size(); ++i) line.x.push_back(static_cast<double>(i));
            series.push_back(std::move(line));
        }
        if (svg) pttb::svg::line_chart(fs::path(out) / "trace.svg", "Gibbs traces", "iteration", "scaled log posterior", series);

        json config = data.to_json();
        config.update(model.to_json());
        config["iterations"] = iterations;
        config["restarts"] = restarts;
        config["seed"] = s;
        config["svg"] = svg;
        write_manifest(out, "trace", config, argv);
        std::cout << "wrote " << restarts << " trace(s) to " << out << '\n';
    }
};

// ─── embed ───────────────────────────────────────────────────

struct EmbedCommand {
    std::optional<std::uint64_t> seed;
    std::string true_w = "1,0.8";
    std::size_t direct = 2;
    std::size_t subset = 10;
    std::size_t grid_points = 5;
    double threshold = 0.25;
    std::size_t steps = 47;
    double w_lo = -2.0;
    double w_hi = 2.0;
    bool no_transitivity_weight = false;
    std::string out = "pttb_embed";
    bool svg = false;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("embed", "Linear regression with TTB-biased pairwise feedback");
        cmd->add_option("--seed", seed, "Seed (default: PTTB_SEED or 0)");
        cmd->add_option("--true-w", true_w, "True weight vector w1,w2")->capture_default_str();
        cmd->add_option("--direct", direct, "Direct observations")->capture_default_str();
        cmd->add_option("--subset", subset, "Observed points from the covariate grid")->capture_default_str();
        cmd->add_option("--grid-points", grid_points, "Covariate grid points per axis")->capture_default_str();
        cmd->add_option("--threshold", threshold, "Agent covariate threshold")->capture_default_str();
        cmd->add_option("--steps", steps, "Weight grid points per axis")->capture_default_str();
        cmd->add_option("--w-lo", w_lo, "Weight grid lower bound")->capture_default_str();
        cmd->add_option("--w-hi", w_hi, "Weight grid upper bound")->capture_default_str();
        cmd->add_flag("--no-transitivity-weight", no_transitivity_weight, "Unit weights on agent pairs");
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
        cmd->add_flag("--svg", svg, "Also write SVG heatmaps");
    }

    void run(const std::vector<std::string>& argv) {
        pttb::EmbeddingConfig config;
        config.seed = seed.value_or(default_seed());
        config.true_w = parse_doubles(true_w, "--true-w");
        if (config.true_w.size() != 2) throw BadArguments("--true-w needs exactly two values");
        config.direct_observations = direct;
        config.subset_size = subset;
        config.grid_points_per_axis = grid_points;
        config.agent_threshold = threshold;
        config.weight_grid = {w_lo, w_hi, steps};
        config.transitivity_weight = !no_transitivity_weight;
        const auto result = pttb::run_embedding_experiment(config);
        pttb::write_embedding_outputs(result, config.true_w, out, svg);

        json cfg;
        cfg["seed"] = config.seed;
        cfg["true_w"] = config.true_w;
        cfg["direct"] = direct;
        cfg["subset"] = subset;
        cfg["grid_points"] = grid_points;
        cfg["threshold"] = threshold;
        cfg["steps"] = steps;
        cfg["w_lo"] = w_lo;
        cfg["w_hi"] = w_hi;
        cfg["transitivity_weight"] = config.transitivity_weight;
        cfg["noise_variance"] = config.noise_variance;
        cfg["prior_variance"] = config.prior_variance;
        cfg["svg"] = svg;
        cfg["agent_strategy"] = strategy_json(result.agent_strategy);
        write_manifest(out, "embed", cfg, argv);
        std::cout << "wrote " << result.panels.size() << " panels to " << out << '\n';
    }
};

// ─── predict ─────────────────────────────────────────────────

struct PredictCommand {
    DataOptions data;
    ModelOptions model;
    SamplingOptions sampling;
    std::optional<std::uint64_t> seed;
    std::string x1;
    std::string x2;
    std::string out = "pttb_predict";

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("predict", "Posterior predictive for one new pair");
        data.add(cmd);
        model.add(cmd);
        sampling.add(cmd);
        cmd->add_option("--seed", seed, "Sampler seed (default: PTTB_SEED or 0)");
        cmd->add_option("--x1", x1, "Cue values of the first item")->required();
        cmd->add_option("--x2", x2, "Cue values of the second item")->required();
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
    }

    void run(const std::vector<std::string>& argv) {
        const std::uint64_t s = seed.value_or(default_seed());
        const auto a = parse_doubles(x1, "--x1");
        const auto b = parse_doubles(x2, "--x2");
        const Fitted f = fit_posterior(data, model, sampling, s);
        if (a.size() != f.loaded.table.num_cues() || b.size() != f.loaded.table.num_cues()) {
            throw BadArguments("--x1/--x2 need " + std::to_string(f.loaded.table.num_cues()) + " cue values");
        }
        const auto r = pttb::predictive_prob(f.posterior, model.prior(), a, b);
        json result;
        result["p_first"] = r.p_first;
        result["p_second"] = r.p_second;
        result["decided"] = r.decided == pttb::DecidedLabel::First    ? "first"
                            : r.decided == pttb::DecidedLabel::Second ? "second"
                                                                       : "coin";
        fs::create_directories(out);
        open_out(fs::path(out) / "prediction.json") << result.dump(2) << '\n';

        json config = data.to_json();
        config.update(model.to_json());
        config.update(sampling.to_json());
        config["seed"] = s;
        config["x1"] = a;
        config["x2"] = b;
        write_manifest(out, "predict", config, argv);
        std::cout << result.dump() << '\n';
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic Take The Best"};
    app.set_version_flag("--version", PTTB_VERSION);
    app.require_subcommand(1);
    FitCommand fit;
    BenchCommand bench;
    TraceCommand trace;
    EmbedCommand embed;
    PredictCommand predict;
    fit.add(app);
    bench.add(app);
    trace.add(app);
    embed.add(app);
    predict.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArguments;
    }

    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (app.got_subcommand("fit")) fit.run(args);
        if (app.got_subcommand("bench")) bench.run(args);
        if (app.got_subcommand("trace")) trace.run(args);
        if (app.got_subcommand("embed")) embed.run(args);
        if (app.got_subcommand("predict")) predict.run(args);
    } catch (const BadArguments& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const pttb::EnumerationCapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const pttb::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const pttb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kOk;
}
