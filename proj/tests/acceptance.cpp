// Acceptance suite: one PASS/FAIL line per criterion.
//
//   pttb_acceptance            run every criterion
//   pttb_acceptance <id>       run one of 1 2 3 4 5 6-mileage 6-city 7 8
//
// Exit status: 0 pass, 1 fail, 77 skipped (required data not present).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "pttb/benchmark.hpp"
#include "pttb/embedding.hpp"
#include "pttb/inference.hpp"
#include "pttb/likelihood.hpp"
#include "pttb/prediction.hpp"
#include "pttb/special_functions.hpp"

using namespace pttb;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Result {
    Verdict verdict;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

// ─── Datasets ────────────────────────────────────────────────

struct DatasetEntry {
    std::string name;
    std::string file;
    std::string criterion;
    std::vector<std::string> ignore;
};

// Built-in column conventions; data/datasets.json (a list of objects with the
// same fields) overrides them.
std::vector<DatasetEntry> dataset_registry() {
    std::vector<DatasetEntry> reg{
        {"city", "city.csv", "Population", {"Name"}},
        {"homeless", "homeless.csv", "Homeless", {"Name"}},
        {"profsalary", "profsalary.csv", "Salary", {"Name"}},
        {"mileage", "mileage.csv", "Miles_per_Gallon", {"Name"}},
    };
    const fs::path cfg = fs::path(PTTB_DATA_DIR) / "datasets.json";
    if (fs::exists(cfg)) {
        std::ifstream in(cfg);
        for (const auto& j : nlohmann::json::parse(in)) {
            DatasetEntry e{j.at("name"), j.at("file"), j.at("criterion"), j.value("ignore", std::vector<std::string>{})};
            auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& r) { return r.name == e.name; });
            if (it != reg.end()) {
                *it = e;
            } else {
                reg.push_back(e);
            }
        }
    }
    return reg;
}

std::optional<DatasetEntry> find_dataset(const std::string& name) {
    for (const auto& d : dataset_registry()) {
        if (d.name == name && fs::exists(fs::path(PTTB_DATA_DIR) / d.file)) return d;
    }
    return std::nullopt;
}

ItemTable load(const DatasetEntry& d) {
    return load_item_table(fs::path(PTTB_DATA_DIR) / d.file, d.criterion, d.ignore).table;
}

// ─── Synthetic instances for the sampler checks ──────────────

// Binary cues with unequal densities, criterion a noisy lexicographic score,
// all pairs unweighted. Concentrated enough for 10^4 draws to resolve.
PairwiseComparisons synthetic_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 24, m = 4;
    std::vector<double> density(m), weight(m);
    std::vector<int> sign(m);
    for (std::size_t k = 0; k < m; ++k) {
        density[k] = 0.2 + 0.6 * u(rng);
        sign[k] = u(rng) < 0.5 ? 1 : -1;
        weight[k] = std::pow(2.0, static_cast<double>(m - k)) * (0.75 + 0.5 * u(rng));
    }
    std::vector<std::vector<double>> items(n, std::vector<double>(m));
    std::vector<double> crit(n);
    for (std::size_t i = 0; i < n; ++i) {
        double f = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            items[i][k] = u(rng) < density[k] ? 1.0 : 0.0;
            f += sign[k] * weight[k] * items[i][k];
        }
        crit[i] = f + 1.5 * g(rng);
    }
    return build_comparisons(ItemTable(items, crit));
}

using Key = std::pair<std::vector<std::size_t>, std::vector<Direction>>;

// ─── Criteria ────────────────────────────────────────────────

Result criterion1() {
    const double e1 = std::abs(log_marginal_likelihood({0, 0, 1}) - std::log(0.5));
    const double e2 = std::abs(log_marginal_likelihood({1, 0, 0}) - std::log(0.75));
    const double e3 = std::abs(log_marginal_likelihood({0, 1, 0}) - std::log(0.25));
    const double worst = std::max({e1, e2, e3});
    return {worst <= 1e-12 ? Verdict::Pass : Verdict::Fail, "max abs error " + fmt(worst) + " (tol 1e-12)"};
}

Result criterion2() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> logu(std::log(0.1), std::log(500.0));
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < 100; ++i) points.emplace_back(std::exp(logu(rng)), std::exp(logu(rng)));
    // Weighted counts: k · log2(N!)/C(N,2) plus a unit prior.
    std::uniform_int_distribution<int> items(3, 60), count(0, 400);
    while (points.size() < 200) {
        const double w = transitivity_weight(static_cast<std::size_t>(items(rng)));
        const double a = 1.0 + w * count(rng), b = 1.0 + w * count(rng);
        if (a <= 500.0 && b <= 500.0) points.emplace_back(a, b);
    }
    double worst = 0.0;
    std::pair<double, double> at{};
    for (auto [a, b] : points) {
        const double ours = log_beta_inc_half(a, b);
        const double ref = oracle::log_beta_inc_half(a, b);
        const double rel = std::abs(std::expm1(ours - ref));  // relative error of B_{1/2}
        if (rel > worst) worst = rel, at = {a, b};
    }
    return {worst <= 1e-10 ? Verdict::Pass : Verdict::Fail,
            "200 points, max relative error " + fmt(worst) + " at (" + fmt(at.first) + ", " + fmt(at.second) +
                ") (tol 1e-10)"};
}

struct SamplerRun {
    StrategyPosterior exact;
    StrategyPosterior sampled;
};

std::vector<SamplerRun> sampler_runs() {
    std::vector<SamplerRun> runs;
    for (std::uint64_t inst = 0; inst < 5; ++inst) {
        const auto data = synthetic_instance(100 + inst);
        SamplerConfig cfg;
        cfg.samples = 10000;
        cfg.burn_in = 100;
        cfg.seed = 500 + inst;
        runs.push_back({exhaustive_posterior(data), gibbs_sample(data, {}, cfg)});
    }
    return runs;
}

Result criterion3() {
    std::ostringstream detail;
    bool ok = true;
    for (const auto& run : sampler_runs()) {
        std::map<Key, double> freq;
        for (const auto& e : run.sampled.entries) freq[{e.strategy.order(), e.strategy.directions()}] += 1.0;
        double tv = 0.0;
        for (std::size_t i = 0; i < run.exact.entries.size(); ++i) {
            const auto& s = run.exact.entries[i].strategy;
            const auto it = freq.find({s.order(), s.directions()});
            const double f = it == freq.end() ? 0.0 : it->second / static_cast<double>(run.sampled.entries.size());
            tv += std::abs(f - run.exact.probabilities[i]);
        }
        tv *= 0.5;
        ok &= tv < 0.05 && run.exact.entries.size() == 384;
        detail << fmt(tv, 3) << ' ';
    }
    return {ok ? Verdict::Pass : Verdict::Fail, "TV per instance: " + detail.str() + "(tol < 0.05, 384 configs)"};
}

Result criterion4() {
    double worst = 0.0;
    for (const auto& run : sampler_runs()) {
        const PosteriorPredictor exact(run.exact), sampled(run.sampled);
        for (int a = 0; a < 16; ++a) {
            for (int b = 0; b < 16; ++b) {
                std::vector<double> x1(4), x2(4);
                for (int k = 0; k < 4; ++k) x1[k] = (a >> k) & 1, x2[k] = (b >> k) & 1;
                worst = std::max(worst, std::abs(exact.predict(x1, x2).p_first - sampled.predict(x1, x2).p_first));
            }
        }
    }
    StrategyPosterior conc;
    conc.entries.push_back({TtbStrategy::identity(1), {1, 0, 0}, 0.0});
    conc.probabilities = {1.0};
    conc.grid = ThresholdGrid::zeros(1);
    const std::vector<double> one{1.0}, zero{0.0};
    const double err79 = std::abs(predictive_prob(conc, {}, one, zero).p_first - 7.0 / 9.0);
    const bool ok = worst <= 0.02 && err79 <= 1e-10;
    return {ok ? Verdict::Pass : Verdict::Fail, "max |sampled - exact| " + fmt(worst, 3) + " (tol 0.02); |p - 7/9| " +
                                                    fmt(err79, 3) + " (tol 1e-10)"};
}

Result criterion5() {
    std::ostringstream detail;
    bool ok = true;
    bool any = false;
    for (const auto& d : dataset_registry()) {
        if (!fs::exists(fs::path(PTTB_DATA_DIR) / d.file)) continue;
        any = true;
        const auto data = build_comparisons(load(d), PairPolicy::all_pairs(), true);
        int hits = 0;
        for (std::uint64_t r = 0; r < 20; ++r) {
            const auto trace = trace_log_posterior(data, {}, 50, derive_seed({5, r}));
            hits += trace.scaled[1] > 0.5;
        }
        ok &= hits >= 16;
        detail << d.name << ' ' << hits << "/20; ";
    }
    if (!any) return {Verdict::Skip, "no benchmark dataset found in " + std::string(PTTB_DATA_DIR)};
    return {ok ? Verdict::Pass : Verdict::Fail, detail.str() + "(need >= 16/20 with scaled value after sweep 1 > 0.5)"};
}

std::map<std::string, double> mean_accuracy(const DatasetEntry& d, double fraction, std::vector<Method> methods) {
    BenchmarkConfig cfg;
    cfg.fractions = {fraction};
    cfg.replications = 100;
    cfg.methods = std::move(methods);
    cfg.samples = 1000;
    cfg.burn_in = 100;
    cfg.record_timing = false;
    const auto table = run_benchmark(cfg, {{d.name, load(d)}});
    std::map<std::string, double> out;
    for (const auto& s : summarize(table)) out[s.method] = s.mean_accuracy;
    return out;
}

Result criterion6_mileage() {
    const auto d = find_dataset("mileage");
    if (!d) return {Verdict::Skip, "mileage.csv not found in " + std::string(PTTB_DATA_DIR)};
    auto acc = mean_accuracy(*d, 0.1, {Method::Pttb, Method::PttbCdt});
    const bool ok = acc["PTTB-CDT"] > acc["PTTB"];
    return {ok ? Verdict::Pass : Verdict::Fail,
            "mileage @0.1, 100 reps: PTTB-CDT " + fmt(acc["PTTB-CDT"]) + " vs PTTB " + fmt(acc["PTTB"]) + " (need >)"};
}

Result criterion6_city() {
    const auto d = find_dataset("city");
    if (!d) return {Verdict::Skip, "city.csv not found in " + std::string(PTTB_DATA_DIR)};
    auto acc = mean_accuracy(*d, 0.5, {Method::Pttb, Method::Ttb});
    const bool ok = acc["PTTB"] >= acc["TTB"] - 0.01;
    return {ok ? Verdict::Pass : Verdict::Fail,
            "city @0.5, 100 reps: PTTB " + fmt(acc["PTTB"]) + " vs TTB " + fmt(acc["TTB"]) + " (need >= TTB - 0.01)"};
}

Result criterion7() {
    int pass_b = 0, pass_c = 0;
    double worst_a = 0.0;
    std::ostringstream detail;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EmbeddingConfig cfg;
        cfg.seed = seed;
        const auto r = run_embedding_experiment(cfg);
        const auto& none = r.panels[0].density;
        const oracle::GaussianPosterior ref(r.task.x, r.task.y, cfg.noise_variance, cfg.prior_variance);
        double top = -std::numeric_limits<double>::infinity();
        for (double a : none.w1)
            for (double b : none.w2) top = std::max(top, ref.log_density(std::vector<double>{a, b}));
        for (std::size_t i = 0; i < none.w1.size(); ++i) {
            for (std::size_t j = 0; j < none.w2.size(); ++j) {
                const double expected = std::exp(ref.log_density(std::vector<double>{none.w1[i], none.w2[j]}) - top);
                worst_a = std::max(worst_a, std::abs(none.at(i, j) - expected) / expected);
            }
        }
        const double m_ttb = r.panels[1].density.mass_within(cfg.true_w, 0.5);
        const double m_unb = r.panels[3].density.mass_within(cfg.true_w, 0.5);
        pass_b += m_ttb > m_unb;
        const auto& uu = r.panels[4].density;
        const auto [i, j] = uu.argmax();
        const double dist = std::hypot(uu.w1[i] - cfg.true_w[0], uu.w2[j] - cfg.true_w[1]);
        pass_c += dist <= 0.5;
        detail << "seed " << seed << ": mass " << fmt(m_ttb, 3) << " vs " << fmt(m_unb, 3) << ", argmax dist "
               << fmt(dist, 3) << '\n';
    }
    std::cerr << detail.str();
    const bool ok = worst_a <= 1e-8 && pass_b > 5 && pass_c > 5;
    return {ok ? Verdict::Pass : Verdict::Fail, "(a) max rel error " + fmt(worst_a, 3) + " (tol 1e-8); (b) " +
                                                    std::to_string(pass_b) + "/10; (c) " + std::to_string(pass_c) +
                                                    "/10 (majority needed)"};
}

Result criterion8() {
    const std::string cmd = std::string("\"") + PTTB_UNIT_TESTS + "\" --test-suite=properties --no-intro";
    const int status = std::system(cmd.c_str());
    const bool ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    return {ok ? Verdict::Pass : Verdict::Fail, "property test suite exit status " + std::to_string(WEXITSTATUS(status))};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Result()>>> all{
        {"1", criterion1},
        {"2", criterion2},
        {"3", criterion3},
        {"4", criterion4},
        {"5", criterion5},
        {"6-mileage", criterion6_mileage},
        {"6-city", criterion6_city},
        {"7", criterion7},
        {"8", criterion8},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    bool failed = false, skipped = false, ran = false;
    for (const auto& [id, fn] : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
        ran = true;
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {Verdict::Fail, std::string("exception: ") + e.what()};
        }
        const char* tag = r.verdict == Verdict::Pass ? "PASS" : r.verdict == Verdict::Fail ? "FAIL" : "SKIP";
        std::cout << "criterion " << id << ": " << tag << " - " << r.detail << std::endl;
        failed |= r.verdict == Verdict::Fail;
        skipped |= r.verdict == Verdict::Skip;
    }
    if (!ran) {
        std::cerr << "unknown criterion; expected one of 1 2 3 4 5 6-mileage 6-city 7 8\n";
        return 2;
    }
    if (failed) return 1;
    return skipped && wanted.size() == 1 ? 77 : 0;
}
