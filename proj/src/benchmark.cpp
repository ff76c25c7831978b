#include "pttb/benchmark.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "pttb/prediction.hpp"
#include "pttb/random.hpp"
#include "pttb/svg.hpp"

namespace pttb {

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw Error("format_number: conversion failed");
    return std::string(buf, end);
}

// ─── CSV ingestion ───────────────────────────────────────────

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field.push_back('"');
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = s.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

LoadedTable load_item_table(const std::filesystem::path& path, const std::string& criterion_column,
                            const std::vector<std::string>& ignore_columns) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": missing header row");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = trim(h);

    const auto crit_it = std::find(header.begin(), header.end(), criterion_column);
    if (crit_it == header.end()) throw DataError(path.string() + ": criterion column '" + criterion_column + "' not found");
    const auto crit_col = static_cast<std::size_t>(crit_it - header.begin());
    for (const auto& ig : ignore_columns) {
        if (std::find(header.begin(), header.end(), ig) == header.end()) {
            throw DataError(path.string() + ": ignored column '" + ig + "' not found");
        }
    }
    std::vector<std::size_t> cue_cols;
    std::vector<std::string> cue_names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == crit_col) continue;
        if (std::find(ignore_columns.begin(), ignore_columns.end(), header[c]) != ignore_columns.end()) continue;
        cue_cols.push_back(c);
        cue_names.push_back(header[c]);
    }
    if (cue_cols.empty()) throw DataError(path.string() + ": no cue columns");

    std::vector<std::vector<std::optional<double>>> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line) == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError(path.string() + ": row " + std::to_string(rows.size() + 2) + " has " +
                            std::to_string(fields.size()) + " fields, header has " + std::to_string(header.size()));
        }
        std::vector<std::optional<double>> parsed(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) parsed[c] = parse_number(fields[c]);
        rows.push_back(std::move(parsed));
    }

    std::vector<std::size_t> used_cols = cue_cols;
    used_cols.push_back(crit_col);
    for (std::size_t c : used_cols) {
        const bool any = std::any_of(rows.begin(), rows.end(), [c](const auto& r) { return r[c].has_value(); });
        if (!any) throw DataError(path.string() + ": column '" + header[c] + "' is not numeric");
    }

    std::vector<std::vector<double>> items;
    std::vector<double> criterion;
    std::size_t dropped = 0;
    for (const auto& r : rows) {
        const bool complete = std::all_of(used_cols.begin(), used_cols.end(), [&r](std::size_t c) { return r[c].has_value(); });
        if (!complete) {
            ++dropped;
            continue;
        }
        std::vector<double> x;
        x.reserve(cue_cols.size());
        for (std::size_t c : cue_cols) x.push_back(*r[c]);
        items.push_back(std::move(x));
        criterion.push_back(*r[crit_col]);
    }
    if (items.size() < 2) throw DataError(path.string() + ": fewer than 2 usable rows");
    return {ItemTable(std::move(items), std::move(criterion), std::move(cue_names)), dropped};
}

// ─── Benchmark ───────────────────────────────────────────────

std::string method_name(Method m) {
    switch (m) {
        case Method::Pttb: return "PTTB";
        case Method::PttbCdt: return "PTTB-CDT";
        case Method::Ttb: return "TTB";
        case Method::LogReg: return "LOGREG";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Method m : {Method::Pttb, Method::PttbCdt, Method::Ttb, Method::LogReg}) {
        if (method_name(m) == upper) return m;
    }
    throw InvalidArgument("unknown method '" + name + "' (expected PTTB, PTTB-CDT, TTB or LOGREG)");
}

void BenchmarkConfig::validate() const {
    if (fractions.empty()) throw InvalidArgument("benchmark: no training fractions");
    for (double f : fractions) {
        if (!(f > 0.0 && f < 1.0)) throw InvalidArgument("benchmark: fractions must lie in (0, 1)");
    }
    if (replications < 1) throw InvalidArgument("benchmark: replications must be at least 1");
    if (methods.empty()) throw InvalidArgument("benchmark: no methods");
    if (samples < 1) throw InvalidArgument("benchmark: samples must be at least 1");
    if (threshold_levels < 1) throw InvalidArgument("benchmark: threshold levels must be at least 1");
    prior.validate();
}

std::uint64_t split_seed(std::uint64_t base_seed, const std::string& dataset, double fraction, std::size_t replication) {
    return derive_seed({base_seed, stable_hash(dataset), std::bit_cast<std::uint64_t>(fraction),
                        static_cast<std::uint64_t>(replication)});
}

ItemSplit split_items(std::size_t num_items, double fraction, std::uint64_t seed) {
    std::vector<std::size_t> idx(num_items);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    shuffle(idx, rng);
    const auto n_train = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(num_items)));
    ItemSplit s;
    s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(std::min(n_train, num_items)));
    s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(std::min(n_train, num_items)), idx.end());
    return s;
}

namespace {

struct WorkUnit {
    std::size_t dataset;
    std::size_t fraction;
    std::size_t replication;
};

struct UnitResult {
    std::vector<std::pair<std::size_t, AccuracyRow>> rows;  // (method index, row)
    std::optional<std::string> warning;
};

double ttb_p_first(const TtbStrategy& s, std::span<const double> a, std::span<const double> b) {
    switch (ttb_predict(s, a, b)) {
        case Outcome::FirstWins: return 1.0;
        case Outcome::SecondWins: return 0.0;
        case Outcome::Undecided: return 0.5;
    }
    return 0.5;
}

UnitResult run_unit(const BenchmarkConfig& config, const NamedTable& data, std::size_t fraction_index,
                    std::size_t replication) {
    UnitResult out;
    const double fraction = config.fractions[fraction_index];
    const std::uint64_t seed = split_seed(config.base_seed, data.name, fraction, replication);
    const ItemSplit split = split_items(data.table.num_items(), fraction, seed);
    const std::string where = data.name + " fraction " + format_number(fraction) + " replication " +
                              std::to_string(replication);
    if (split.train.size() < 2 || split.test.size() < 2) {
        out.warning = where + ": split leaves fewer than 2 items on one side, skipped";
        return out;
    }
    const ItemTable train_table = data.table.subset(split.train);
    const ItemTable test_table = data.table.subset(split.test);
    std::optional<PairwiseComparisons> weighted, unweighted, test;
    try {
        weighted.emplace(build_comparisons(train_table, PairPolicy::all_pairs(), config.transitivity_weight));
        unweighted.emplace(build_comparisons(train_table, PairPolicy::all_pairs(), false));
        test.emplace(build_comparisons(test_table, PairPolicy::all_pairs(), false));
    } catch (const DataError& e) {
        out.warning = where + ": " + e.what() + ", skipped";
        return out;
    }

    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        const Method method = config.methods[mi];
        const auto start = std::chrono::steady_clock::now();
        double accuracy = 0.0;
        switch (method) {
            case Method::Pttb:
            case Method::PttbCdt: {
                SamplerConfig sampler;
                sampler.samples = config.samples;
                sampler.burn_in = config.burn_in;
                sampler.seed = derive_seed({seed, static_cast<std::uint64_t>(method)});
                std::optional<ThresholdGrid> grid;
                if (method == Method::PttbCdt) grid = default_threshold_grid(*weighted, config.threshold_levels);
                const auto posterior = gibbs_sample(*weighted, config.prior, sampler, grid);
                accuracy = PosteriorPredictor(posterior, config.prior).accuracy(*test);
                break;
            }
            case Method::Ttb: {
                const TtbStrategy s = classic_ttb_fit(*unweighted);
                accuracy = evaluate_accuracy([&s](auto a, auto b) { return ttb_p_first(s, a, b); }, *test);
                break;
            }
            case Method::LogReg: {
                const LogRegModel model = logreg_fit(*unweighted);
                accuracy = evaluate_accuracy([&model](auto a, auto b) { return logreg_predict(model, a, b); }, *test);
                break;
            }
        }
        const double seconds =
            config.record_timing
                ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                : 0.0;
        out.rows.emplace_back(mi, AccuracyRow{data.name, method_name(method), fraction, replication, accuracy, seconds});
    }
    return out;
}

}  // namespace

AccuracyTable run_benchmark(const BenchmarkConfig& config, const std::vector<NamedTable>& tables) {
    config.validate();
    std::vector<WorkUnit> units;
    for (std::size_t d = 0; d < tables.size(); ++d)
        for (std::size_t f = 0; f < config.fractions.size(); ++f)
            for (std::size_t r = 0; r < config.replications; ++r) units.push_back({d, f, r});

    std::vector<UnitResult> results(units.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= units.size()) return;
            try {
                results[i] = run_unit(config, tables[units[i].dataset], units[i].fraction, units[i].replication);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = units.size();
                return;
            }
        }
    };
    const std::size_t n_threads = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(1, units.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    // Deterministic order: dataset, method, fraction, replication.
    struct Keyed {
        std::array<std::size_t, 4> key;
        AccuracyRow row;
    };
    std::vector<Keyed> keyed;
    AccuracyTable table;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (results[i].warning) table.warnings.push_back(*results[i].warning);
        for (auto& [mi, row] : results[i].rows) {
            keyed.push_back({{units[i].dataset, mi, units[i].fraction, units[i].replication}, std::move(row)});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
    table.rows.reserve(keyed.size());
    for (auto& k : keyed) table.rows.push_back(std::move(k.row));
    return table;
}

AccuracyTable run_benchmark(const BenchmarkConfig& config) {
    std::vector<NamedTable> tables;
    for (const auto& d : config.datasets) {
        tables.push_back({d.name, load_item_table(d.path, d.criterion, d.ignore_columns).table});
    }
    return run_benchmark(config, tables);
}

std::vector<AccuracySummary> summarize(const AccuracyTable& table) {
    std::vector<AccuracySummary> out;
    std::map<std::tuple<std::string, std::string, double>, std::size_t> index;
    for (const auto& r : table.rows) {
        auto [it, inserted] = index.try_emplace({r.dataset, r.method, r.fraction}, out.size());
        if (inserted) out.push_back({r.dataset, r.method, r.fraction, 0.0, 0});
        auto& s = out[it->second];
        s.mean_accuracy += r.accuracy;
        ++s.replications;
    }
    for (auto& s : out) s.mean_accuracy /= static_cast<double>(s.replications);
    return out;
}

void write_results_csv(const AccuracyTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "dataset,method,fraction,replication,accuracy,seconds\n";
    for (const auto& r : table.rows) {
        out << csv_escape(r.dataset) << ',' << r.method << ',' << format_number(r.fraction) << ',' << r.replication
            << ',' << format_number(r.accuracy) << ',' << format_number(r.seconds) << '\n';
    }
}

void write_summary_csv(const std::vector<AccuracySummary>& summary, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "dataset,method,fraction,mean_accuracy,replications\n";
    for (const auto& s : summary) {
        out << csv_escape(s.dataset) << ',' << s.method << ',' << format_number(s.fraction) << ','
            << format_number(s.mean_accuracy) << ',' << s.replications << '\n';
    }
}

// ─── Traces ──────────────────────────────────────────────────

std::vector<double> min_max_scale(const std::vector<double>& values) {
    if (values.empty()) return {};
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    std::vector<double> out(values.size(), 0.0);
    if (range > 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
    }
    return out;
}

TraceResult trace_log_posterior(const PairwiseComparisons& data, const NoisePrior& prior, std::size_t iterations,
                                std::uint64_t seed, const std::optional<ThresholdGrid>& thresholds) {
    if (iterations < 1) throw InvalidArgument("trace_log_posterior: at least one iteration is required");
    const CompiledComparisons compiled(data, thresholds.value_or(ThresholdGrid::zeros(data.num_cues())));
    GibbsChain chain(compiled, prior, seed);
    TraceResult trace;
    trace.log_posterior.reserve(iterations + 1);
    trace.log_posterior.push_back(chain.log_posterior());
    for (std::size_t i = 0; i < iterations; ++i) {
        chain.sweep();
        trace.log_posterior.push_back(chain.log_posterior());
    }
    trace.scaled = min_max_scale(trace.log_posterior);
    return trace;
}

void write_trace_csv(const TraceResult& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "iteration,log_post,scaled\n";
    for (std::size_t i = 0; i < trace.log_posterior.size(); ++i) {
        out << i << ',' << format_number(trace.log_posterior[i]) << ',' << format_number(trace.scaled[i]) << '\n';
    }
}

// ─── Cue ranks ───────────────────────────────────────────────

void export_cue_rank_heatmap(const StrategyPosterior& posterior, const std::vector<CueValidity>& validities,
                             const std::vector<std::string>& cue_names, const std::filesystem::path& csv_path,
                             const std::optional<std::filesystem::path>& svg_path) {
    const auto ranks = cue_rank_marginals(posterior);
    const std::size_t m = ranks.size();
    if (validities.size() != m || cue_names.size() != m) {
        throw DimensionMismatch("export_cue_rank_heatmap: validities/cue names do not match the posterior");
    }
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write " + csv_path.string());
    out << "cue,rank,probability,validity\n";
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < m; ++r) {
            out << csv_escape(cue_names[c]) << ',' << r + 1 << ',' << format_number(ranks[c][r]) << ','
                << format_number(validities[c].validity) << '\n';
        }
    }
    if (svg_path) {
        svg::Heatmap map;
        map.title = "Cue rank posterior probabilities";
        map.row_labels = cue_names;
        for (std::size_t r = 0; r < m; ++r) map.column_labels.push_back(std::to_string(r + 1));
        map.values = ranks;
        std::vector<double> overlay;
        for (const auto& v : validities) overlay.push_back(v.validity);
        map.row_overlay = overlay;
        svg::heatmap(*svg_path, map);
    }
}

}  // namespace pttb
