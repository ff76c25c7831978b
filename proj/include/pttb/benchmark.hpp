#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pttb/baselines.hpp"
#include "pttb/core_model.hpp"
#include "pttb/inference.hpp"
#include "pttb/likelihood.hpp"

namespace pttb {

// ─── Ingestion ───────────────────────────────────────────────

struct LoadedTable {
    ItemTable table;
    std::size_t dropped_rows = 0;
};

/// Reads a UTF-8 CSV with a header row. Every column except the criterion and
/// `ignore_columns` is a cue. Rows with an empty, NA or non-numeric cell are
/// dropped; a column with no numeric cell at all is an error naming it.
LoadedTable load_item_table(const std::filesystem::path& path, const std::string& criterion_column,
                            const std::vector<std::string>& ignore_columns = {});

// ─── Replicated train/test evaluation ────────────────────────

enum class Method { Pttb, PttbCdt, Ttb, LogReg };

std::string method_name(Method m);
/// Accepts PTTB, PTTB-CDT, TTB, LOGREG (case-insensitive).
Method parse_method(const std::string& name);

struct DatasetSpec {
    std::string name;
    std::filesystem::path path;
    std::string criterion;
    std::vector<std::string> ignore_columns;
};

struct NamedTable {
    std::string name;
    ItemTable table;
};

struct BenchmarkConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t replications = 100;
    std::vector<Method> methods{Method::Pttb, Method::PttbCdt, Method::Ttb, Method::LogReg};
    std::size_t samples = 1000;
    std::size_t burn_in = 100;
    std::size_t threshold_levels = 4;  // K for PTTB-CDT
    std::uint64_t base_seed = 0;
    bool transitivity_weight = true;
    NoisePrior prior;
    std::size_t jobs = 1;
    /// Wall time is the only non-reproducible column; off writes 0.
    bool record_timing = true;

    void validate() const;
};

struct AccuracyRow {
    std::string dataset;
    std::string method;
    double fraction;
    std::size_t replication;
    double accuracy;
    double seconds;
};

struct AccuracyTable {
    std::vector<AccuracyRow> rows;
    std::vector<std::string> warnings;
};

/// Seed of one (dataset, fraction, replication) work unit.
std::uint64_t split_seed(std::uint64_t base_seed, const std::string& dataset, double fraction, std::size_t replication);

/// Item indices of the training side followed by the test side.
struct ItemSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
ItemSplit split_items(std::size_t num_items, double fraction, std::uint64_t seed);

AccuracyTable run_benchmark(const BenchmarkConfig& config, const std::vector<NamedTable>& tables);
/// Loads config.datasets and runs them.
AccuracyTable run_benchmark(const BenchmarkConfig& config);

struct AccuracySummary {
    std::string dataset;
    std::string method;
    double fraction;
    double mean_accuracy;
    std::size_t replications;
};
std::vector<AccuracySummary> summarize(const AccuracyTable& table);

void write_results_csv(const AccuracyTable& table, const std::filesystem::path& path);
void write_summary_csv(const std::vector<AccuracySummary>& summary, const std::filesystem::path& path);

// ─── MCMC traces ─────────────────────────────────────────────

struct TraceResult {
    std::vector<double> log_posterior;  // index 0 is the random start
    std::vector<double> scaled;         // min-max scaled to [0, 1]
};

/// Unnormalized log posterior after each of `iterations` full sweeps of one
/// chain started from a random configuration.
TraceResult trace_log_posterior(const PairwiseComparisons& data, const NoisePrior& prior, std::size_t iterations,
                                std::uint64_t seed, const std::optional<ThresholdGrid>& thresholds = std::nullopt);

std::vector<double> min_max_scale(const std::vector<double>& values);

void write_trace_csv(const TraceResult& trace, const std::filesystem::path& path);

// ─── Cue rank output ─────────────────────────────────────────

/// Long-format rank marginals: one row per (cue, rank) with the cue's classic
/// validity repeated. Optionally also an SVG heatmap.
void export_cue_rank_heatmap(const StrategyPosterior& posterior, const std::vector<CueValidity>& validities,
                             const std::vector<std::string>& cue_names, const std::filesystem::path& csv_path,
                             const std::optional<std::filesystem::path>& svg_path = std::nullopt);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace pttb
