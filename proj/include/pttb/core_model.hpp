#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pttb {

// ─── Errors ──────────────────────────────────────────────────
// Everything the library throws derives from pttb::Error so the CLI can map
// failures to exit codes without string matching.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DataError : public Error {
public:
    using Error::Error;
};

// ─── Items ───────────────────────────────────────────────────

/// Items described by M cues plus the criterion they are compared on.
class ItemTable {
public:
    ItemTable(std::vector<std::vector<double>> items, std::vector<double> criterion,
              std::vector<std::string> cue_names = {});

    std::size_t num_items() const { return items_.size(); }
    std::size_t num_cues() const { return cue_names_.size(); }

    std::span<const double> item(std::size_t i) const { return items_.at(i); }
    double criterion(std::size_t i) const { return criterion_.at(i); }
    const std::vector<double>& criteria() const { return criterion_; }
    const std::vector<std::string>& cue_names() const { return cue_names_; }

    /// Rows `indices` in the given order; cue names are kept.
    ItemTable subset(std::span<const std::size_t> indices) const;

private:
    std::vector<std::vector<double>> items_;
    std::vector<double> criterion_;
    std::vector<std::string> cue_names_;
};

struct Comparison {
    std::size_t first;
    std::size_t second;
    bool first_wins;  // y_ij
};

/// Labelled pairs over an ItemTable. Each likelihood term is raised to
/// `weight`, which is how transitivity down-weighting enters the model.
class PairwiseComparisons {
public:
    PairwiseComparisons(ItemTable table, std::vector<Comparison> pairs, double weight = 1.0);

    const ItemTable& table() const { return table_; }
    const std::vector<Comparison>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    std::size_t num_cues() const { return table_.num_cues(); }
    double weight() const { return weight_; }

    std::span<const double> first_item(std::size_t p) const { return table_.item(pairs_[p].first); }
    std::span<const double> second_item(std::size_t p) const { return table_.item(pairs_[p].second); }

private:
    ItemTable table_;
    std::vector<Comparison> pairs_;
    double weight_;
};

// ─── Strategy ────────────────────────────────────────────────

enum class Direction : std::int8_t { Negative = -1, Positive = +1 };

inline int sign_of(Direction d) { return static_cast<int>(d); }
inline Direction flip(Direction d) { return d == Direction::Positive ? Direction::Negative : Direction::Positive; }

/// Cue search order, preferred direction per cue and per-cue discrimination
/// thresholds. Cue indices are 0-based here; I/O uses 1-based.
class TtbStrategy {
public:
    /// All directions positive, thresholds zero.
    static TtbStrategy identity(std::size_t num_cues);

    TtbStrategy(std::vector<std::size_t> order, std::vector<Direction> directions,
                std::vector<double> thresholds = {});

    std::size_t num_cues() const { return order_.size(); }
    const std::vector<std::size_t>& order() const { return order_; }
    const std::vector<Direction>& directions() const { return directions_; }
    const std::vector<double>& thresholds() const { return thresholds_; }

    /// Search position of `cue` (0 = consulted first).
    std::size_t rank_of(std::size_t cue) const;

    bool operator==(const TtbStrategy&) const = default;

private:
    std::vector<std::size_t> order_;
    std::vector<Direction> directions_;
    std::vector<double> thresholds_;
};

enum class Outcome { FirstWins, SecondWins, Undecided };

/// Deterministic TTB: the first cue in search order whose absolute difference
/// strictly exceeds its threshold decides; otherwise Undecided.
Outcome ttb_predict(const TtbStrategy& strategy, std::span<const double> x1, std::span<const double> x2);

// ─── Comparison construction ─────────────────────────────────

struct PairPolicy {
    /// Empty means all unordered pairs (i < j).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    static PairPolicy all_pairs() { return {}; }
    bool is_all_pairs() const { return pairs.empty(); }
};

/// log2(N!) / C(N, 2).
double transitivity_weight(std::size_t num_items);

/// Labels pairs by criterion (y = 1 iff criterion_i > criterion_j); tied pairs
/// are dropped. The transitivity weight is only applied for the all-pairs policy.
/// Throws DataError for fewer than 2 items or when every selected pair is tied.
PairwiseComparisons build_comparisons(const ItemTable& table, const PairPolicy& policy = PairPolicy::all_pairs(),
                                      bool apply_weight = false);

/// As build_comparisons, but an all-tied selection yields an empty set.
PairwiseComparisons build_comparisons_allow_empty(const ItemTable& table,
                                                  const PairPolicy& policy = PairPolicy::all_pairs(),
                                                  bool apply_weight = false);

}  // namespace pttb
