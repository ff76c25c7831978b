#include "pttb/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pttb {

ItemTable::ItemTable(std::vector<std::vector<double>> items, std::vector<double> criterion,
                     std::vector<std::string> cue_names)
    : items_(std::move(items)), criterion_(std::move(criterion)), cue_names_(std::move(cue_names)) {
    if (items_.size() != criterion_.size()) {
        throw DimensionMismatch("ItemTable: " + std::to_string(items_.size()) + " items but " +
                                std::to_string(criterion_.size()) + " criterion values");
    }
    std::size_t m = cue_names_.size();
    if (m == 0 && !items_.empty()) {
        m = items_.front().size();
        for (std::size_t c = 0; c < m; ++c) cue_names_.push_back("cue" + std::to_string(c + 1));
    }
    if (m == 0) throw InvalidArgument("ItemTable: at least one cue is required");
    for (const auto& x : items_) {
        if (x.size() != m) throw DimensionMismatch("ItemTable: feature vectors must all have length " + std::to_string(m));
    }
}

ItemTable ItemTable::subset(std::span<const std::size_t> indices) const {
    std::vector<std::vector<double>> items;
    std::vector<double> crit;
    items.reserve(indices.size());
    crit.reserve(indices.size());
    for (std::size_t i : indices) {
        items.push_back(items_.at(i));
        crit.push_back(criterion_.at(i));
    }
    return ItemTable(std::move(items), std::move(crit), cue_names_);
}

PairwiseComparisons::PairwiseComparisons(ItemTable table, std::vector<Comparison> pairs, double weight)
    : table_(std::move(table)), pairs_(std::move(pairs)), weight_(weight) {
    if (!(weight_ > 0.0) || !std::isfinite(weight_)) throw InvalidArgument("PairwiseComparisons: weight must be positive");
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    seen.reserve(pairs_.size());
    for (const auto& c : pairs_) {
        if (c.first == c.second) throw InvalidArgument("PairwiseComparisons: pair compares an item with itself");
        if (c.first >= table_.num_items() || c.second >= table_.num_items()) {
            throw InvalidArgument("PairwiseComparisons: item index out of range");
        }
        seen.emplace_back(std::min(c.first, c.second), std::max(c.first, c.second));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw InvalidArgument("PairwiseComparisons: duplicated unordered pair");
    }
}

TtbStrategy TtbStrategy::identity(std::size_t num_cues) {
    std::vector<std::size_t> order(num_cues);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return TtbStrategy(std::move(order), std::vector<Direction>(num_cues, Direction::Positive));
}

TtbStrategy::TtbStrategy(std::vector<std::size_t> order, std::vector<Direction> directions,
                         std::vector<double> thresholds)
    : order_(std::move(order)), directions_(std::move(directions)), thresholds_(std::move(thresholds)) {
    const std::size_t m = order_.size();
    if (m == 0) throw InvalidArgument("TtbStrategy: empty cue order");
    if (thresholds_.empty()) thresholds_.assign(m, 0.0);
    if (directions_.size() != m || thresholds_.size() != m) {
        throw DimensionMismatch("TtbStrategy: order, directions and thresholds must have equal length");
    }
    std::vector<bool> hit(m, false);
    for (std::size_t c : order_) {
        if (c >= m || hit[c]) throw InvalidArgument("TtbStrategy: cue order is not a permutation");
        hit[c] = true;
    }
    for (double t : thresholds_) {
        if (!(t >= 0.0)) throw InvalidArgument("TtbStrategy: thresholds must be non-negative");
    }
}

std::size_t TtbStrategy::rank_of(std::size_t cue) const {
    auto it = std::find(order_.begin(), order_.end(), cue);
    if (it == order_.end()) throw InvalidArgument("TtbStrategy::rank_of: no such cue");
    return static_cast<std::size_t>(it - order_.begin());
}

Outcome ttb_predict(const TtbStrategy& strategy, std::span<const double> x1, std::span<const double> x2) {
    const std::size_t m = strategy.num_cues();
    if (x1.size() != m || x2.size() != m) {
        throw DimensionMismatch("ttb_predict: feature vectors have length " + std::to_string(x1.size()) + "/" +
                                std::to_string(x2.size()) + ", strategy has " + std::to_string(m) + " cues");
    }
    for (std::size_t cue : strategy.order()) {
        const double delta = x1[cue] - x2[cue];
        if (std::abs(delta) > strategy.thresholds()[cue]) {
            const bool positive = delta > 0.0;
            const bool prefers_larger = strategy.directions()[cue] == Direction::Positive;
            return positive == prefers_larger ? Outcome::FirstWins : Outcome::SecondWins;
        }
    }
    return Outcome::Undecided;
}

double transitivity_weight(std::size_t num_items) {
    if (num_items < 2) throw InvalidArgument("transitivity_weight: need at least 2 items");
    const double n = static_cast<double>(num_items);
    const double log2_factorial = std::lgamma(n + 1.0) / std::log(2.0);
    return log2_factorial / (n * (n - 1.0) / 2.0);
}

namespace {

PairwiseComparisons build(const ItemTable& table, const PairPolicy& policy, bool apply_weight, bool allow_empty) {
    const std::size_t n = table.num_items();
    if (n < 2) throw DataError("build_comparisons: fewer than 2 items");

    std::vector<std::pair<std::size_t, std::size_t>> selected;
    if (policy.is_all_pairs()) {
        selected.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) selected.emplace_back(i, j);
    } else {
        selected = policy.pairs;
    }

    std::vector<Comparison> pairs;
    pairs.reserve(selected.size());
    for (auto [i, j] : selected) {
        if (i >= n || j >= n) throw InvalidArgument("build_comparisons: item index out of range");
        const double ci = table.criterion(i);
        const double cj = table.criterion(j);
        if (ci == cj) continue;
        pairs.push_back({i, j, ci > cj});
    }
    if (pairs.empty() && !allow_empty) throw DataError("build_comparisons: all pairs tied");

    const double weight = apply_weight && policy.is_all_pairs() ? transitivity_weight(n) : 1.0;
    return PairwiseComparisons(table, std::move(pairs), weight);
}

}  // namespace

PairwiseComparisons build_comparisons(const ItemTable& table, const PairPolicy& policy, bool apply_weight) {
    return build(table, policy, apply_weight, false);
}

PairwiseComparisons build_comparisons_allow_empty(const ItemTable& table, const PairPolicy& policy,
                                                  bool apply_weight) {
    return build(table, policy, apply_weight, true);
}

}  // namespace pttb
