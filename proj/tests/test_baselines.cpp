#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pttb/baselines.hpp"

using namespace pttb;

namespace {

PairwiseComparisons make_data(std::uint64_t seed, std::size_t n, std::size_t m) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> items(n, std::vector<double>(m));
    std::vector<double> crit(n);
    for (std::size_t i = 0; i < n; ++i) {
        double f = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            items[i][k] = std::round(2 * g(rng)) / 2;
            f += (k % 2 ? -0.5 : 1.0) * items[i][k];
        }
        crit[i] = f + g(rng);
    }
    return build_comparisons(ItemTable(items, crit));
}

}  // namespace

TEST_CASE("cue validities") {
    // cue 0 predicts all pairs, cue 1 right in 2 of 3 discriminating pairs, cue 2 constant.
    const ItemTable t({{4, 1, 7}, {3, 0, 7}, {2, 1, 7}, {1, 0, 7}}, {4, 3, 2, 1});
    const PairwiseComparisons data(t, {{0, 1, true}, {1, 2, true}, {2, 3, true}, {0, 2, true}});
    const auto v = cue_validities(data);
    CHECK(v[0].validity == 1.0);
    CHECK(v[0].direction == Direction::Positive);
    CHECK(v[0].discriminating_count == 4);
    CHECK(v[1].validity == doctest::Approx(2.0 / 3));
    CHECK(v[1].direction == Direction::Positive);
    CHECK(v[1].discriminating_count == 3);
    CHECK(v[2].validity == 0.5);
    CHECK(v[2].discriminating_count == 0);

    const auto s = classic_ttb_fit(data);
    CHECK(s.order() == std::vector<std::size_t>{0, 1, 2});
    CHECK(s.thresholds() == std::vector<double>{0, 0, 0});
}

TEST_CASE("classic TTB: negative directions and index tie-break") {
    const ItemTable t({{0, 5, 1}, {1, 5, 0}, {2, 5, -1}}, {3, 2, 1});
    const auto data = build_comparisons(t);
    const auto v = cue_validities(data);
    CHECK(v[0].direction == Direction::Negative);
    CHECK(v[0].validity == 1.0);
    CHECK(v[2].validity == 1.0);
    const auto s = classic_ttb_fit(data);
    CHECK(s.order() == std::vector<std::size_t>{0, 2, 1});
    CHECK(s.directions()[0] == Direction::Negative);
    CHECK(s.directions()[2] == Direction::Positive);
}

TEST_CASE("classic TTB needs training pairs") {
    const ItemTable t({{0.0}, {1.0}}, {1, 2});
    CHECK_THROWS_AS(classic_ttb_fit(PairwiseComparisons(t, {})), InvalidArgument);
    CHECK_THROWS_AS(logreg_fit(PairwiseComparisons(t, {})), InvalidArgument);
}

TEST_CASE("logistic regression: separating cue sign") {
    const ItemTable t({{0, 0.3}, {1, 0.1}, {2, 0.2}, {3, 0.0}}, {4, 3, 2, 1});
    const auto model = logreg_fit(build_comparisons(t));
    CHECK(model.weights[0] < 0.0);
    CHECK(std::isfinite(model.weights[0]));
    CHECK(model.converged);
}

TEST_CASE("logistic regression gradient matches finite differences") {
    std::mt19937_64 rng(50);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::uint64_t seed = 51; seed < 56; ++seed) {
        const auto data = make_data(seed, 12, 3);
        std::vector<double> w{g(rng), g(rng), g(rng)};
        const auto grad = logreg_gradient(w, data);
        for (std::size_t k = 0; k < 3; ++k) {
            const double h = 1e-5;
            auto wp = w, wm = w;
            wp[k] += h;
            wm[k] -= h;
            const double fd = (logreg_loss(wp, data) - logreg_loss(wm, data)) / (2 * h);
            CHECK(std::abs(fd - grad[k]) <= 1e-6 * std::max(1.0, std::abs(grad[k])));
        }
    }
}

TEST_CASE("logistic regression reaches a stationary point") {
    const auto data = make_data(60, 20, 4);
    const auto model = logreg_fit(data);
    CHECK(model.converged);
    for (double gk : logreg_gradient(model.weights, data)) CHECK(std::abs(gk) < 1e-6);
}

TEST_SUITE("properties") {
    TEST_CASE("logistic prediction is antisymmetric") {
        const auto data = make_data(61, 15, 3);
        const auto model = logreg_fit(data);
        std::mt19937_64 rng(62);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> a{g(rng), g(rng), g(rng)}, b{g(rng), g(rng), g(rng)};
            CHECK(logreg_predict(model, a, b) + logreg_predict(model, b, a) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }

    TEST_CASE("logistic loss never increases across iterations") {
        for (std::uint64_t seed = 63; seed < 70; ++seed) {
            const auto model = logreg_fit(make_data(seed, 15, 4));
            for (std::size_t i = 1; i < model.loss_history.size(); ++i) {
                CHECK(model.loss_history[i] <= model.loss_history[i - 1]);
            }
        }
    }

    TEST_CASE("classic TTB is a valid strategy with folded validities") {
        for (std::uint64_t seed = 70; seed < 80; ++seed) {
            const auto data = make_data(seed, 10, 5);
            const auto s = classic_ttb_fit(data);
            auto order = s.order();
            std::sort(order.begin(), order.end());
            std::vector<std::size_t> iota(5);
            std::iota(iota.begin(), iota.end(), std::size_t{0});
            CHECK(order == iota);
            for (const auto& v : cue_validities(data)) {
                CHECK(v.validity >= 0.5);
                CHECK(v.validity <= 1.0);
            }
        }
    }

    TEST_CASE("cue ordering is invariant to positive rescaling of a cue") {
        for (std::uint64_t seed = 80; seed < 90; ++seed) {
            const auto data = make_data(seed, 10, 4);
            std::vector<std::vector<double>> items;
            for (std::size_t i = 0; i < data.table().num_items(); ++i) {
                std::vector<double> x(data.table().item(i).begin(), data.table().item(i).end());
                x[1] *= 7.5;
                x[3] *= 0.01;
                items.push_back(x);
            }
            const PairwiseComparisons scaled(ItemTable(items, data.table().criteria()), data.pairs());
            CHECK(classic_ttb_fit(scaled) == classic_ttb_fit(data));
        }
    }
}
