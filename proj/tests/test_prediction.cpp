#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pttb/prediction.hpp"

using namespace pttb;

namespace {

using V = std::vector<double>;

StrategyPosterior concentrated(const TtbStrategy& s, FitCounts c) {
    StrategyPosterior post;
    post.mode = PosteriorMode::Exact;
    post.grid = ThresholdGrid::zeros(s.num_cues());
    post.entries.push_back({s, c, 0.0});
    post.probabilities = {1.0};
    return post;
}

PairwiseComparisons make_data(std::uint64_t seed, std::size_t n, std::size_t m) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, 2);
    std::normal_distribution<double> noise(0.0, 1.5);
    std::vector<std::vector<double>> items(n, std::vector<double>(m));
    std::vector<double> crit(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) items[i][k] = u(rng);
        crit[i] = 2 * items[i][0] - items[i][1] + noise(rng);
    }
    return build_comparisons(ItemTable(items, crit));
}

}  // namespace

TEST_CASE("concentrated posterior, one correct training pair: p = 7/9") {
    const auto post = concentrated(TtbStrategy::identity(1), {1, 0, 0});
    const auto r = predictive_prob(post, {}, V{1.0}, V{0.0});
    CHECK(std::abs(r.p_first - 7.0 / 9.0) < 1e-10);
    CHECK(r.p_second == doctest::Approx(2.0 / 9.0));
    CHECK(r.decided == DecidedLabel::First);
    const auto s = predictive_prob(post, {}, V{0.0}, V{1.0});
    CHECK(std::abs(s.p_first - 2.0 / 9.0) < 1e-10);
    CHECK(s.decided == DecidedLabel::Second);
}

TEST_CASE("undecided everywhere gives 1/2") {
    const auto post = concentrated(TtbStrategy::identity(2), {5, 1, 2});
    const auto r = predictive_prob(post, {}, V{1.0, 2.0}, V{1.0, 2.0});
    CHECK(r.p_first == 0.5);
    CHECK(r.decided == DecidedLabel::Coin);
}

TEST_CASE("predictive matches quadrature of the flip model per strategy") {
    for (FitCounts c : {FitCounts{3, 1, 2}, FitCounts{10, 0, 0}, FitCounts{0.7, 2.3, 0}}) {
        const NoisePrior prior{1.5, 1.2};
        const double a = c.n_incorrect + prior.alpha, b = c.n_correct + prior.beta;
        const double ref = oracle::truncated_beta_expectation([](double e) { return 1.0 - e; }, a, b);
        const auto r = predictive_prob(concentrated(TtbStrategy::identity(1), c), prior, V{2.0}, V{1.0});
        CHECK(std::abs(r.p_first - ref) < 1e-8);
    }
}

TEST_CASE("predictive is monotone in training evidence") {
    double last = 0.5;
    for (int n = 0; n < 20; ++n) {
        const auto p = predictive_prob(concentrated(TtbStrategy::identity(1), {double(n), 1, 0}), {}, V{1.0}, V{0.0});
        CHECK(p.p_first > last);
        last = p.p_first;
    }
}

TEST_CASE("predictive rejects an empty posterior") {
    StrategyPosterior post;
    CHECK_THROWS_AS(predictive_prob(post, {}, V{1.0}, V{0.0}), InvalidArgument);
}

TEST_CASE("accuracy credit and evaluate_accuracy") {
    CHECK(accuracy_credit(0.9, true) == 1.0);
    CHECK(accuracy_credit(0.9, false) == 0.0);
    CHECK(accuracy_credit(0.1, false) == 1.0);
    CHECK(accuracy_credit(0.5, true) == 0.5);

    const ItemTable t({{3}, {2}, {1}, {0}, {5}}, {5, 4, 3, 2, 1});
    const PairwiseComparisons test(t, {{0, 1, true}, {1, 2, true}, {3, 4, false}, {0, 4, true}});
    const PairPredictor larger = [](std::span<const double> a, std::span<const double> b) {
        return a[0] > b[0] ? 1.0 : (a[0] < b[0] ? 0.0 : 0.5);
    };
    CHECK(evaluate_accuracy(larger, test) == doctest::Approx(0.75));
    const PairwiseComparisons test2(ItemTable({{3}, {2}, {1}, {0}, {0}}, {5, 4, 3, 2, 1}),
                                    {{0, 1, true}, {1, 2, true}, {2, 3, false}, {3, 4, true}});
    // two correct, one wrong, one tie
    CHECK(evaluate_accuracy(larger, test2) == doctest::Approx(0.625));
    const PairPredictor abstain = [](std::span<const double>, std::span<const double>) { return 0.5; };
    CHECK(evaluate_accuracy(abstain, test) == 0.5);
    const PairwiseComparisons empty(t, {});
    CHECK_THROWS_AS(evaluate_accuracy(larger, empty), InvalidArgument);
}

TEST_CASE("PosteriorPredictor agrees with predictive_prob and evaluate_accuracy") {
    const auto train = make_data(40, 12, 3);
    const auto test = make_data(41, 15, 3);
    const ThresholdGrid grid({{0.0, 1.0}, {0.0}, {0.0, 1.0}});
    SamplerConfig cfg;
    cfg.samples = 300;
    cfg.seed = 2;
    for (const auto& post : {exhaustive_posterior(train, {}, grid), gibbs_sample(train, {}, cfg, grid)}) {
        const PosteriorPredictor predictor(post);
        CHECK(predictor.num_distinct_strategies() <= post.entries.size());
        for (std::size_t p = 0; p < test.size(); ++p) {
            const auto a = predictor.predict(test.first_item(p), test.second_item(p));
            const auto b = predictive_prob(post, {}, test.first_item(p), test.second_item(p));
            CHECK(a.p_first == doctest::Approx(b.p_first).epsilon(1e-12));
        }
        const PairPredictor direct = [&](std::span<const double> x1, std::span<const double> x2) {
            return predictive_prob(post, {}, x1, x2).p_first;
        };
        CHECK(predictor.accuracy(test) == doctest::Approx(evaluate_accuracy(direct, test)).epsilon(1e-12));
    }
}

TEST_SUITE("properties") {
    TEST_CASE("p_first(x1, x2) + p_first(x2, x1) = 1") {
        const auto train = make_data(42, 10, 3);
        const auto post = exhaustive_posterior(train);
        std::mt19937_64 rng(43);
        std::uniform_int_distribution<int> u(0, 2);
        for (int t = 0; t < 100; ++t) {
            V a(3), b(3);
            for (auto& v : a) v = u(rng);
            for (auto& v : b) v = u(rng);
            const double s = predictive_prob(post, {}, a, b).p_first + predictive_prob(post, {}, b, a).p_first;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
