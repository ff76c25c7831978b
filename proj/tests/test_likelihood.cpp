#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pttb/likelihood.hpp"
#include "pttb/special_functions.hpp"

using namespace pttb;

namespace {

PairwiseComparisons make_data(std::mt19937_64& rng, std::size_t n, std::size_t m, double weight = 1.0) {
    std::uniform_int_distribution<int> u(0, 2);
    std::vector<std::vector<double>> items(n, std::vector<double>(m));
    std::vector<double> crit(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& v : items[i]) v = u(rng);
        crit[i] = static_cast<double>(i);
    }
    std::vector<Comparison> pairs;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j, coin(rng)});
    return PairwiseComparisons(ItemTable(items, crit), pairs, weight);
}

}  // namespace

TEST_CASE("log_marginal_likelihood anchors") {
    CHECK(log_marginal_likelihood({0, 0, 1}) == doctest::Approx(std::log(0.5)).epsilon(1e-13));
    CHECK(log_marginal_likelihood({1, 0, 0}) == doctest::Approx(std::log(0.75)).epsilon(1e-13));
    CHECK(log_marginal_likelihood({0, 1, 0}) == doctest::Approx(std::log(0.25)).epsilon(1e-13));
    CHECK(log_marginal_likelihood({0, 0, 0}) == doctest::Approx(0.0));
    // 2 ∫₀^{1/2} ε^{1/2} (1-ε)^{1/2} dε
    const double ref = std::log(2.0) + oracle::log_beta_inc_half(1.5, 1.5);
    CHECK(log_marginal_likelihood({0.5, 0.5, 0}) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("log_marginal_likelihood with a non-uniform prior") {
    const NoisePrior prior{2.0, 3.0};
    const FitCounts c{4, 1, 2};
    const double expected = -oracle::log_beta_inc_half(2.0, 3.0) + 2 * std::log(0.5) + oracle::log_beta_inc_half(3.0, 7.0);
    CHECK(log_marginal_likelihood(c, prior) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("count_outcomes") {
    const ItemTable t({{1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}}, {3, 2, 1});
    const auto s = TtbStrategy::identity(2);
    SUBCASE("empty") {
        CHECK(count_outcomes(s, PairwiseComparisons(t, {})) == FitCounts{0, 0, 0});
    }
    SUBCASE("one correct") {
        CHECK(count_outcomes(s, PairwiseComparisons(t, {{0, 1, true}})) == FitCounts{1, 0, 0});
    }
    SUBCASE("two correct at weight 0.5") {
        CHECK(count_outcomes(s, PairwiseComparisons(t, {{0, 1, true}, {0, 2, true}}, 0.5)) == FitCounts{1.0, 0, 0});
    }
    SUBCASE("mixed") {
        // (1,2): cue 2 decides for item 2, label says 1 -> wrong. (0,1): correct.
        const auto c = count_outcomes(s, PairwiseComparisons(t, {{0, 1, true}, {1, 2, true}}));
        CHECK(c == FitCounts{1, 1, 0});
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(count_outcomes(TtbStrategy::identity(3), PairwiseComparisons(t, {{0, 1, true}})),
                        DimensionMismatch);
    }
}

TEST_CASE("epsilon_posterior") {
    auto p = epsilon_posterior({0, 0, 0});
    CHECK(p.a == 1.0);
    CHECK(p.b == 1.0);
    CHECK(p.mean() == doctest::Approx(0.25));
    p = epsilon_posterior({0, 1, 0});
    CHECK(p.a == 2.0);
    CHECK(p.b == 1.0);
    CHECK(p.mean() == doctest::Approx(1.0 / 3));
    p = epsilon_posterior({8, 0, 0});
    CHECK(p.a == 1.0);
    CHECK(p.b == 9.0);
    CHECK(p.mean() == doctest::Approx(oracle::truncated_beta_expectation([](double e) { return e; }, 1, 9)).epsilon(1e-10));
}

TEST_CASE("NoisePrior validation") {
    CHECK_THROWS_AS(log_marginal_likelihood({1, 0, 0}, NoisePrior{0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(epsilon_posterior({1, 0, 0}, NoisePrior{1.0, -1.0}), InvalidArgument);
    CHECK_THROWS_AS(log_marginal_likelihood({-1, 0, 0}), InvalidArgument);
}

TEST_SUITE("properties") {
    TEST_CASE("undecided pairs factor out") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(0.0, 30.0), w(0.1, 1.0);
        for (int t = 0; t < 200; ++t) {
            const FitCounts c{u(rng), u(rng), u(rng)};
            const double weight = w(rng);
            const int k = 1 + t % 7;
            const FitCounts more{c.n_correct, c.n_incorrect, c.n_undecided + k * weight};
            CHECK(log_marginal_likelihood(more) - log_marginal_likelihood(c) ==
                  doctest::Approx(k * weight * std::log(0.5)).epsilon(1e-12));
        }
    }

    TEST_CASE("flipping directions and labels together leaves counts unchanged") {
        std::mt19937_64 rng(22);
        for (int t = 0; t < 50; ++t) {
            const auto data = make_data(rng, 8, 3, 0.7);
            std::vector<Comparison> flipped = data.pairs();
            for (auto& p : flipped) p.first_wins = !p.first_wins;
            const PairwiseComparisons fdata(data.table(), flipped, data.weight());
            std::vector<std::size_t> order{2, 0, 1};
            std::vector<Direction> dirs{Direction::Positive, Direction::Negative, Direction::Positive};
            std::vector<Direction> fdirs;
            for (auto d : dirs) fdirs.push_back(flip(d));
            CHECK(count_outcomes(TtbStrategy(order, dirs), data) == count_outcomes(TtbStrategy(order, fdirs), fdata));
        }
    }

    TEST_CASE("more errors means less evidence") {
        for (int n = 1; n <= 30; ++n) {
            for (int nu = 0; nu <= 3; ++nu) {
                for (int i = 0; i < n; ++i) {
                    const double lo = log_marginal_likelihood({double(n - i - 1), double(i + 1), double(nu)});
                    const double hi = log_marginal_likelihood({double(n - i), double(i), double(nu)});
                    CHECK(lo < hi);
                }
            }
        }
    }

    TEST_CASE("marginal likelihood of integer counts lies in (0, 1]") {
        for (int c = 0; c <= 20; ++c) {
            for (int i = 0; i <= 20; ++i) {
                for (int u = 0; u <= 3; ++u) {
                    const double l = log_marginal_likelihood({double(c), double(i), double(u)});
                    CHECK(l <= 1e-15);
                    CHECK(std::isfinite(l));
                }
            }
        }
    }
}
