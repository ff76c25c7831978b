#include "pttb/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace pttb {

std::vector<CueValidity> cue_validities(const PairwiseComparisons& train) {
    const std::size_t m = train.num_cues();
    std::vector<std::size_t> hits(m, 0);
    std::vector<std::size_t> discriminating(m, 0);
    for (std::size_t p = 0; p < train.size(); ++p) {
        const auto a = train.first_item(p);
        const auto b = train.second_item(p);
        const bool y = train.pairs()[p].first_wins;
        for (std::size_t c = 0; c < m; ++c) {
            const double delta = a[c] - b[c];
            if (delta == 0.0) continue;
            ++discriminating[c];
            if ((delta > 0.0) == y) ++hits[c];
        }
    }
    std::vector<CueValidity> out(m);
    for (std::size_t c = 0; c < m; ++c) {
        out[c].discriminating_count = discriminating[c];
        if (discriminating[c] == 0) continue;
        const double raw = static_cast<double>(hits[c]) / static_cast<double>(discriminating[c]);
        out[c].direction = raw >= 0.5 ? Direction::Positive : Direction::Negative;
        out[c].validity = std::max(raw, 1.0 - raw);
    }
    return out;
}

TtbStrategy classic_ttb_fit(const PairwiseComparisons& train) {
    if (train.empty()) throw InvalidArgument("classic_ttb_fit: no training pairs");
    const auto v = cue_validities(train);
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i].validity > v[j].validity; });
    std::vector<Direction> dirs(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) dirs[c] = v[c].direction;
    return TtbStrategy(std::move(order), std::move(dirs));
}

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

struct Design {
    Eigen::MatrixXd deltas;  // pairs × cues
    Eigen::VectorXd labels;
};

Design make_design(const PairwiseComparisons& train) {
    const std::size_t m = train.num_cues();
    Design d{Eigen::MatrixXd(static_cast<Eigen::Index>(train.size()), static_cast<Eigen::Index>(m)),
             Eigen::VectorXd(static_cast<Eigen::Index>(train.size()))};
    for (std::size_t p = 0; p < train.size(); ++p) {
        const auto a = train.first_item(p);
        const auto b = train.second_item(p);
        for (std::size_t c = 0; c < m; ++c) d.deltas(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) = a[c] - b[c];
        d.labels(static_cast<Eigen::Index>(p)) = train.pairs()[p].first_wins ? 1.0 : 0.0;
    }
    return d;
}

double loss(const Design& d, const Eigen::VectorXd& beta, double ridge) {
    const Eigen::VectorXd z = d.deltas * beta;
    double total = 0.5 * ridge * beta.squaredNorm();
    for (Eigen::Index i = 0; i < z.size(); ++i) total += softplus(z(i)) - d.labels(i) * z(i);
    return total;
}

Eigen::VectorXd gradient(const Design& d, const Eigen::VectorXd& beta, double ridge) {
    const Eigen::VectorXd z = d.deltas * beta;
    Eigen::VectorXd resid(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) resid(i) = logistic(z(i)) - d.labels(i);
    return d.deltas.transpose() * resid + ridge * beta;
}

Eigen::VectorXd to_eigen(std::span<const double> w) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Eigen::Index>(i)) = w[i];
    return v;
}

void check_dims(std::span<const double> w, const PairwiseComparisons& train) {
    if (w.size() != train.num_cues()) throw DimensionMismatch("logreg: weight vector length does not match cue count");
}

}  // namespace

double logreg_loss(std::span<const double> weights, const PairwiseComparisons& train, double ridge) {
    check_dims(weights, train);
    return loss(make_design(train), to_eigen(weights), ridge);
}

std::vector<double> logreg_gradient(std::span<const double> weights, const PairwiseComparisons& train, double ridge) {
    check_dims(weights, train);
    const Eigen::VectorXd g = gradient(make_design(train), to_eigen(weights), ridge);
    return {g.data(), g.data() + g.size()};
}

LogRegModel logreg_fit(const PairwiseComparisons& train, double ridge, std::size_t max_iterations) {
    if (train.empty()) throw InvalidArgument("logreg_fit: no training pairs");
    if (!(ridge > 0.0)) throw InvalidArgument("logreg_fit: ridge must be positive");
    const Design d = make_design(train);
    const auto m = static_cast<Eigen::Index>(train.num_cues());

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
    double current = loss(d, beta, ridge);
    LogRegModel model;
    model.loss_history.push_back(current);

    for (std::size_t it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd g = gradient(d, beta, ridge);
        if (g.lpNorm<Eigen::Infinity>() < 1e-9 * std::max(1.0, static_cast<double>(train.size()))) {
            model.converged = true;
            break;
        }
        const Eigen::VectorXd z = d.deltas * beta;
        Eigen::VectorXd curvature(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            const double s = logistic(z(i));
            curvature(i) = s * (1.0 - s);
        }
        Eigen::MatrixXd hessian = d.deltas.transpose() * curvature.asDiagonal() * d.deltas;
        hessian.diagonal().array() += ridge;
        const Eigen::VectorXd step = hessian.ldlt().solve(-g);

        // Backtracking keeps the loss monotone.
        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k, t *= 0.5) {
            const Eigen::VectorXd trial = beta + t * step;
            const double value = loss(d, trial, ridge);
            if (value <= current + 1e-4 * t * g.dot(step)) {
                beta = trial;
                ++model.iterations;
                const double previous = current;
                current = value;
                model.loss_history.push_back(current);
                accepted = true;
                if (previous - current <= 1e-15 * std::max(1.0, std::abs(current))) model.converged = true;
                break;
            }
        }
        if (!accepted || model.converged) break;
    }
    model.weights.assign(beta.data(), beta.data() + beta.size());
    return model;
}

double logreg_predict(const LogRegModel& model, std::span<const double> x1, std::span<const double> x2) {
    if (x1.size() != model.weights.size() || x2.size() != model.weights.size()) {
        throw DimensionMismatch("logreg_predict: feature vectors do not match the model");
    }
    double z = 0.0;
    for (std::size_t c = 0; c < x1.size(); ++c) z += model.weights[c] * (x1[c] - x2[c]);
    return logistic(z);
}

}  // namespace pttb
