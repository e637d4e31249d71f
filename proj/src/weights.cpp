#include "ultraplanar/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

LevelSchedule::LevelSchedule(std::vector<double> thresholds) : delta_(std::move(thresholds)) {
    double prev = 0.0;
    for (std::size_t i = 0; i < delta_.size(); ++i) {
        if (!std::isfinite(delta_[i]) || !(delta_[i] > prev))
            throw Error(ErrorKind::NonIncreasingSchedule,
                        "level thresholds must satisfy 0 < δ^1 < ... < δ^L (violated at level " +
                            std::to_string(i + 1) + ")");
        prev = delta_[i];
    }
}

double LayerWeights::constant_term() const {
    double s = 0.0;
    for (double x : theta[0]) s += x;
    return s;
}

LayerWeights layer_weights(std::span<const double> theta, std::span<const double> lengths,
                           const LevelSchedule& schedule) {
    if (theta.size() != lengths.size())
        throw Error(ErrorKind::LengthMismatch, "theta and length vectors differ in size");
    LayerWeights lw;
    lw.levels = schedule.levels();
    lw.num_edges = static_cast<int>(theta.size());
    lw.theta.assign(lw.levels + 1, std::vector<double>(theta.size()));
    for (std::size_t e = 0; e < theta.size(); ++e) {
        if (!(theta[e] >= 0.0) || !std::isfinite(theta[e]))
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " has negative or non-finite theta");
        if (!(lengths[e] > 0.0) || !std::isfinite(lengths[e]))
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " has non-positive length");
        const double t = theta[e], len = lengths[e];
        lw.theta[0][e] = len * t * t;
        for (int l = 1; l <= lw.levels; ++l) {
            const double a = t - schedule.delta(l), b = t - schedule.delta(l - 1);
            lw.theta[l][e] = len * (a * a - b * b);
        }
    }
    lw.plus = lw.theta;
    lw.minus = lw.theta;
    for (int l = 0; l <= lw.levels; ++l)
        for (std::size_t e = 0; e < theta.size(); ++e) {
            lw.plus[l][e] = std::max(0.0, lw.theta[l][e]);
            lw.minus[l][e] = std::min(0.0, lw.theta[l][e]);
        }
    return lw;
}

bool is_monotone(const std::vector<BinaryIndicator>& levels) {
    for (std::size_t l = 0; l + 1 < levels.size(); ++l)
        for (std::size_t e = 0; e < levels[l].size(); ++e)
            if (levels[l + 1][e] > levels[l][e]) return false;
    return true;
}

bool is_monotone(const std::vector<FractionalIndicator>& levels, double tol) {
    for (std::size_t l = 0; l + 1 < levels.size(); ++l)
        for (std::size_t e = 0; e < levels[l].size(); ++e)
            if (levels[l + 1][e] > levels[l][e] + tol) return false;
    return true;
}

void validate_hierarchy(const PlanarGraph& g, BinaryHierarchy& hier, int expected_levels) {
    if (static_cast<int>(hier.levels.size()) != expected_levels)
        throw Error(ErrorKind::InvalidHierarchy, "hierarchy has " + std::to_string(hier.levels.size()) +
                                                     " levels, expected " + std::to_string(expected_levels));
    hier.labels.clear();
    for (std::size_t l = 0; l < hier.levels.size(); ++l) {
        const auto& x = hier.levels[l];
        if (static_cast<int>(x.size()) != g.num_edges())
            throw Error(ErrorKind::InvalidHierarchy, "level " + std::to_string(l + 1) + " has wrong length");
        if (std::any_of(x.begin(), x.end(), [](std::uint8_t v) { return v > 1; }))
            throw Error(ErrorKind::InvalidHierarchy, "level " + std::to_string(l + 1) + " is not binary");
        if (!is_multicut(g, x))
            throw Error(ErrorKind::InvalidHierarchy, "level " + std::to_string(l + 1) + " is not a multicut");
        hier.labels.push_back(connected_components(g, x));
    }
    if (!is_monotone(hier.levels))
        throw Error(ErrorKind::InvalidHierarchy, "levels are not nested (X^l >= X^{l+1} violated)");
}

Ultrametric ultrametric_from_hierarchy(const PlanarGraph& g, const BinaryHierarchy& hier,
                                       const LevelSchedule& schedule, bool all_pairs) {
    BinaryHierarchy checked{hier.levels, {}};
    validate_hierarchy(g, checked, schedule.levels());
    const int levels = schedule.levels();
    Ultrametric d;
    d.edge_distance.assign(g.num_edges(), 0.0);
    for (int l = 1; l <= levels; ++l)
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (checked.levels[l - 1][e]) d.edge_distance[e] = std::max(d.edge_distance[e], schedule.delta(l));
    if (all_pairs) {
        const int n = g.num_vertices();
        d.pair_distance.assign(n, std::vector<double>(n, 0.0));
        for (int l = levels; l >= 1; --l) {
            const auto& lab = checked.labels[l - 1];
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (d.pair_distance[u][v] == 0.0 && lab[u] != lab[v]) d.pair_distance[u][v] = schedule.delta(l);
        }
    }
    return d;
}

namespace {

template <class Indicator>
double cost_impl(const std::vector<Indicator>& levels, const LayerWeights& lw, bool include_l0) {
    double total = include_l0 ? lw.constant_term() : 0.0;
    for (int l = 1; l <= lw.levels && l <= static_cast<int>(levels.size()); ++l) {
        const auto& x = levels[l - 1];
        const auto& w = lw.theta[l];
        for (std::size_t e = 0; e < x.size(); ++e) total += w[e] * static_cast<double>(x[e]);
    }
    return total;
}

}  // namespace

double hierarchy_cost(const std::vector<BinaryIndicator>& levels, const LayerWeights& lw, bool include_l0) {
    return cost_impl(levels, lw, include_l0);
}

double hierarchy_cost(const std::vector<FractionalIndicator>& levels, const LayerWeights& lw, bool include_l0) {
    return cost_impl(levels, lw, include_l0);
}

double distortion(std::span<const double> theta, std::span<const double> lengths, std::span<const double> distance) {
    double s = 0.0;
    for (std::size_t e = 0; e < theta.size(); ++e) {
        const double r = theta[e] - distance[e];
        s += lengths[e] * r * r;
    }
    return s;
}

}  // namespace ultraplanar
