#include "ultraplanar/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

MergeTree agglomerate(const PlanarGraph& g, std::span<const double> strengths) {
    const int ne = g.num_edges(), n = g.num_vertices();
    if (static_cast<int>(strengths.size()) != ne)
        throw Error(ErrorKind::LengthMismatch, "strength vector does not match the edge count");
    for (double s : strengths)
        if (!std::isfinite(s)) throw Error(ErrorKind::InvalidInput, "strengths must be finite");

    std::vector<EdgeId> order(ne);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return strengths[a] < strengths[b]; });

    std::vector<int> cluster(n);
    std::iota(cluster.begin(), cluster.end(), 0);
    std::vector<std::vector<VertexId>> members(n);
    std::vector<std::vector<EdgeId>> incident(n);
    for (VertexId v = 0; v < n; ++v) {
        members[v] = {v};
        for (EdgeId e : g.rotation(v)) incident[v].push_back(e);
    }
    std::vector<double> raw(ne, std::numeric_limits<double>::quiet_NaN());
    for (EdgeId e : order) {
        int a = cluster[g.edge(e).u], b = cluster[g.edge(e).v];
        if (a == b) continue;
        if (members[a].size() > members[b].size()) std::swap(a, b);
        const double h = strengths[e];
        for (EdgeId f : incident[a]) {
            const int ca = cluster[g.edge(f).u], cb = cluster[g.edge(f).v];
            if (std::isnan(raw[f]) && ((ca == a && cb == b) || (ca == b && cb == a))) raw[f] = h;
        }
        for (VertexId v : members[a]) cluster[v] = b;
        members[b].insert(members[b].end(), members[a].begin(), members[a].end());
        incident[b].insert(incident[b].end(), incident[a].begin(), incident[a].end());
        members[a].clear();
        incident[a].clear();
    }
    double lo = 0.0, hi = 0.0;
    for (double s : strengths) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    MergeTree tree;
    tree.height.resize(ne);
    for (EdgeId e = 0; e < ne; ++e) {
        const double r = std::isnan(raw[e]) ? hi : raw[e];
        tree.height[e] = hi > lo ? (r - lo) / (hi - lo) : 0.0;
    }
    return tree;
}

ThresholdFit fit_thresholds(const MergeTree& tree, const LayerWeights& lw) {
    const int ne = lw.num_edges;
    if (static_cast<int>(tree.height.size()) != ne)
        throw Error(ErrorKind::LengthMismatch, "merge tree does not match the layer weights");
    std::vector<EdgeId> order(ne);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return tree.height[a] < tree.height[b]; });

    ThresholdFit fit;
    for (int l = 1; l <= lw.levels; ++l) {
        const auto& w = lw.theta[l];
        double cost = 0.0;
        for (EdgeId e = 0; e < ne; ++e) cost += w[e];
        double best = cost, best_q = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < ne;) {
            const double q = tree.height[order[i]];
            while (i < ne && tree.height[order[i]] == q) cost -= w[order[i++]];
            if (cost < best) {
                best = cost;
                best_q = q;
            }
        }
        fit.thresholds.push_back(best_q);
        fit.level_cost.push_back(best);
        fit.total += best;
    }
    return fit;
}

std::vector<BinaryIndicator> threshold_levels(const MergeTree& tree, std::span<const double> thresholds) {
    std::vector<BinaryIndicator> out;
    for (double q : thresholds) {
        BinaryIndicator z(tree.height.size());
        for (std::size_t e = 0; e < z.size(); ++e) z[e] = tree.height[e] > q;
        out.push_back(std::move(z));
    }
    return out;
}

IndependentResult independent_layers(const Instance& instance, const SolverConfig& config) {
    const LayerWeights lw = instance.layer_weights();
    IndependentResult out;
    for (int l = 1; l <= lw.levels; ++l) {
        LayerWeights single;
        single.levels = 1;
        single.num_edges = lw.num_edges;
        single.theta = {std::vector<double>(lw.num_edges, 0.0), lw.theta[l]};
        single.plus = {std::vector<double>(lw.num_edges, 0.0), lw.plus[l]};
        single.minus = {std::vector<double>(lw.num_edges, 0.0), lw.minus[l]};
        const SolveReport r = run_weights(instance.graph, single, config);
        LayerSolution s;
        s.cut = r.hierarchy.levels[0];
        s.cost = r.upper_bound;
        s.lower_bound = r.lower_bound;
        s.status = r.status;
        out.total += s.cost;
        out.layers.push_back(std::move(s));
    }
    for (std::size_t l = 0; l + 1 < out.layers.size(); ++l)
        for (int e = 0; e < lw.num_edges; ++e)
            if (out.layers[l + 1].cut[e] > out.layers[l].cut[e]) ++out.monotonicity_violations;
    return out;
}

}  // namespace ultraplanar
