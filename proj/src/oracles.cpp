#include "ultraplanar/oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "ultraplanar/errors.hpp"

namespace ultraplanar::oracles {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::TooLarge, what);
}

}  // namespace

PartitionEnumeration::PartitionEnumeration(int n) {
    require(n >= 1 && n <= kMaxPartitionVertices,
            "partition enumeration supports 1.." + std::to_string(kMaxPartitionVertices) + " elements");
    labels_.assign(n, 0);
    prefix_max_.assign(n, 0);
}

bool PartitionEnumeration::next() {
    const int n = static_cast<int>(labels_.size());
    for (int i = n - 1; i >= 1; --i) {
        if (labels_[i] <= prefix_max_[i - 1]) {
            ++labels_[i];
            prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
            for (int j = i + 1; j < n; ++j) {
                labels_[j] = 0;
                prefix_max_[j] = prefix_max_[i];
            }
            return true;
        }
    }
    return false;
}

CutResult brute_force_min_cut(const PlanarGraph& g, std::span<const double> weights) {
    const int n = g.num_vertices();
    require(n <= kMaxCutVertices, "brute_force_min_cut: too many vertices");
    CutResult best;
    best.z.assign(g.num_edges(), 0);
    // Vertex n-1 stays on side 0; that covers each bipartition once.
    const std::uint32_t limit = 1u << (n - 1);
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        double value = 0.0;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            const bool a = g.edge(e).u < n - 1 && ((mask >> g.edge(e).u) & 1u);
            const bool b = g.edge(e).v < n - 1 && ((mask >> g.edge(e).v) & 1u);
            if (a != b) value += weights[e];
        }
        if (value < best.value) {
            best.value = value;
            for (EdgeId e = 0; e < g.num_edges(); ++e) {
                const bool a = g.edge(e).u < n - 1 && ((mask >> g.edge(e).u) & 1u);
                const bool b = g.edge(e).v < n - 1 && ((mask >> g.edge(e).v) & 1u);
                best.z[e] = a != b;
            }
        }
    }
    return best;
}

PartitionResult brute_force_multicut(const PlanarGraph& g, std::span<const double> weights) {
    require(g.num_vertices() <= kMaxPartitionVertices, "brute_force_multicut: too many vertices");
    PartitionEnumeration parts(g.num_vertices());
    PartitionResult best;
    best.labels = parts.current();
    best.cut.assign(g.num_edges(), 0);
    do {
        const auto& lab = parts.current();
        double value = 0.0;
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (lab[g.edge(e).u] != lab[g.edge(e).v]) value += weights[e];
        if (value < best.value) {
            best.value = value;
            best.labels = lab;
            for (EdgeId e = 0; e < g.num_edges(); ++e) best.cut[e] = lab[g.edge(e).u] != lab[g.edge(e).v];
        }
    } while (parts.next());
    return best;
}

std::vector<BinaryIndicator> enumerate_multicuts(const PlanarGraph& g) {
    require(g.num_vertices() <= kMaxPartitionVertices, "enumerate_multicuts: too many vertices");
    PartitionEnumeration parts(g.num_vertices());
    std::set<BinaryIndicator> seen;
    std::vector<BinaryIndicator> out;
    do {
        const auto& lab = parts.current();
        BinaryIndicator x(g.num_edges(), 0);
        for (EdgeId e = 0; e < g.num_edges(); ++e) x[e] = lab[g.edge(e).u] != lab[g.edge(e).v];
        if (seen.insert(x).second) out.push_back(std::move(x));
    } while (parts.next());
    return out;
}

HierarchyResult brute_force_hierarchy(const PlanarGraph& g, const LayerWeights& lw, int levels) {
    require(levels >= 1 && levels <= kMaxHierarchyLevels, "brute_force_hierarchy: too many levels");
    require(g.num_edges() <= 64, "brute_force_hierarchy: too many edges");
    const auto cuts = enumerate_multicuts(g);
    const int k = static_cast<int>(cuts.size());
    require(k <= kMaxHierarchyMulticuts, "brute_force_hierarchy: too many multicuts");
    std::vector<std::uint64_t> mask(k, 0);
    for (int c = 0; c < k; ++c)
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (cuts[c][e]) mask[c] |= std::uint64_t{1} << e;
    auto level_cost = [&](int l, int c) {
        double s = 0.0;
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (cuts[c][e]) s += lw.theta[l][e];
        return s;
    };
    auto nested = [&](int finer, int coarser) { return (mask[coarser] & ~mask[finer]) == 0; };
    // best[c] = optimal cost of levels l..L given X̄^l = cuts[c].
    std::vector<double> best(k);
    std::vector<std::vector<int>> choice(levels + 1, std::vector<int>(k, -1));
    for (int c = 0; c < k; ++c) best[c] = level_cost(levels, c);
    for (int l = levels - 1; l >= 1; --l) {
        std::vector<double> next(k, std::numeric_limits<double>::infinity());
        for (int c = 0; c < k; ++c) {
            for (int d = 0; d < k; ++d) {
                if (!nested(c, d)) continue;
                if (best[d] < next[c]) {
                    next[c] = best[d];
                    choice[l][c] = d;
                }
            }
            next[c] += level_cost(l, c);
        }
        best = std::move(next);
    }
    int arg = 0;
    for (int c = 1; c < k; ++c)
        if (best[c] < best[arg]) arg = c;
    HierarchyResult out;
    out.value = best[arg];
    for (int l = 1, c = arg; l <= levels; ++l) {
        out.levels.push_back(cuts[c]);
        c = choice[l][c];
    }
    return out;
}

namespace {

void mwpm_rec(const std::vector<std::vector<int>>& best_edge, const MatchingGraph& g, std::vector<int>& mate,
              std::vector<int>& chosen, double acc, double& best, std::vector<int>& best_chosen) {
    const int n = static_cast<int>(mate.size());
    int v = 0;
    while (v < n && mate[v] != -1) ++v;
    if (v == n) {
        if (acc < best) {
            best = acc;
            best_chosen = chosen;
        }
        return;
    }
    for (int w = v + 1; w < n; ++w) {
        if (mate[w] != -1 || best_edge[v][w] < 0) continue;
        const int id = best_edge[v][w];
        mate[v] = w;
        mate[w] = v;
        chosen.push_back(id);
        mwpm_rec(best_edge, g, mate, chosen, acc + g.edge(id).weight, best, best_chosen);
        chosen.pop_back();
        mate[v] = mate[w] = -1;
    }
}

}  // namespace

Matching brute_force_mwpm(const MatchingGraph& g) {
    const int n = g.num_nodes();
    if (n % 2 != 0) throw Error(ErrorKind::NoPerfectMatching, "odd node count");
    require(n <= kMaxMatchingNodes, "brute_force_mwpm: too many nodes");
    std::vector<std::vector<int>> best_edge(n, std::vector<int>(n, -1));
    for (int id = 0; id < g.num_edges(); ++id) {
        const auto& e = g.edge(id);
        int& slot = best_edge[std::min(e.u, e.v)][std::max(e.u, e.v)];
        if (slot < 0 || e.weight < g.edge(slot).weight) slot = id;
    }
    std::vector<int> mate(n, -1), chosen, best_chosen;
    double best = std::numeric_limits<double>::infinity();
    mwpm_rec(best_edge, g, mate, chosen, 0.0, best, best_chosen);
    if (best == std::numeric_limits<double>::infinity() && n > 0)
        throw Error(ErrorKind::NoPerfectMatching, "graph has no perfect matching");
    Matching m;
    m.mate.assign(n, -1);
    m.edges = best_chosen;
    std::sort(m.edges.begin(), m.edges.end());
    for (int id : m.edges) {
        m.mate[g.edge(id).u] = g.edge(id).v;
        m.mate[g.edge(id).v] = g.edge(id).u;
        m.weight += g.edge(id).weight;
    }
    return m;
}

std::vector<std::vector<EdgeId>> enumerate_cycles(const PlanarGraph& g) {
    require(g.num_edges() <= kMaxCycleEdges, "enumerate_cycles: too many edges");
    std::set<std::vector<EdgeId>> found;
    const int n = g.num_vertices();
    std::vector<char> on_path(n, 0);
    std::vector<EdgeId> path;
    // Cycles through s whose other vertices are all > s.
    auto dfs = [&](auto&& self, VertexId s, VertexId v) -> void {
        for (EdgeId e : g.rotation(v)) {
            if (!path.empty() && e == path.back()) continue;
            const VertexId w = g.other(e, v);
            if (w == s && !path.empty()) {
                std::vector<EdgeId> cyc = path;
                cyc.push_back(e);
                std::sort(cyc.begin(), cyc.end());
                if (std::adjacent_find(cyc.begin(), cyc.end()) == cyc.end()) found.insert(std::move(cyc));
                continue;
            }
            if (w <= s || on_path[w]) continue;
            on_path[w] = 1;
            path.push_back(e);
            self(self, s, w);
            path.pop_back();
            on_path[w] = 0;
        }
    };
    for (VertexId s = 0; s < n; ++s) {
        on_path[s] = 1;
        dfs(dfs, s, s);
        on_path[s] = 0;
    }
    return {found.begin(), found.end()};
}

std::vector<CycleViolation> brute_force_cycle_check(const PlanarGraph& g, std::span<const double> x, double tol) {
    std::vector<CycleViolation> out;
    for (const auto& cyc : enumerate_cycles(g)) {
        double total = 0.0;
        for (EdgeId e : cyc) total += x[e];
        for (EdgeId hat : cyc) {
            const double rest = total - x[hat];
            if (rest < x[hat] - tol) {
                CycleViolation cv;
                cv.edge = hat;
                cv.path_weight = rest;
                cv.edge_value = x[hat];
                for (EdgeId e : cyc)
                    if (e != hat) cv.path.push_back(e);
                out.push_back(std::move(cv));
            }
        }
    }
    return out;
}

}  // namespace ultraplanar::oracles
