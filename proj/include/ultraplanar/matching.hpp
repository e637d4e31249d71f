#pragma once

#include <vector>

namespace ultraplanar {

struct MatchingEdge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
};

class MatchingGraph {
public:
    explicit MatchingGraph(int num_nodes = 0) : num_nodes_(num_nodes) {}

    int add_edge(int u, int v, double weight);

    int num_nodes() const { return num_nodes_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const MatchingEdge& edge(int id) const { return edges_[id]; }
    const std::vector<MatchingEdge>& edges() const { return edges_; }

private:
    int num_nodes_;
    std::vector<MatchingEdge> edges_;
};

struct Matching {
    std::vector<int> edges;  // ids into the MatchingGraph, ascending
    std::vector<int> mate;   // mate[v] = matched node
    double weight = 0.0;
};

/// Minimum-weight perfect matching with signed weights.
///
/// Primal-dual blossom algorithm, O(n^3). Real weights are mapped onto a
/// power-of-two integer grid with 40 bits of headroom before solving, so
/// integer inputs of moderate size are solved exactly; the reported weight
/// is re-summed from the original values. Among parallel edges only the
/// cheapest (lowest id on ties) can be selected.
/// Throws Error{NoPerfectMatching} for an odd node count or when the graph
/// has no perfect matching.
Matching min_weight_perfect_matching(const MatchingGraph& g);

}  // namespace ultraplanar
