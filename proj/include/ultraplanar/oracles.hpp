#pragma once

#include <span>
#include <vector>

#include "ultraplanar/graph.hpp"
#include "ultraplanar/matching.hpp"
#include "ultraplanar/weights.hpp"

// Exhaustive reference solvers. Every entry point enforces a hard size cap
// and throws Error{TooLarge} beyond it.
namespace ultraplanar::oracles {

inline constexpr int kMaxCutVertices = 20;
inline constexpr int kMaxPartitionVertices = 10;
// The chain search is quadratic in the number of multicuts.
inline constexpr int kMaxHierarchyMulticuts = 6000;
inline constexpr int kMaxHierarchyLevels = 3;
inline constexpr int kMaxMatchingNodes = 12;
inline constexpr int kMaxCycleEdges = 12;

/// Set partitions of {0..n-1} as restricted growth strings, in
/// lexicographic order. Yields exactly B(n) labelings.
class PartitionEnumeration {
public:
    explicit PartitionEnumeration(int n);

    const std::vector<int>& current() const { return labels_; }
    // Advances to the next partition; false once all have been visited.
    bool next();

private:
    std::vector<int> labels_;
    std::vector<int> prefix_max_;
};

struct CutResult {
    BinaryIndicator z;
    double value = 0.0;
};
CutResult brute_force_min_cut(const PlanarGraph& g, std::span<const double> weights);

struct PartitionResult {
    std::vector<int> labels;
    BinaryIndicator cut;
    double value = 0.0;
};
PartitionResult brute_force_multicut(const PlanarGraph& g, std::span<const double> weights);

// All distinct multicut indicators of g (one per partition into connected blocks).
std::vector<BinaryIndicator> enumerate_multicuts(const PlanarGraph& g);

struct HierarchyResult {
    std::vector<BinaryIndicator> levels;  // finest first
    double value = 0.0;                   // Σ_{l>=1} θ^l · X̄^l
};
HierarchyResult brute_force_hierarchy(const PlanarGraph& g, const LayerWeights& lw, int levels);

Matching brute_force_mwpm(const MatchingGraph& g);

std::vector<CycleViolation> brute_force_cycle_check(const PlanarGraph& g, std::span<const double> x,
                                                    double tol = kIndicatorTol);

// Every simple cycle of g as a sorted edge list (used by the cycle check).
std::vector<std::vector<EdgeId>> enumerate_cycles(const PlanarGraph& g);

}  // namespace ultraplanar::oracles
