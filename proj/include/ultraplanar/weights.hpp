#pragma once

#include <span>
#include <vector>

#include "ultraplanar/graph.hpp"

namespace ultraplanar {

/// Distance thresholds 0 = δ^0 < δ^1 < ... < δ^L.
class LevelSchedule {
public:
    LevelSchedule() = default;
    // Throws Error{NonIncreasingSchedule} unless 0 < δ^1 < ... < δ^L.
    explicit LevelSchedule(std::vector<double> thresholds);

    int levels() const { return static_cast<int>(delta_.size()); }
    // δ^l for l in 0..L, with δ^0 = 0.
    double delta(int l) const { return l == 0 ? 0.0 : delta_[l - 1]; }
    const std::vector<double>& thresholds() const { return delta_; }

private:
    std::vector<double> delta_;
};

/// Telescoped per-level edge weights θ^l for l = 0..L, length multipliers
/// already folded in, so Σ_{l<=m} θ^l_e = len_e (θ_e - δ^m)^2.
struct LayerWeights {
    int levels = 0;
    int num_edges = 0;
    std::vector<std::vector<double>> theta;  // theta[l][e], l = 0..L
    std::vector<std::vector<double>> plus;   // max(0, θ^l)
    std::vector<std::vector<double>> minus;  // min(0, θ^l)

    std::span<const double> at(int l) const { return theta[l]; }
    double constant_term() const;  // Σ_e θ^0_e
};

LayerWeights layer_weights(std::span<const double> theta, std::span<const double> lengths,
                           const LevelSchedule& schedule);

// levels[l-1] holds X̄^l (finest first); X̄^0 = 1 and X̄^{L+1} = 0 implied.
struct BinaryHierarchy {
    std::vector<BinaryIndicator> levels;
    std::vector<std::vector<int>> labels;  // per-level component labels
};

struct FractionalHierarchy {
    std::vector<FractionalIndicator> levels;
};

// Fills in labels; throws Error{InvalidHierarchy} if a level is not a
// multicut, has the wrong length, or the levels are not nested.
void validate_hierarchy(const PlanarGraph& g, BinaryHierarchy& hier, int expected_levels);
bool is_monotone(const std::vector<BinaryIndicator>& levels);
bool is_monotone(const std::vector<FractionalIndicator>& levels, double tol = kIndicatorTol);

struct Ultrametric {
    std::vector<double> edge_distance;
    std::vector<std::vector<double>> pair_distance;  // empty unless all-pairs requested
};

Ultrametric ultrametric_from_hierarchy(const PlanarGraph& g, const BinaryHierarchy& hier,
                                       const LevelSchedule& schedule, bool all_pairs);

// Σ_{l=1}^{L} θ^l · X^l, plus Σ_e θ^0_e when include_l0.
double hierarchy_cost(const std::vector<BinaryIndicator>& levels, const LayerWeights& lw, bool include_l0);
double hierarchy_cost(const std::vector<FractionalIndicator>& levels, const LayerWeights& lw, bool include_l0);

// Σ_e len_e (θ_e - d_e)^2
double distortion(std::span<const double> theta, std::span<const double> lengths,
                  std::span<const double> distance);

}  // namespace ultraplanar
