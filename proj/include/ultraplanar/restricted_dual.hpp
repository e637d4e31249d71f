#pragma once

#include <iosfwd>
#include <set>
#include <vector>

#include "ultraplanar/graph.hpp"
#include "ultraplanar/lp.hpp"
#include "ultraplanar/weights.hpp"

namespace ultraplanar {

/// Per-layer sets of two-way cut columns, deduplicated by exact equality.
/// Layers are numbered 1..L.
class CutPool {
public:
    CutPool() = default;
    CutPool(int levels, int num_edges);

    // Appends z to layer l unless it is already present or empty; returns
    // whether it was inserted. Throws Error{PoolColumnInvalid} for a column
    // of the wrong length or with entries other than 0/1.
    bool add(int layer, BinaryIndicator z);

    int levels() const { return static_cast<int>(columns_.size()) - 1; }
    int num_edges() const { return num_edges_; }
    const std::vector<BinaryIndicator>& layer(int l) const { return columns_[l]; }
    int size(int l) const { return static_cast<int>(columns_[l].size()); }
    int total() const;

    // Throws Error{PoolColumnInvalid} unless every column is some δ(S) of g.
    void validate(const PlanarGraph& g) const;

private:
    int num_edges_ = 0;
    std::vector<std::vector<BinaryIndicator>> columns_;  // index 0 unused
    std::vector<std::set<BinaryIndicator>> seen_;
};

/// Lagrange multipliers of the restricted dual. lambda[l] for l = 1..L and
/// omega[l] for l = 0..L with omega[0] = omega[L] = 0; index 0 of lambda is
/// an all-zero placeholder.
struct DualState {
    int levels = 0;
    std::vector<std::vector<double>> lambda;
    std::vector<std::vector<double>> omega;

    double mu(int l, EdgeId e) const { return omega[l][e] - omega[l - 1][e]; }
    // θ^l + λ^l + ω^{l-1} - ω^l: the weights handed to the separation oracle.
    std::vector<double> adjusted_weights(const LayerWeights& lw, int l) const;
};

/// Column weights γ^l read off the pool-row duals, plus the smallest slacks
/// that make them feasible for the expanded objective.
struct PrimalState {
    int levels = 0;
    std::vector<std::vector<double>> gamma;     // gamma[l][k] for column k of layer l
    std::vector<std::vector<double>> coverage;  // Ẑ^l γ^l per edge
    std::vector<std::vector<double>> alpha;     // alpha[L] = 0
    std::vector<std::vector<double>> beta;
};

// Fills coverage, alpha and beta from gamma with the closed forms
// β^l = max(0, Ẑγ^l - 1) and α^l = max_{m>=l}(Ẑγ^m - Ẑγ^l).
void complete_primal(const CutPool& pool, PrimalState& primal);

// Σ_l θ^l·Ẑγ^l - θ^{-l}·β^l + θ^{+l}·α^l
double expanded_objective(const PrimalState& primal, const LayerWeights& lw);

struct RestrictedSolution {
    DualState dual;
    PrimalState primal;
    double dual_objective = 0.0;       // -Σ λ, a valid dual value
    double penalized_objective = 0.0;  // -Σ λ - ε‖ω‖₁, what the LP maximizes
    long lp_iterations = 0;
};

/// The restricted ε-penalized dual LP, kept alive across cutting-plane
/// iterations. New pool columns become new rows and the simplex basis is
/// reused.
class RestrictedDual {
public:
    RestrictedDual(const LayerWeights& lw, double epsilon, lp::SimplexOptions options = {});

    void add_column(int layer, const BinaryIndicator& z);
    // Adds every pool column not added yet (pools only grow).
    void sync(const CutPool& pool);
    RestrictedSolution solve();

    const lp::LinearProgram& program() const { return lp_; }
    int levels() const { return levels_; }

private:
    int lambda_index(int l, EdgeId e) const { return (l - 1) * num_edges_ + e; }
    int omega_index(int l, EdgeId e) const { return (levels_ + l - 1) * num_edges_ + e; }

    int levels_ = 0;
    int num_edges_ = 0;
    double epsilon_ = 0.0;
    std::vector<std::vector<double>> theta_;  // per-layer weights, l = 0..L
    lp::LinearProgram lp_;
    lp::DualSimplex simplex_;
    struct PoolRow {
        int row = 0;
        int layer = 0;
    };
    std::vector<PoolRow> pool_rows_;
    std::vector<std::vector<BinaryIndicator>> columns_;  // per layer, in row order
    long iterations_ = 0;
};

RestrictedSolution solve_restricted(const CutPool& pool, const LayerWeights& lw, double epsilon,
                                    const lp::SimplexOptions& options = {});

}  // namespace ultraplanar
