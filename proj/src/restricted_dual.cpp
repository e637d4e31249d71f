#include "ultraplanar/restricted_dual.hpp"

#include <algorithm>
#include <string>

#include "ultraplanar/cut_oracle.hpp"
#include "ultraplanar/errors.hpp"

namespace ultraplanar {

CutPool::CutPool(int levels, int num_edges)
    : num_edges_(num_edges), columns_(levels + 1), seen_(levels + 1) {}

bool CutPool::add(int layer, BinaryIndicator z) {
    if (layer < 1 || layer > levels())
        throw Error(ErrorKind::PoolColumnInvalid, "layer " + std::to_string(layer) + " out of range");
    if (static_cast<int>(z.size()) != num_edges_)
        throw Error(ErrorKind::PoolColumnInvalid, "cut column has the wrong length");
    if (std::any_of(z.begin(), z.end(), [](std::uint8_t v) { return v > 1; }))
        throw Error(ErrorKind::PoolColumnInvalid, "cut column is not binary");
    if (std::none_of(z.begin(), z.end(), [](std::uint8_t v) { return v != 0; })) return false;
    if (!seen_[layer].insert(z).second) return false;
    columns_[layer].push_back(std::move(z));
    return true;
}

int CutPool::total() const {
    int s = 0;
    for (int l = 1; l <= levels(); ++l) s += size(l);
    return s;
}

void CutPool::validate(const PlanarGraph& g) const {
    if (g.num_edges() != num_edges_) throw Error(ErrorKind::PoolColumnInvalid, "pool does not match the graph");
    for (int l = 1; l <= levels(); ++l)
        for (const auto& z : columns_[l]) {
            try {
                (void)cut_sides(g, z);
            } catch (const Error&) {
                throw Error(ErrorKind::PoolColumnInvalid,
                            "layer " + std::to_string(l) + " holds a column that is not a two-way cut");
            }
        }
}

std::vector<double> DualState::adjusted_weights(const LayerWeights& lw, int l) const {
    std::vector<double> w(lw.theta[l]);
    for (std::size_t e = 0; e < w.size(); ++e) w[e] += lambda[l][e] + omega[l - 1][e] - omega[l][e];
    return w;
}

void complete_primal(const CutPool& pool, PrimalState& primal) {
    const int levels = pool.levels(), ne = pool.num_edges();
    primal.levels = levels;
    primal.coverage.assign(levels + 1, std::vector<double>(ne, 0.0));
    primal.alpha.assign(levels + 1, std::vector<double>(ne, 0.0));
    primal.beta.assign(levels + 1, std::vector<double>(ne, 0.0));
    for (int l = 1; l <= levels; ++l) {
        const auto& cols = pool.layer(l);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const double g = primal.gamma[l][k];
            if (g == 0.0) continue;
            for (EdgeId e = 0; e < ne; ++e)
                if (cols[k][e]) primal.coverage[l][e] += g;
        }
    }
    for (EdgeId e = 0; e < ne; ++e) {
        double suffix_max = 0.0;
        for (int l = levels; l >= 1; --l) {
            const double c = primal.coverage[l][e];
            suffix_max = l == levels ? c : std::max(suffix_max, c);
            primal.alpha[l][e] = suffix_max - c;
            primal.beta[l][e] = std::max(0.0, c - 1.0);
        }
    }
}

double expanded_objective(const PrimalState& primal, const LayerWeights& lw) {
    double total = 0.0;
    for (int l = 1; l <= primal.levels; ++l)
        for (int e = 0; e < lw.num_edges; ++e)
            total += lw.theta[l][e] * primal.coverage[l][e] - lw.minus[l][e] * primal.beta[l][e] +
                     lw.plus[l][e] * primal.alpha[l][e];
    return total;
}

namespace {

lp::LinearProgram base_program(const LayerWeights& lw, double epsilon) {
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidInput, "epsilon must be nonnegative");
    const int levels = lw.levels, ne = lw.num_edges;
    lp::LinearProgram prog;
    for (int l = 1; l <= levels; ++l)
        for (int e = 0; e < ne; ++e)
            prog.add_variable(-1.0, 0.0, -lw.minus[l][e], "lam" + std::to_string(l) + "_" + std::to_string(e));
    for (int l = 1; l < levels; ++l)
        for (int e = 0; e < ne; ++e) {
            // ω^{L-1} - ω^L <= θ^{+L} is a plain bound since ω^L = 0.
            const double hi = l == levels - 1 ? lw.plus[levels][e] : lp::kInf;
            prog.add_variable(-epsilon, 0.0, hi, "om" + std::to_string(l) + "_" + std::to_string(e));
        }
    // ω^{l-1} - ω^l <= θ^{+l} for 2 <= l <= L-1; at l = 1 it is implied by ω >= 0.
    for (int l = 2; l < levels; ++l)
        for (int e = 0; e < ne; ++e) {
            lp::Row row;
            row.coeffs = {{(levels + l - 2) * ne + e, 1.0}, {(levels + l - 1) * ne + e, -1.0}};
            row.sense = lp::Sense::LessEqual;
            row.rhs = lw.plus[l][e];
            prog.add_row(std::move(row));
        }
    return prog;
}

}  // namespace

RestrictedDual::RestrictedDual(const LayerWeights& lw, double epsilon, lp::SimplexOptions options)
    : levels_(lw.levels),
      num_edges_(lw.num_edges),
      epsilon_(epsilon),
      theta_(lw.theta),
      lp_(base_program(lw, epsilon)),
      simplex_(lp_, options),
      columns_(lw.levels + 1) {}

void RestrictedDual::add_column(int layer, const BinaryIndicator& z) {
    if (layer < 1 || layer > levels_) throw Error(ErrorKind::PoolColumnInvalid, "layer out of range");
    if (static_cast<int>(z.size()) != num_edges_)
        throw Error(ErrorKind::PoolColumnInvalid, "cut column has the wrong length");
    lp::Row row;
    row.sense = lp::Sense::GreaterEqual;
    double rhs = 0.0;
    for (EdgeId e = 0; e < num_edges_; ++e) {
        if (z[e] > 1) throw Error(ErrorKind::PoolColumnInvalid, "cut column is not binary");
        if (!z[e]) continue;
        rhs -= theta_[layer][e];
        row.coeffs.emplace_back(lambda_index(layer, e), 1.0);
        if (layer >= 2) row.coeffs.emplace_back(omega_index(layer - 1, e), 1.0);
        if (layer < levels_) row.coeffs.emplace_back(omega_index(layer, e), -1.0);
    }
    row.rhs = rhs;
    const int index = simplex_.add_row(row);
    lp_.add_row(std::move(row));
    pool_rows_.push_back({index, layer});
    columns_[layer].push_back(z);
}

void RestrictedDual::sync(const CutPool& pool) {
    for (int l = 1; l <= levels_; ++l)
        for (int k = static_cast<int>(columns_[l].size()); k < pool.size(l); ++k) add_column(l, pool.layer(l)[k]);
}

RestrictedSolution RestrictedDual::solve() {
    const lp::Solution sol = simplex_.solve();
    switch (sol.status) {
        case lp::Status::Optimal: break;
        case lp::Status::Infeasible: throw Error(ErrorKind::Infeasible, "restricted dual is infeasible");
        case lp::Status::Unbounded: throw Error(ErrorKind::Unbounded, "restricted dual is unbounded");
        case lp::Status::IterationLimit: throw Error(ErrorKind::IterationLimit, "restricted dual hit the iteration limit");
    }
    RestrictedSolution out;
    out.lp_iterations = sol.iterations;
    DualState& d = out.dual;
    d.levels = levels_;
    d.lambda.assign(levels_ + 1, std::vector<double>(num_edges_, 0.0));
    d.omega.assign(levels_ + 1, std::vector<double>(num_edges_, 0.0));
    double lam_sum = 0.0, om_sum = 0.0;
    for (int l = 1; l <= levels_; ++l)
        for (EdgeId e = 0; e < num_edges_; ++e) {
            // Clip round-off so the bound invariants hold exactly.
            const double hi = -std::min(0.0, theta_[l][e]);
            const double v = std::clamp(sol.x[lambda_index(l, e)], 0.0, hi);
            d.lambda[l][e] = v;
            lam_sum += v;
        }
    for (int l = 1; l < levels_; ++l)
        for (EdgeId e = 0; e < num_edges_; ++e) {
            const double v = std::max(0.0, sol.x[omega_index(l, e)]);
            d.omega[l][e] = v;
            om_sum += v;
        }
    out.dual_objective = -lam_sum;
    out.penalized_objective = -lam_sum - epsilon_ * om_sum;

    PrimalState& p = out.primal;
    p.levels = levels_;
    p.gamma.assign(levels_ + 1, {});
    for (const auto& pr : pool_rows_) p.gamma[pr.layer].push_back(std::max(0.0, -sol.row_dual[pr.row]));
    CutPool mirror(levels_, num_edges_);
    for (int l = 1; l <= levels_; ++l)
        for (const auto& z : columns_[l]) mirror.add(l, z);
    // Columns are added in pool order and pools are duplicate-free, so the
    // mirror has the same layout as gamma.
    for (int l = 1; l <= levels_; ++l)
        if (mirror.size(l) != static_cast<int>(p.gamma[l].size()))
            throw Error(ErrorKind::PoolColumnInvalid, "duplicate or empty column in the restricted dual");
    complete_primal(mirror, p);
    iterations_ += sol.iterations;
    return out;
}

RestrictedSolution solve_restricted(const CutPool& pool, const LayerWeights& lw, double epsilon,
                                    const lp::SimplexOptions& options) {
    if (pool.levels() != lw.levels || pool.num_edges() != lw.num_edges)
        throw Error(ErrorKind::PoolColumnInvalid, "pool shape does not match the layer weights");
    RestrictedDual rd(lw, epsilon, options);
    rd.sync(pool);
    return rd.solve();
}

}  // namespace ultraplanar
