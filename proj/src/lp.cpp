#include "ultraplanar/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

#include "ultraplanar/errors.hpp"

namespace ultraplanar::lp {

int LinearProgram::add_variable(double cost, double lo, double hi, std::string name) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    names.push_back(std::move(name));
    return num_variables() - 1;
}

int LinearProgram::add_row(Row row) {
    rows.push_back(std::move(row));
    return num_rows() - 1;
}

namespace {

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, AtZero };

void bounds_of(const Row& row, double& lo, double& hi) {
    switch (row.sense) {
        case Sense::LessEqual: lo = -kInf, hi = row.rhs; break;
        case Sense::GreaterEqual: lo = row.rhs, hi = kInf; break;
        case Sense::Equal: lo = hi = row.rhs; break;
    }
}

}  // namespace

// Computational form: min c·x over [A -I](x, s) = 0 with bounds on x and on
// the row activities s. Structural j is variable j, the logical of row i is
// variable n + i.
struct DualSimplex::Impl {
    SimplexOptions opt;
    int n = 0;
    int m = 0;
    std::vector<std::vector<std::pair<int, double>>> cols;  // structural columns
    std::vector<double> cost, lo, hi, x;
    std::vector<std::uint8_t> artificial;
    std::vector<VarState> state;
    std::vector<int> head;  // head[r] = variable basic in position r
    Eigen::MatrixXd binv;
    int since_refactor = 0;
    long iterations = 0;

    Impl(const LinearProgram& lp, SimplexOptions o) : opt(o), n(lp.num_variables()) {
        if (lp.lower.size() != lp.objective.size() || lp.upper.size() != lp.objective.size())
            throw Error(ErrorKind::LengthMismatch, "bound vectors do not match the objective length");
        cols.assign(n, {});
        cost.resize(n);
        lo = lp.lower;
        hi = lp.upper;
        x.assign(n, 0.0);
        artificial.assign(n, 0);
        state.assign(n, VarState::AtLower);
        for (int j = 0; j < n; ++j) {
            if (lo[j] > hi[j]) throw Error(ErrorKind::Infeasible, "variable " + std::to_string(j) + " has lo > hi");
            cost[j] = -lp.objective[j];
            const double c = cost[j];
            const bool flo = std::isfinite(lo[j]), fhi = std::isfinite(hi[j]);
            if (flo && fhi) {
                state[j] = c >= 0 ? VarState::AtLower : VarState::AtUpper;
            } else if (flo) {
                if (c < -opt.dual_tol) {
                    hi[j] = lo[j] + opt.artificial_bound;
                    artificial[j] = 1;
                    state[j] = VarState::AtUpper;
                } else {
                    state[j] = VarState::AtLower;
                }
            } else if (fhi) {
                if (c > opt.dual_tol) {
                    lo[j] = hi[j] - opt.artificial_bound;
                    artificial[j] = 1;
                    state[j] = VarState::AtLower;
                } else {
                    state[j] = VarState::AtUpper;
                }
            } else if (c > opt.dual_tol) {
                lo[j] = -opt.artificial_bound;
                artificial[j] = 1;
                state[j] = VarState::AtLower;
            } else if (c < -opt.dual_tol) {
                hi[j] = opt.artificial_bound;
                artificial[j] = 1;
                state[j] = VarState::AtUpper;
            } else {
                state[j] = VarState::AtZero;
            }
            x[j] = nonbasic_value(j);
        }
        binv.resize(0, 0);
        for (const Row& row : lp.rows) append_row(row);
    }

    double nonbasic_value(int j) const {
        switch (state[j]) {
            case VarState::AtLower: return lo[j];
            case VarState::AtUpper: return hi[j];
            default: return 0.0;
        }
    }

    int total() const { return n + m; }

    void append_row(const Row& row) {
        for (const auto& [j, v] : row.coeffs)
            if (j < 0 || j >= n) throw Error(ErrorKind::InvalidInput, "row references unknown variable");
        const int i = m;
        double activity = 0.0;
        for (const auto& [j, v] : row.coeffs) {
            if (v == 0.0) continue;
            cols[j].emplace_back(i, v);
            activity += v * x[j];
        }
        double rlo, rhi;
        bounds_of(row, rlo, rhi);
        cost.push_back(0.0);
        lo.push_back(rlo);
        hi.push_back(rhi);
        x.push_back(activity);
        artificial.push_back(0);
        state.push_back(VarState::Basic);

        // [[B^-1, 0], [a_B^T B^-1, -1]]
        Eigen::RowVectorXd ab = Eigen::RowVectorXd::Zero(m);
        for (const auto& [j, v] : row.coeffs)
            if (state[j] == VarState::Basic) ab[position_of(j)] += v;
        Eigen::MatrixXd grown(m + 1, m + 1);
        grown.topLeftCorner(m, m) = binv;
        grown.topRightCorner(m, 1).setZero();
        grown.bottomLeftCorner(1, m) = ab * binv;
        grown(m, m) = -1.0;
        binv = std::move(grown);
        head.push_back(n + i);
        ++m;
    }

    int position_of(int j) const {
        for (int r = 0; r < m; ++r)
            if (head[r] == j) return r;
        throw Error(ErrorKind::Internal, "basic variable has no basis position");
    }

    // Column of variable j into a dense vector.
    void column(int j, Eigen::VectorXd& out) const {
        out.setZero(m);
        if (j < n) {
            for (const auto& [i, v] : cols[j]) out[i] += v;
        } else {
            out[j - n] = -1.0;
        }
    }

    // B = [A11 0; A21 -I] after permuting rows whose logical is nonbasic
    // (R1) ahead of the rest (R2), so only the square block A11 over the
    // basic structurals needs an LU:
    // B^-1 = [A11^-1 0; A21 A11^-1 -I].
    void refactor() {
        if (m > 0) {
            std::vector<int> struct_pos, row_of_r1(m, -1), r1_rows;
            for (int r = 0; r < m; ++r)
                if (head[r] < n) struct_pos.push_back(r);
            for (int i = 0; i < m; ++i)
                if (state[n + i] != VarState::Basic) {
                    row_of_r1[i] = static_cast<int>(r1_rows.size());
                    r1_rows.push_back(i);
                }
            const int k = static_cast<int>(struct_pos.size());
            if (static_cast<int>(r1_rows.size()) != k) throw Error(ErrorKind::Internal, "basis is not square");
            Eigen::MatrixXd a11 = Eigen::MatrixXd::Zero(k, k);
            for (int c = 0; c < k; ++c)
                for (const auto& [i, v] : cols[head[struct_pos[c]]])
                    if (row_of_r1[i] >= 0) a11(row_of_r1[i], c) += v;
            Eigen::MatrixXd inv11;
            if (k > 0) {
                Eigen::PartialPivLU<Eigen::MatrixXd> lu(a11);
                inv11 = lu.inverse();
            }
            binv.setZero(m, m);
            for (int c = 0; c < k; ++c)
                for (int q = 0; q < k; ++q) binv(struct_pos[c], r1_rows[q]) = inv11(c, q);
            for (int r = 0; r < m; ++r) {
                if (head[r] < n) continue;
                const int i = head[r] - n;
                binv(r, i) = -1.0;
                // Row i of A21 A11^-1: Σ_c A[i, struct c] inv11(c, :).
                for (int c = 0; c < k; ++c) {
                    double a = 0.0;
                    for (const auto& [row, v] : cols[head[struct_pos[c]]])
                        if (row == i) a += v;
                    if (a == 0.0) continue;
                    for (int q = 0; q < k; ++q) binv(r, r1_rows[q]) += a * inv11(c, q);
                }
            }
        }
        since_refactor = 0;
        recompute_basic_values();
    }

    void recompute_basic_values() {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < total(); ++j) {
            if (state[j] == VarState::Basic) continue;
            x[j] = nonbasic_value(j);
            if (x[j] == 0.0) continue;
            if (j < n) {
                for (const auto& [i, a] : cols[j]) v[i] += a * x[j];
            } else {
                v[j - n] -= x[j];
            }
        }
        const Eigen::VectorXd xb = -(binv * v);
        for (int r = 0; r < m; ++r) x[head[r]] = xb[r];
    }

    Eigen::VectorXd duals() const {
        Eigen::VectorXd cb(m);
        for (int r = 0; r < m; ++r) cb[r] = cost[head[r]];
        return binv.transpose() * cb;
    }

    double reduced_cost(int j, const Eigen::VectorXd& y) const {
        if (j >= n) return y[j - n];
        double d = cost[j];
        for (const auto& [i, a] : cols[j]) d -= y[i] * a;
        return d;
    }

    double row_alpha(int j, const Eigen::RowVectorXd& rho) const {
        if (j >= n) return -rho[j - n];
        double s = 0.0;
        for (const auto& [i, a] : cols[j]) s += rho[i] * a;
        return s;
    }

    Solution solve() {
        if (since_refactor > 0) refactor();
        else recompute_basic_values();
        const long start = iterations;
        long degenerate = 0;
        const long bland_after = 3L * (m + n) + 10;
        Status status = Status::Optimal;
        Eigen::VectorXd alpha_q;
        for (;;) {
            if (iterations - start >= opt.max_iterations) {
                status = Status::IterationLimit;
                break;
            }
            const bool bland = degenerate > bland_after;
            // Leaving row: largest bound violation (lowest index under Bland).
            int r = -1;
            double worst = 0.0;
            for (int k = 0; k < m; ++k) {
                const int p = head[k];
                double viol = 0.0;
                if (x[p] < lo[p] - opt.primal_tol) viol = lo[p] - x[p];
                else if (x[p] > hi[p] + opt.primal_tol) viol = x[p] - hi[p];
                if (viol <= 0.0) continue;
                if (bland) {
                    if (r < 0 || p < head[r]) r = k;
                } else if (viol > worst) {
                    worst = viol;
                    r = k;
                }
            }
            if (r < 0) {
                // Confirm on a fresh factorization before declaring optimality.
                if (since_refactor == 0) break;
                refactor();
                continue;
            }
            const int p = head[r];
            const bool to_lower = x[p] < lo[p];
            const double delta = to_lower ? x[p] - lo[p] : x[p] - hi[p];

            const Eigen::VectorXd y = duals();
            const Eigen::RowVectorXd rho = binv.row(r);
            // Dual ratio test (two-pass Harris, Bland when stalling).
            struct Cand {
                int j;
                double ratio, mag;
            };
            std::vector<Cand> cands;
            double theta_max = kInf;
            for (int j = 0; j < total(); ++j) {
                if (state[j] == VarState::Basic || lo[j] == hi[j]) continue;
                const double a = row_alpha(j, rho);
                const double at = to_lower ? -a : a;
                bool ok = false;
                switch (state[j]) {
                    case VarState::AtLower: ok = at > opt.pivot_tol; break;
                    case VarState::AtUpper: ok = at < -opt.pivot_tol; break;
                    case VarState::AtZero: ok = std::abs(at) > opt.pivot_tol; break;
                    default: break;
                }
                if (!ok) continue;
                const double d = reduced_cost(j, y);
                const double dd = std::max(0.0, state[j] == VarState::AtZero ? std::abs(d) : (at > 0 ? d : -d));
                const double mag = std::abs(at);
                cands.push_back({j, dd / mag, mag});
                theta_max = std::min(theta_max, (dd + opt.dual_tol) / mag);
            }
            if (cands.empty()) {
                status = Status::Infeasible;
                break;
            }
            int q = -1;
            double step = 0.0;
            if (bland) {
                double best = kInf;
                for (const auto& c : cands) best = std::min(best, c.ratio);
                for (const auto& c : cands)
                    if (c.ratio <= best + 1e-12 && (q < 0 || c.j < q)) q = c.j, step = c.ratio;
            } else {
                double mag = -1.0;
                for (const auto& c : cands)
                    if (c.ratio <= theta_max && c.mag > mag) q = c.j, mag = c.mag, step = c.ratio;
            }
            degenerate = step <= 1e-12 ? degenerate + 1 : 0;

            // Primal update.
            Eigen::VectorXd aq;
            column(q, aq);
            alpha_q = binv * aq;
            const double piv = alpha_q[r];
            if (std::abs(piv) < 1e-12) {
                // Numerically unusable pivot; refresh the factorization and retry.
                if (since_refactor == 0) throw Error(ErrorKind::Internal, "dual simplex: singular pivot");
                refactor();
                continue;
            }
            const double t = delta / piv;
            for (int k = 0; k < m; ++k) x[head[k]] -= t * alpha_q[k];
            x[q] += t;
            state[p] = to_lower ? VarState::AtLower : VarState::AtUpper;
            x[p] = to_lower ? lo[p] : hi[p];
            state[q] = VarState::Basic;
            head[r] = q;

            const Eigen::RowVectorXd prow = binv.row(r) / piv;
            alpha_q[r] = 0.0;
            for (int c = 0; c < m; ++c) {
                const double f = prow[c];
                if (f != 0.0) binv.col(c) -= f * alpha_q;
            }
            binv.row(r) = prow;

            ++iterations;
            if (++since_refactor >= opt.refactor_interval) refactor();
        }
        return extract(status);
    }

    Solution extract(Status status) {
        Solution sol;
        sol.status = status;
        sol.iterations = iterations;
        sol.x.assign(x.begin(), x.begin() + n);
        const Eigen::VectorXd y = duals();
        sol.row_dual.resize(m);
        for (int i = 0; i < m; ++i) sol.row_dual[i] = -y[i];
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj -= cost[j] * x[j];
        sol.objective = obj;
        if (status == Status::Optimal) {
            for (int j = 0; j < n; ++j) {
                if (!artificial[j] || state[j] == VarState::Basic) continue;
                sol.status = Status::Unbounded;
                break;
            }
        }
        return sol;
    }
};

DualSimplex::DualSimplex(const LinearProgram& lp, SimplexOptions options)
    : impl_(std::make_unique<Impl>(lp, options)) {}
DualSimplex::~DualSimplex() = default;
DualSimplex::DualSimplex(DualSimplex&&) noexcept = default;
DualSimplex& DualSimplex::operator=(DualSimplex&&) noexcept = default;

int DualSimplex::add_row(const Row& row) {
    impl_->append_row(row);
    return impl_->m - 1;
}

Solution DualSimplex::solve() { return impl_->solve(); }
int DualSimplex::num_rows() const { return impl_->m; }
long DualSimplex::total_iterations() const { return impl_->iterations; }

Solution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
    DualSimplex simplex(lp, options);
    Solution sol = simplex.solve();
    switch (sol.status) {
        case Status::Optimal: return sol;
        case Status::Infeasible: throw Error(ErrorKind::Infeasible, "linear program is infeasible");
        case Status::Unbounded: throw Error(ErrorKind::Unbounded, "linear program is unbounded");
        case Status::IterationLimit: throw Error(ErrorKind::IterationLimit, "simplex iteration limit reached");
    }
    return sol;
}

Residuals check_solution(const LinearProgram& lp, const Solution& sol) {
    Residuals res;
    const int n = lp.num_variables();
    std::vector<double> reduced(lp.objective);
    for (int j = 0; j < n; ++j) {
        res.primal = std::max(res.primal, lp.lower[j] - sol.x[j]);
        res.primal = std::max(res.primal, sol.x[j] - lp.upper[j]);
    }
    for (int i = 0; i < lp.num_rows(); ++i) {
        const Row& row = lp.rows[i];
        double act = 0.0;
        for (const auto& [j, a] : row.coeffs) {
            act += a * sol.x[j];
            reduced[j] -= sol.row_dual[i] * a;
        }
        const double slack = act - row.rhs;
        const double y = sol.row_dual[i];
        if (row.sense != Sense::GreaterEqual) res.primal = std::max(res.primal, slack);
        if (row.sense != Sense::LessEqual) res.primal = std::max(res.primal, -slack);
        if (row.sense == Sense::LessEqual) res.dual = std::max(res.dual, -y);
        if (row.sense == Sense::GreaterEqual) res.dual = std::max(res.dual, y);
        res.complementarity = std::max(res.complementarity, std::abs(y * slack));
    }
    for (int j = 0; j < n; ++j) {
        const double r = reduced[j];
        if (r > 0) {
            if (!std::isfinite(lp.upper[j])) res.dual = std::max(res.dual, r);
            else res.complementarity = std::max(res.complementarity, r * (lp.upper[j] - sol.x[j]));
        } else if (r < 0) {
            if (!std::isfinite(lp.lower[j])) res.dual = std::max(res.dual, -r);
            else res.complementarity = std::max(res.complementarity, -r * (sol.x[j] - lp.lower[j]));
        }
    }
    return res;
}

namespace {

std::string var_name(const LinearProgram& lp, int j) {
    if (j < static_cast<int>(lp.names.size()) && !lp.names[j].empty()) return lp.names[j];
    return "x" + std::to_string(j);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_terms(std::ostream& out, const LinearProgram& lp, const std::vector<std::pair<int, double>>& terms) {
    bool first = true;
    int on_line = 0;
    for (const auto& [j, a] : terms) {
        if (a == 0.0) continue;
        // LP readers cap line length; continuation lines are allowed anywhere.
        if (++on_line > 8) {
            out << "\n   ";
            on_line = 1;
        }
        out << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + ")) << num(std::abs(a)) << ' ' << var_name(lp, j);
        first = false;
    }
    if (first) out << "0 " << var_name(lp, 0);
}

}  // namespace

void write_lp_file(const LinearProgram& lp, std::ostream& out) {
    out << "\\ ultraplanar restricted LP\nMaximize\n obj: ";
    std::vector<std::pair<int, double>> obj;
    for (int j = 0; j < lp.num_variables(); ++j) obj.emplace_back(j, lp.objective[j]);
    if (lp.num_variables() > 0) write_terms(out, lp, obj);
    out << "\nSubject To\n";
    for (int i = 0; i < lp.num_rows(); ++i) {
        const Row& row = lp.rows[i];
        out << " r" << i << ": ";
        write_terms(out, lp, row.coeffs);
        const char* op = row.sense == Sense::LessEqual ? " <= " : row.sense == Sense::GreaterEqual ? " >= " : " = ";
        out << op << num(row.rhs) << '\n';
    }
    out << "Bounds\n";
    for (int j = 0; j < lp.num_variables(); ++j) {
        const double l = lp.lower[j], u = lp.upper[j];
        const std::string name = var_name(lp, j);
        if (!std::isfinite(l) && !std::isfinite(u)) out << ' ' << name << " free\n";
        else if (l == u) out << ' ' << name << " = " << num(l) << '\n';
        else if (!std::isfinite(u)) out << ' ' << name << " >= " << num(l) << '\n';
        else if (!std::isfinite(l)) out << " -inf <= " << name << " <= " << num(u) << '\n';
        else out << ' ' << num(l) << " <= " << name << " <= " << num(u) << '\n';
    }
    out << "End\n";
}

}  // namespace ultraplanar::lp
