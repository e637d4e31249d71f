#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ultraplanar::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// max c·x  s.t.  rows,  lower <= x <= upper.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;
    std::vector<std::string> names;  // optional, used by write_lp_file

    int num_variables() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_variable(double cost, double lo, double hi, std::string name = {});
    int add_row(Row row);
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexOptions {
    double primal_tol = 1e-9;
    double dual_tol = 1e-9;
    double pivot_tol = 1e-9;
    int refactor_interval = 64;
    long max_iterations = 1'000'000;
    // Artificial box used for variables that would otherwise start dual
    // infeasible at an infinite bound; a solution resting on it is reported
    // as unbounded.
    double artificial_bound = 1e9;
};

struct Solution {
    Status status = Status::Optimal;
    std::vector<double> x;
    // d(objective)/d(rhs) for each row; >= 0 on binding <= rows of a maximization.
    std::vector<double> row_dual;
    double objective = 0.0;
    long iterations = 0;
};

/// Bounded-variable dual simplex with a dense, periodically refactored
/// basis inverse. Rows can be appended between solves; the previous basis
/// stays dual feasible, so re-optimization continues from it.
class DualSimplex {
public:
    explicit DualSimplex(const LinearProgram& lp, SimplexOptions options = {});
    ~DualSimplex();
    DualSimplex(DualSimplex&&) noexcept;
    DualSimplex& operator=(DualSimplex&&) noexcept;

    int add_row(const Row& row);
    Solution solve();

    int num_rows() const;
    long total_iterations() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot solve. Throws Error{Infeasible | Unbounded | IterationLimit}
/// when no optimum is found.
Solution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

// Max primal bound/row violation and max complementary-slackness product of
// a solution, for certification in tests.
struct Residuals {
    double primal = 0.0;
    double dual = 0.0;
    double complementarity = 0.0;
};
Residuals check_solution(const LinearProgram& lp, const Solution& sol);

/// CPLEX-LP text format, one constraint or bound per line.
void write_lp_file(const LinearProgram& lp, std::ostream& out);

}  // namespace ultraplanar::lp
