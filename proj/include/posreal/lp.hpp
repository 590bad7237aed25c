#pragma once

#include <Eigen/Dense>

namespace posreal::lp {

/// find x  s.t.  G x <= h,  E x = f,  x free.
struct LinearFeasibilityProblem {
    Eigen::MatrixXd ineq_matrix;
    Eigen::VectorXd ineq_rhs;
    Eigen::MatrixXd eq_matrix;
    Eigen::VectorXd eq_rhs;
    int num_vars = 0;

    /// Empty constraint blocks sized for `n` variables.
    static LinearFeasibilityProblem with_vars(int n);

    void add_inequality(const Eigen::RowVectorXd& row, double rhs);
    void add_equality(const Eigen::RowVectorXd& row, double rhs);

    /// Throws InvalidArgument when block shapes disagree with num_vars.
    void validate() const;
};

enum class Status { Feasible, Infeasible };

struct LPOutcome {
    Status status = Status::Infeasible;
    Eigen::VectorXd point;       // empty unless Feasible
    double max_violation = 0.0;  // of `point` when Feasible, phase-1 optimum otherwise
    int iterations = 0;

    bool feasible() const { return status == Status::Feasible; }
};

/// Largest violation of `x` over all constraints: max(Gx - h) and max|Ex - f|,
/// floored at zero.
double max_violation(const LinearFeasibilityProblem& p, const Eigen::VectorXd& x);

/// Phase-1 dense tableau simplex with Bland's rule. Free variables are split
/// into non-negative pairs; rows with negative right-hand side and equality
/// rows get artificial variables. Feasible iff the phase-1 optimum is within
/// feas_tol and the recovered point violates nothing by more than feas_tol.
/// If Bland's answer fails that check (ill-conditioned degenerate path), the
/// problem is solved once more with Dantzig pricing, which falls back to
/// Bland's rule on long degenerate runs. Throws NumericalBreakdown past
/// 50 * (num_vars + num_constraints) pivots per attempt, or when neither
/// attempt yields a verified answer.
LPOutcome solve_feasibility(const LinearFeasibilityProblem& p, double feas_tol = 1e-9, double pivot_tol = 1e-10);

}  // namespace posreal::lp
