#include "posreal/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "posreal/error.hpp"

namespace posreal::lp {

LinearFeasibilityProblem LinearFeasibilityProblem::with_vars(int n) {
    LinearFeasibilityProblem p;
    p.num_vars = n;
    p.ineq_matrix.resize(0, n);
    p.ineq_rhs.resize(0);
    p.eq_matrix.resize(0, n);
    p.eq_rhs.resize(0);
    return p;
}

namespace {

void append_row(Eigen::MatrixXd& m, Eigen::VectorXd& v, const Eigen::RowVectorXd& row, double rhs) {
    const Eigen::Index r = m.rows();
    m.conservativeResize(r + 1, Eigen::NoChange);
    m.row(r) = row;
    v.conservativeResize(r + 1);
    v(r) = rhs;
}

}  // namespace

void LinearFeasibilityProblem::add_inequality(const Eigen::RowVectorXd& row, double rhs) {
    if (row.size() != num_vars) throw Error(ErrorCode::InvalidArgument, "inequality row has wrong width");
    append_row(ineq_matrix, ineq_rhs, row, rhs);
}

void LinearFeasibilityProblem::add_equality(const Eigen::RowVectorXd& row, double rhs) {
    if (row.size() != num_vars) throw Error(ErrorCode::InvalidArgument, "equality row has wrong width");
    append_row(eq_matrix, eq_rhs, row, rhs);
}

void LinearFeasibilityProblem::validate() const {
    if (num_vars <= 0) throw Error(ErrorCode::InvalidArgument, "num_vars must be positive");
    if (ineq_matrix.cols() != num_vars && ineq_matrix.rows() > 0)
        throw Error(ErrorCode::InvalidArgument, "inequality matrix column count differs from num_vars");
    if (eq_matrix.cols() != num_vars && eq_matrix.rows() > 0)
        throw Error(ErrorCode::InvalidArgument, "equality matrix column count differs from num_vars");
    if (ineq_matrix.rows() != ineq_rhs.size())
        throw Error(ErrorCode::InvalidArgument, "inequality rhs length differs from row count");
    if (eq_matrix.rows() != eq_rhs.size())
        throw Error(ErrorCode::InvalidArgument, "equality rhs length differs from row count");
}

double max_violation(const LinearFeasibilityProblem& p, const Eigen::VectorXd& x) {
    double worst = 0.0;
    if (p.ineq_matrix.rows() > 0) {
        const Eigen::VectorXd r = p.ineq_matrix * x - p.ineq_rhs;
        worst = std::max(worst, r.maxCoeff());
    }
    if (p.eq_matrix.rows() > 0) {
        const Eigen::VectorXd r = p.eq_matrix * x - p.eq_rhs;
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

namespace {

// Bland: lowest-index entering column throughout. Dantzig: most negative
// reduced cost, switching to Bland after a long run of degenerate pivots.
enum class Pricing { Bland, Dantzig };

// Row-major dense tableau. Columns: x+ (n), x- (n), slacks (m_ineq),
// artificials (n_art); the last column holds the right-hand side.
class Tableau {
public:
    Tableau(const LinearFeasibilityProblem& p) {
        n_ = p.num_vars;
        m_ineq_ = static_cast<int>(p.ineq_matrix.rows());
        m_eq_ = static_cast<int>(p.eq_matrix.rows());
        rows_ = m_ineq_ + m_eq_;

        std::vector<bool> needs_art(static_cast<std::size_t>(rows_), false);
        for (int i = 0; i < m_ineq_; ++i) needs_art[static_cast<std::size_t>(i)] = p.ineq_rhs(i) < 0.0;
        for (int i = 0; i < m_eq_; ++i) needs_art[static_cast<std::size_t>(m_ineq_ + i)] = true;
        n_art_ = static_cast<int>(std::count(needs_art.begin(), needs_art.end(), true));
        art_begin_ = 2 * n_ + m_ineq_;
        cols_ = art_begin_ + n_art_;
        stride_ = cols_ + 1;

        data_.assign(static_cast<std::size_t>(rows_ + 1) * static_cast<std::size_t>(stride_), 0.0);
        basis_.assign(static_cast<std::size_t>(rows_), -1);

        int art = art_begin_;
        for (int i = 0; i < rows_; ++i) {
            const bool is_ineq = i < m_ineq_;
            const double rhs = is_ineq ? p.ineq_rhs(i) : p.eq_rhs(i - m_ineq_);
            const double sign = rhs < 0.0 ? -1.0 : 1.0;
            row_sign_.push_back(sign);
            for (int j = 0; j < n_; ++j) {
                const double g = is_ineq ? p.ineq_matrix(i, j) : p.eq_matrix(i - m_ineq_, j);
                at(i, j) = sign * g;
                at(i, n_ + j) = -sign * g;
            }
            if (is_ineq) at(i, 2 * n_ + i) = sign;
            at(i, cols_) = sign * rhs;
            if (needs_art[static_cast<std::size_t>(i)]) {
                at(i, art) = 1.0;
                art_rows_.push_back(i);
                basis_[static_cast<std::size_t>(i)] = art++;
            } else {
                basis_[static_cast<std::size_t>(i)] = 2 * n_ + i;
            }
        }

        initial_ = Eigen::MatrixXd(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j <= cols_; ++j) initial_(i, j) = at(i, j);
        update_costs();
    }

    // Runs the simplex to optimality; returns the pivot count. The tableau
    // is rebuilt from the initial one every kRefresh pivots and before
    // optimality is accepted, so rounding drift cannot accumulate. A column
    // whose negative reduced cost survives a rebuild without any usable
    // pivot row is noise (phase 1 is bounded below) and is skipped.
    int run(double pivot_tol, int cap, Pricing pricing) {
        constexpr int kRefresh = 25;
        const int kDegenerate = pricing == Pricing::Bland ? 0 : rows_ + cols_;
        int iterations = 0;
        int degenerate_run = 0;
        bool fresh = false;
        std::vector<bool> blocked(static_cast<std::size_t>(cols_), false);
        while (true) {
            int enter = -1;
            const bool bland = degenerate_run >= kDegenerate;
            for (int j = 0; j < cols_; ++j) {
                if (blocked[static_cast<std::size_t>(j)] || obj(j) >= -pivot_tol || twin_is_basic(j)) continue;
                if (enter < 0 || (!bland && obj(j) < obj(enter))) enter = j;
                if (bland) break;
            }
            if (enter < 0) {
                if (fresh) return iterations;
                refresh();
                fresh = true;
                std::fill(blocked.begin(), blocked.end(), false);
                continue;
            }

            // Minimum ratio first; among (near-)ties prefer the largest pivot
            // element so degenerate vertices do not produce ill-conditioned
            // bases, then the lowest basic index.
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows_; ++i) {
                const double a = at(i, enter);
                if (a > pivot_tol) best = std::min(best, std::max(0.0, at(i, cols_)) / a);
            }
            int leave = -1;
            const double slack = 1e-12 * (1.0 + std::abs(best));
            for (int i = 0; i < rows_; ++i) {
                const double a = at(i, enter);
                if (a <= pivot_tol || std::max(0.0, at(i, cols_)) / a > best + slack) continue;
                if (leave < 0) {
                    leave = i;
                    continue;
                }
                const double incumbent = at(leave, enter);
                if (a > incumbent * (1.0 + 1e-9) ||
                    (a >= incumbent * (1.0 - 1e-9) && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
                    leave = i;
                }
            }
            if (leave < 0) {
                if (fresh) {
                    blocked[static_cast<std::size_t>(enter)] = true;
                } else {
                    refresh();
                    fresh = true;
                }
                continue;
            }

            degenerate_run = at(leave, cols_) > pivot_tol ? 0 : degenerate_run + 1;
            pivot(leave, enter);
            fresh = false;
            if (++iterations > cap) throw Error(ErrorCode::NumericalBreakdown, "simplex iteration cap exceeded");
            if (iterations % kRefresh == 0) {
                refresh();
                fresh = true;
                std::fill(blocked.begin(), blocked.end(), false);
            }
        }
    }

    double phase1_objective() const {
        double s = 0.0;
        for (int i = 0; i < rows_; ++i)
            if (basis_[static_cast<std::size_t>(i)] >= art_begin_) s += std::max(0.0, at(i, cols_));
        return s;
    }

    Eigen::VectorXd point() const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < rows_; ++i) {
            const int b = basis_[static_cast<std::size_t>(i)];
            if (b < n_) x(b) += at(i, cols_);
            else if (b < 2 * n_) x(b - n_) -= at(i, cols_);
        }
        return x;
    }

    // Re-solves B x_B = b from the original data for the current basis.
    Eigen::VectorXd refined_point() const {
        const Eigen::Matrix<long double, Eigen::Dynamic, 1> xb = basic_solution().col(cols_);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int k = 0; k < rows_; ++k) {
            const int b = basis_[static_cast<std::size_t>(k)];
            if (b < n_) x(b) += static_cast<double>(xb(k));
            else if (b < 2 * n_) x(b - n_) -= static_cast<double>(xb(k));
        }
        return x;
    }

private:
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(stride_) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(stride_) + static_cast<std::size_t>(j)]; }
    double& obj(int j) { return at(rows_, j); }
    double obj(int j) const { return at(rows_, j); }

    // x+ and x- of one free variable are negatives of each other, so the
    // twin of a basic split column is exactly -e_r in exact arithmetic and
    // can never enter; rounding must not make it look eligible.
    bool twin_is_basic(int j) const {
        if (j >= 2 * n_) return false;
        const int twin = j < n_ ? j + n_ : j - n_;
        return std::find(basis_.begin(), basis_.end(), twin) != basis_.end();
    }

    // Phase-1 reduced costs: 1 on artificials minus the artificial rows.
    void update_costs() {
        for (int j = 0; j <= cols_; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows_; ++i)
                if (basis_[static_cast<std::size_t>(i)] >= art_begin_) s += at(i, j);
            obj(j) = (j >= art_begin_ && j < cols_ ? 1.0 : 0.0) - s;
        }
    }

    using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

    // B^-1 [M | b] for the current basis, from the initial tableau in
    // extended precision with one step of iterative refinement; empty if
    // the basis is numerically singular.
    LongMatrix basic_solution() const {
        const LongMatrix m = initial_.cast<long double>();
        LongMatrix basis_matrix(rows_, rows_);
        for (int k = 0; k < rows_; ++k) basis_matrix.col(k) = m.col(basis_[static_cast<std::size_t>(k)]);
        const Eigen::FullPivLU<LongMatrix> lu(basis_matrix);
        if (!lu.isInvertible()) return LongMatrix();
        LongMatrix t = lu.solve(m);
        t += lu.solve(m - basis_matrix * t);
        return t;
    }

    // Rebuilds the tableau as B^-1 [M | b] for the current basis.
    void refresh() {
        const LongMatrix t = basic_solution();
        if (t.size() == 0) return;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j <= cols_; ++j) at(i, j) = static_cast<double>(t(i, j));
            for (int k = 0; k < rows_; ++k) at(i, basis_[static_cast<std::size_t>(k)]) = i == k ? 1.0 : 0.0;
        }
        update_costs();
    }

    void pivot(int r, int c) {
        const double inv = 1.0 / at(r, c);
        for (int j = 0; j <= cols_; ++j) at(r, j) *= inv;
        at(r, c) = 1.0;
        for (int i = 0; i <= rows_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (int j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis_[static_cast<std::size_t>(r)] = c;
    }

    int n_ = 0, m_ineq_ = 0, m_eq_ = 0, rows_ = 0, n_art_ = 0, art_begin_ = 0, cols_ = 0, stride_ = 0;
    std::vector<double> data_;
    Eigen::MatrixXd initial_;
    std::vector<int> basis_;
    std::vector<int> art_rows_;     // artificial column offset -> row
    std::vector<double> row_sign_;  // +-1 applied to make rhs non-negative
};

}  // namespace

namespace {

LPOutcome attempt(const LinearFeasibilityProblem& p, double feas_tol, double pivot_tol, Pricing pricing) {
    const int constraints = static_cast<int>(p.ineq_matrix.rows() + p.eq_matrix.rows());
    LPOutcome out;
    Tableau t(p);
    out.iterations = t.run(pivot_tol, 50 * (p.num_vars + constraints), pricing);

    const double objective = t.phase1_objective();
    if (objective > feas_tol) {
        out.status = Status::Infeasible;
        out.max_violation = objective;
        return out;
    }

    Eigen::VectorXd x = t.point();
    double viol = max_violation(p, x);
    if (viol > feas_tol) {
        x = t.refined_point();
        viol = max_violation(p, x);
        if (viol > feas_tol) throw Error(ErrorCode::NumericalBreakdown, "phase-1 optimum does not reproduce a feasible point");
    }
    out.status = Status::Feasible;
    out.point = std::move(x);
    out.max_violation = viol;
    return out;
}

}  // namespace

LPOutcome solve_feasibility(const LinearFeasibilityProblem& p, double feas_tol, double pivot_tol) {
    p.validate();
    if (p.ineq_matrix.rows() + p.eq_matrix.rows() == 0) {
        LPOutcome out;
        out.status = Status::Feasible;
        out.point = Eigen::VectorXd::Zero(p.num_vars);
        return out;
    }
    // Bland's path can run through ill-conditioned degenerate bases; when its
    // answer does not survive verification, re-solve once with Dantzig pricing.
    try {
        return attempt(p, feas_tol, pivot_tol, Pricing::Bland);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NumericalBreakdown) throw;
        try {
            return attempt(p, feas_tol, pivot_tol, Pricing::Dantzig);
        } catch (const Error&) {
            throw e;
        }
    }
}

}  // namespace posreal::lp
