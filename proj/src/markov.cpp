#include "posreal/markov.hpp"

#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"
#include "posreal/theory.hpp"

namespace posreal {

lp::LinearFeasibilityProblem build_feasibility_problem(const Polynomial& a, int N) {
    const int n = static_cast<int>(a.degree());
    if (N < n) throw Error(ErrorCode::DimensionTooSmall, "N is below the system order");
    const int vars = N - n + 1;

    auto p = lp::LinearFeasibilityProblem::with_vars(vars);
    p.ineq_matrix = Eigen::MatrixXd::Zero(N, vars);
    p.ineq_rhs = Eigen::VectorXd::Zero(N);
    // Row i of T_a holds a_(i-j) in column j; W drops row 0.
    for (int i = 1; i <= N; ++i) {
        for (int j = 0; j < vars; ++j) {
            const int d = i - j;
            if (d >= 0 && d <= n) p.ineq_matrix(i - 1, j) = a[static_cast<std::size_t>(d)];
        }
    }
    Eigen::RowVectorXd pin = Eigen::RowVectorXd::Zero(vars);
    pin(0) = 1.0;
    p.add_equality(pin, 1.0);
    return p;
}

std::vector<double> convolution_tail(const Polynomial& a, const Polynomial& q) {
    const auto full = conv(a, q).coeffs();
    return {full.begin() + 1, full.end()};
}

std::optional<FeasibilityCertificate> find_certificate(const TransferFunction& h, int N, const Config& cfg) {
    if (!is_normalized(h, cfg)) throw Error(ErrorCode::NotNormalized, "dominant pole must be 1");
    if (N < h.order()) throw Error(ErrorCode::DimensionTooSmall, "N is below the system order");
    // A second positive pole forces a sign change in a*q for every q, but the
    // LP margin shrinks like p^N and drops below feas_tol for modest N, so
    // that case is decided exactly rather than by the simplex.
    int positive = 0;
    for (const auto& p : h.poles())
        if (std::abs(p.imag()) <= cfg.axis_tol && p.real() > cfg.axis_tol) ++positive;
    if (positive >= 2) return std::nullopt;
    const auto problem = build_feasibility_problem(h.den(), N);
    const auto outcome = lp::solve_feasibility(problem, cfg.feas_tol, cfg.pivot_tol);
    if (!outcome.feasible()) return std::nullopt;

    std::vector<double> q(outcome.point.data(), outcome.point.data() + outcome.point.size());
    q[0] = 1.0;
    return FeasibilityCertificate{Polynomial(std::move(q)), N};
}

StateSpaceRealization realize(const TransferFunction& h, const FeasibilityCertificate& cert, const Config& cfg) {
    const int N = cert.dimension;
    const int n = h.order();
    if (static_cast<int>(cert.q.degree()) != N - n) {
        throw Error(ErrorCode::InvalidCertificate, "certificate degree does not match N - n");
    }
    if (std::abs(cert.q.leading() - 1.0) > cfg.feas_tol) throw Error(ErrorCode::InvalidCertificate, "q is not monic");

    const std::vector<double> tail = convolution_tail(h.den(), cert.q);
    double scale = 1.0;
    for (double v : tail) scale = std::max(scale, std::abs(v));
    const double tol = cfg.feas_tol * scale;

    StateSpaceRealization ss;
    ss.A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 1; i < N; ++i) ss.A(i, i - 1) = 1.0;
    for (int i = 0; i < N; ++i) {
        const double v = tail[static_cast<std::size_t>(N - 1 - i)];
        if (v > tol) throw Error(ErrorCode::InvalidCertificate, "(a*q)_k is positive");
        double entry = -v;
        if (entry < 0.0) {
            ss.max_clamp = std::max(ss.max_clamp, -entry);
            entry = 0.0;
        }
        ss.A(i, N - 1) = entry;
    }
    ss.B = Eigen::VectorXd::Zero(N);
    ss.B(0) = 1.0;
    const MarkovSequence m = markov_parameters(h, N);
    ss.C = Eigen::RowVectorXd(N);
    for (int t = 1; t <= N; ++t) ss.C(t - 1) = m(t);
    return ss;
}

std::vector<double> realization_markov(const StateSpaceRealization& ss, int horizon) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(horizon, 0)));
    Eigen::VectorXd x = ss.B;
    for (int t = 1; t <= horizon; ++t) {
        out.push_back(ss.C.dot(x));
        x = ss.A * x;
    }
    return out;
}

bool verify_realization(const StateSpaceRealization& ss, const TransferFunction& h, int horizon, double tol) {
    if (horizon < 2 * ss.dimension()) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 2N");
    if (ss.A.minCoeff() < -tol || ss.B.minCoeff() < -tol || ss.C.minCoeff() < -tol) return false;
    const std::vector<double> got = realization_markov(ss, horizon);
    const MarkovSequence want = markov_parameters(h, horizon);
    for (int t = 1; t <= horizon; ++t) {
        const double w = want(t);
        if (std::abs(got[static_cast<std::size_t>(t - 1)] - w) > tol * std::max(1.0, std::abs(w))) return false;
    }
    return true;
}

std::optional<MinimalDimension> minimal_markov_dimension(const TransferFunction& h, int N_max, const Config& cfg) {
    const int n = h.order();
    if (N_max < n) throw Error(ErrorCode::InvalidArgument, "N_max is below the system order");

    std::optional<FeasibilityCertificate> hi_cert;
    int hi = 0;
    int lo = n - 1;  // largest dimension known infeasible
    bool from_theorem = false;

    if (auto bound = theory::theorem_dimension(h, cfg); bound && *bound <= N_max) {
        if (auto c = find_certificate(h, *bound, cfg)) {
            hi = *bound;
            hi_cert = std::move(c);
            from_theorem = true;
        }
    }
    if (!hi_cert) {
        for (int N = n;; N = std::min(2 * N, N_max)) {
            if (auto c = find_certificate(h, N, cfg)) {
                hi = N;
                hi_cert = std::move(c);
                break;
            }
            lo = N;
            if (N == N_max) return std::nullopt;
        }
    }

    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (auto c = find_certificate(h, mid, cfg)) {
            hi = mid;
            hi_cert = std::move(c);
        } else {
            lo = mid;
        }
    }
    return MinimalDimension{hi, std::move(*hi_cert), from_theorem};
}

FeasibilityCertificate rescale_certificate(const FeasibilityCertificate& cert, double scale) {
    std::vector<double> q = cert.q.coeffs();
    double factor = 1.0;
    for (double& c : q) {
        c *= factor;
        factor *= scale;
    }
    return {Polynomial(std::move(q)), cert.dimension};
}

std::optional<Synthesis> synthesize(const TransferFunction& h, int N_max, const Config& cfg) {
    const Normalized norm = normalize_dominant_pole(h, cfg);
    auto minimal = minimal_markov_dimension(norm.tf, N_max, cfg);
    if (!minimal) return std::nullopt;
    FeasibilityCertificate cert = rescale_certificate(minimal->cert, norm.scale);
    StateSpaceRealization ss = realize(h, cert, cfg);
    return Synthesis{std::move(*minimal), std::move(cert), std::move(ss), norm.scale};
}

}  // namespace posreal
