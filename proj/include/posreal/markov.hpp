#pragma once

#include <Eigen/Dense>
#include <optional>

#include "posreal/config.hpp"
#include "posreal/lp.hpp"
#include "posreal/poly.hpp"
#include "posreal/tf.hpp"

namespace posreal {

/// Monic multiplier Q(z) of degree N - n whose product with the denominator
/// has (a*q)_k <= feas_tol for k = 1..N.
struct FeasibilityCertificate {
    Polynomial q;
    int dimension = 0;
};

/// Dense (A, B, C) with D = 0.
struct StateSpaceRealization {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double max_clamp = 0.0;  // largest |negative| entry of the last column clamped to zero

    int dimension() const noexcept { return static_cast<int>(A.rows()); }
};

/// Unknowns q in R^(N-n+1); rows (W T_a q)_k = sum_j a_(k-j) q_j <= 0 for
/// k = 1..N, where the convolution row k = 0 is dropped; and q_0 = 1.
/// Throws DimensionTooSmall if N < deg(a).
lp::LinearFeasibilityProblem build_feasibility_problem(const Polynomial& a, int N);

/// (a*q)_1..(a*q)_N: the convolution without its leading term.
std::vector<double> convolution_tail(const Polynomial& a, const Polynomial& q);

/// LP at dimension N for a normalized system; nullopt when infeasible.
std::optional<FeasibilityCertificate> find_certificate(const TransferFunction& h, int N, const Config& cfg = {});

/// Markov realization: A has ones on the subdiagonal and -(a*q)_(N-i) in
/// row i of its last column, B = e_1, C = [h_1 .. h_N]. Entries of the last
/// column in [-tol, 0) are clamped to 0, where tol = feas_tol * max(1, max|a*q|);
/// anything more negative throws InvalidCertificate.
StateSpaceRealization realize(const TransferFunction& h, const FeasibilityCertificate& cert, const Config& cfg = {});

/// C A^(t-1) B against the Markov recursion for t <= horizon (relative tol)
/// plus entrywise non-negativity of A, B, C within tol.
bool verify_realization(const StateSpaceRealization& ss, const TransferFunction& h, int horizon, double tol);

/// C A^(t-1) B for t = 1..horizon.
std::vector<double> realization_markov(const StateSpaceRealization& ss, int horizon);

struct MinimalDimension {
    int N;
    FeasibilityCertificate cert;
    bool bracket_from_theorem = false;  // upper bracket came from the rational-angle construction
};

/// Smallest N in [n, N_max] with a feasible LP. Feasibility is monotone in N,
/// so an upper bracket is located first (rational-angle construction when it
/// applies, then n, 2n, 4n, ... capped at N_max) and then bisected.
std::optional<MinimalDimension> minimal_markov_dimension(const TransferFunction& h, int N_max, const Config& cfg = {});

/// Maps a certificate for the normalized denominator a(z/s)/s^n back to the
/// original denominator: q_j -> q_j s^j.
FeasibilityCertificate rescale_certificate(const FeasibilityCertificate& cert, double scale);

struct Synthesis {
    MinimalDimension minimal;
    FeasibilityCertificate cert;  // for the original (un-normalized) denominator
    StateSpaceRealization realization;
    double scale = 1.0;
};

/// normalize -> minimal dimension -> rescale -> realize.
std::optional<Synthesis> synthesize(const TransferFunction& h, int N_max, const Config& cfg = {});

}  // namespace posreal
