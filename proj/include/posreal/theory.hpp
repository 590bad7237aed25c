#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "posreal/config.hpp"
#include "posreal/error.hpp"
#include "posreal/poly.hpp"
#include "posreal/tf.hpp"

namespace posreal::theory {

/// Pole r exp(i 2 pi l / m).
struct PoleAngle {
    double r = 1.0;
    std::int64_t l = 0;
    std::int64_t m = 1;
};

/// Poles with non-negative imaginary part other than those at the origin,
/// sorted by descending magnitude; entries[0] is always (1, 0, 1).
/// Poles at the origin carry no angle and are only counted.
struct RationalPoleAngles {
    std::vector<PoleAngle> entries;
    int origin_poles = 0;

    std::vector<std::int64_t> denominators() const;
};

struct TheoremCertificate {
    std::vector<std::int64_t> mu;  // mu_1 = 1, mu_k = m_k mu_(k-1)
    Polynomial omega;               // Omega_(n_p), degree mu_(n_p) - 1
    Polynomial q;                   // omega / a_hat
    int N = 0;                      // mu_(n_p) plus the number of poles at the origin
};

struct Fraction {
    std::int64_t num;
    std::int64_t den;
};

/// First continued-fraction convergent p/q of x with q <= max_den and
/// |x - p/q| <= tol. Convergents with p = 0 are skipped when `positive` is set.
std::optional<Fraction> rational_approximation(double x, std::int64_t max_den, double tol, bool positive = false);

/// Angles 2 pi l/m for every pole of a normalized system in the one-positive-pole
/// set; nullopt if the system has another positive pole or some angle has no
/// match with m <= max_denominator within cfg.angle_tol.
std::optional<RationalPoleAngles> detect_rational_angles(const TransferFunction& h, std::int64_t max_denominator,
                                                        const Config& cfg = {});

/// m_k does not divide m_1 ... m_(k-1) for every k >= 2 (exact integers).
bool check_divisibility_condition(const RationalPoleAngles& angles);
bool check_divisibility_condition(const std::vector<std::int64_t>& m);

/// mu_1 = 1, mu_k = m_k mu_(k-1). Throws Overflow past int64 or the
/// construction size limit.
std::vector<std::int64_t> mu_sequence(const std::vector<std::int64_t>& m);

/// Largest mu the certificate construction will materialize.
inline constexpr std::int64_t kMaxCertificateDimension = 1 << 24;

/// Coefficients of Omega_(n_p)(z) = prod_(j=2)^(n_p) P_j(z^(mu_(j-1))) in
/// descending powers, built as omega^(k) = omega^(k-1) * rho^(k). Scalar may be
/// an exact rational type. m[0] and r[0] belong to the pole at 1 and are unused.
template <class Scalar>
std::vector<Scalar> omega_coefficients(const std::vector<std::int64_t>& m, const std::vector<Scalar>& r) {
    if (m.size() != r.size()) throw Error(ErrorCode::InvalidArgument, "m and r must have equal length");
    const std::vector<std::int64_t> mu = mu_sequence(m);
    std::vector<Scalar> omega{Scalar(1)};
    for (std::size_t k = 1; k < m.size(); ++k) {
        const auto step = static_cast<std::size_t>(mu[k - 1]);
        const auto terms = static_cast<std::size_t>(m[k]);
        // rho^(k)_t = r_k^t at t = s mu_(k-1), s = 0..m_k - 1.
        Scalar base = Scalar(1);
        for (std::size_t i = 0; i < step; ++i) base *= r[k];
        std::vector<Scalar> next(omega.size() + step * (terms - 1), Scalar(0));
        Scalar weight = Scalar(1);
        for (std::size_t s = 0; s < terms; ++s) {
            const std::size_t offset = s * step;
            for (std::size_t t = 0; t < omega.size(); ++t) next[offset + t] += weight * omega[t];
            weight *= base;
        }
        omega = std::move(next);
    }
    return omega;
}

/// Explicit certificate for systems whose pole angles are rational and satisfy
/// the divisibility condition: q = Omega / a_hat with a_hat = a / (z - 1).
/// Throws ConditionViolated or InexactDivision.
TheoremCertificate theorem_certificate(const RationalPoleAngles& angles, const Polynomial& a_hat,
                                       const Config& cfg = {});

/// Dimension the construction above would produce for `h`, without building it.
std::optional<int> theorem_dimension(const TransferFunction& h, const Config& cfg = {});

/// Nearby rational angles that satisfy the divisibility condition. Each
/// angle is first approximated within epsilon/2; a denominator that divides
/// the running product is replaced by m' l' gamma + 1 (numerator l'^2 gamma)
/// with the smallest gamma meeting both the divisibility bound and
/// |2 pi l''/m'' - theta| <= epsilon.
/// theta[0] must be 0 and magnitudes must be non-increasing.
/// Throws Unreachable when some later theta is 0.
RationalPoleAngles perturb_to_rational(const std::vector<double>& theta, const std::vector<double>& magnitudes,
                                       double epsilon);

struct Lemma1Result {
    Polynomial ahat_q;
    bool is_nonneg_decreasing;
};

/// a_hat * q with a_hat = a / (z - 1), and whether 1 = c_0 >= c_1 >= ... >= c_last >= 0
/// within tol. Throws NoUnitRoot when a(1) != 0.
Lemma1Result lemma1_transform(const Polynomial& a, const Polynomial& q, double tol = 1e-9);

/// Reduced fractions l/m in [0, 1) with m <= N - 1: the unit-circle points
/// exp(i 2 pi l/m) reachable by eigenvalues of (N-1)-dimensional non-negative
/// matrices with unit spectral radius.
std::set<std::pair<std::int64_t, std::int64_t>> karpelevic_vertices(int N);

/// True iff some unit-modulus pole has a rational angle 2 pi l/m with
/// m > N - 1, which puts it outside the order N - 1 region and makes a
/// dimension-N positive realization minimal. False means "not certified".
bool certify_exact_minimality(const TransferFunction& h, int N, const Config& cfg = {});

}  // namespace posreal::theory
