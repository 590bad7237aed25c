#include "posreal/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace posreal::theory {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "integer product overflows int64");
    return out;
}

double unit_angle(const Complex& z) {
    double a = std::arg(z);
    if (a < 0.0) a += kTwoPi;
    return a / kTwoPi;
}

}  // namespace

std::vector<std::int64_t> RationalPoleAngles::denominators() const {
    std::vector<std::int64_t> m;
    m.reserve(entries.size());
    for (const auto& e : entries) m.push_back(e.m);
    return m;
}

std::optional<Fraction> rational_approximation(double x, std::int64_t max_den, double tol, bool positive) {
    const double a0 = std::floor(x);
    std::int64_t p_prev = 1, q_prev = 0;
    auto p = static_cast<std::int64_t>(a0);
    std::int64_t q = 1;
    double frac = x - a0;
    for (int iter = 0; iter < 64; ++iter) {
        if (q > max_den) return std::nullopt;
        const bool usable = !positive || p > 0;
        if (usable && std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) return Fraction{p, q};
        if (frac <= 0.0) return std::nullopt;
        const double y = 1.0 / frac;
        const double a = std::floor(y);
        if (a > 9.0e15) return std::nullopt;
        frac = y - a;
        const auto ai = static_cast<std::int64_t>(a);
        std::int64_t p_next = 0, q_next = 0;
        if (__builtin_mul_overflow(ai, p, &p_next) || __builtin_add_overflow(p_next, p_prev, &p_next) ||
            __builtin_mul_overflow(ai, q, &q_next) || __builtin_add_overflow(q_next, q_prev, &q_next)) {
            return std::nullopt;
        }
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    return std::nullopt;
}

std::optional<RationalPoleAngles> detect_rational_angles(const TransferFunction& h, std::int64_t max_denominator,
                                                        const Config& cfg) {
    if (!is_normalized(h, cfg)) throw Error(ErrorCode::NotNormalized, "dominant pole must be 1");

    RationalPoleAngles out;
    out.entries.push_back({1.0, 0, 1});
    bool dominant_seen = false;
    std::vector<PoleAngle> rest;
    for (const auto& p : h.poles()) {
        if (p.imag() < 0.0) continue;
        const double r = std::abs(p);
        if (r <= cfg.axis_tol) {
            ++out.origin_poles;
            continue;
        }
        if (p.imag() == 0.0 && p.real() > 0.0) {
            if (dominant_seen) return std::nullopt;  // second positive pole
            dominant_seen = true;
            continue;
        }
        const double theta = std::arg(p);
        const auto f = rational_approximation(theta / kTwoPi, max_denominator, cfg.angle_tol / kTwoPi, true);
        if (!f) return std::nullopt;
        rest.push_back({r, f->num, f->den});
    }
    // Descending magnitude; equal magnitudes by ascending denominator, which
    // is the order most likely to satisfy the divisibility condition.
    std::stable_sort(rest.begin(), rest.end(), [](const PoleAngle& a, const PoleAngle& b) {
        if (std::abs(a.r - b.r) > 1e-12) return a.r > b.r;
        return a.m != b.m ? a.m < b.m : a.l < b.l;
    });
    out.entries.insert(out.entries.end(), rest.begin(), rest.end());
    return out;
}

bool check_divisibility_condition(const std::vector<std::int64_t>& m) {
    // m_k | prod iff m_k | (prod mod m_k); track prod modulo each m_k instead
    // of the full product, so no overflow is possible.
    for (std::size_t k = 1; k < m.size(); ++k) {
        if (m[k] < 1) throw Error(ErrorCode::InvalidArgument, "denominators must be positive");
        std::int64_t residue = 1 % m[k];
        for (std::size_t j = 0; j < k; ++j) residue = static_cast<std::int64_t>((static_cast<__int128>(residue) * (m[j] % m[k])) % m[k]);
        if (residue == 0) return false;
    }
    return true;
}

bool check_divisibility_condition(const RationalPoleAngles& angles) {
    return check_divisibility_condition(angles.denominators());
}

std::vector<std::int64_t> mu_sequence(const std::vector<std::int64_t>& m) {
    std::vector<std::int64_t> mu;
    mu.reserve(m.size());
    std::int64_t acc = 1;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (k > 0) acc = checked_mul(acc, m[k]);
        mu.push_back(acc);
    }
    if (acc > kMaxCertificateDimension) throw Error(ErrorCode::Overflow, "certificate dimension exceeds the construction limit");
    return mu;
}

TheoremCertificate theorem_certificate(const RationalPoleAngles& angles, const Polynomial& a_hat, const Config& cfg) {
    if (angles.entries.empty() || angles.entries[0].m != 1 || angles.entries[0].l != 0) {
        throw Error(ErrorCode::InvalidArgument, "first entry must be the pole at 1");
    }
    for (std::size_t k = 1; k < angles.entries.size(); ++k) {
        const auto& e = angles.entries[k];
        if (e.l < 1 || e.m <= e.l || std::gcd(e.l, e.m) != 1) {
            throw Error(ErrorCode::InvalidArgument, "angles need coprime 0 < l < m");
        }
        if (e.r > angles.entries[k - 1].r + 1e-12 || e.r < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "magnitudes must be non-increasing in [0, 1]");
        }
    }
    if (!check_divisibility_condition(angles)) {
        throw Error(ErrorCode::ConditionViolated, "some m_k divides the product of the previous denominators");
    }

    const std::vector<std::int64_t> m = angles.denominators();
    std::vector<double> r;
    for (const auto& e : angles.entries) r.push_back(e.r);

    TheoremCertificate out;
    out.mu = mu_sequence(m);
    out.omega = Polynomial(omega_coefficients<double>(m, r));

    // Roots of a_hat at the origin are absorbed as trailing zeros of a_hat * q.
    // Division by (z - 1) leaves rounding noise where they should be exact zeros.
    std::vector<double> ah = a_hat.coeffs();
    const double zero_tol = cfg.rem_tol * std::max(1.0, a_hat.max_abs());
    for (int k = 0; k < angles.origin_poles; ++k) {
        if (ah.size() <= 1 || std::abs(ah.back()) > zero_tol) {
            throw Error(ErrorCode::InvalidArgument, "a_hat origin roots disagree with the angle list");
        }
        ah.pop_back();
    }
    const Polynomial core(std::move(ah));
    if (core.degree() > out.omega.degree()) throw Error(ErrorCode::InexactDivision, "a_hat has higher degree than Omega");
    Division d = divide(out.omega, core, cfg.rem_tol);
    if (!d.exact) throw Error(ErrorCode::InexactDivision, "Omega is not divisible by a_hat");
    out.q = std::move(d.quotient);
    out.N = static_cast<int>(out.q.degree() + a_hat.degree() + 1);
    return out;
}

std::optional<int> theorem_dimension(const TransferFunction& h, const Config& cfg) {
    if (!is_normalized(h, cfg)) return std::nullopt;
    const auto angles = detect_rational_angles(h, cfg.max_denominator, cfg);
    if (!angles || !check_divisibility_condition(*angles)) return std::nullopt;
    try {
        const auto mu = mu_sequence(angles->denominators());
        return static_cast<int>(mu.back()) + angles->origin_poles;
    } catch (const Error&) {
        return std::nullopt;
    }
}

RationalPoleAngles perturb_to_rational(const std::vector<double>& theta, const std::vector<double>& magnitudes,
                                       double epsilon) {
    if (theta.empty() || theta.size() != magnitudes.size()) {
        throw Error(ErrorCode::InvalidArgument, "theta and magnitudes must be non-empty and equally long");
    }
    if (theta[0] != 0.0) throw Error(ErrorCode::InvalidArgument, "theta_1 must be 0");
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");

    RationalPoleAngles out;
    out.entries.push_back({magnitudes[0], 0, 1});
    std::int64_t mu = 1;
    for (std::size_t k = 1; k < theta.size(); ++k) {
        const double th = theta[k];
        if (th == 0.0) throw Error(ErrorCode::Unreachable, "a second pole on the positive real axis cannot be perturbed");
        if (th < 0.0 || th > std::numbers::pi) throw Error(ErrorCode::InvalidArgument, "theta must lie in (0, pi]");
        if (magnitudes[k] > magnitudes[k - 1]) throw Error(ErrorCode::InvalidArgument, "magnitudes must be non-increasing");

        const auto f = rational_approximation(th / kTwoPi, std::int64_t{1} << 40, epsilon / (2.0 * kTwoPi), true);
        if (!f) throw Error(ErrorCode::Overflow, "no rational approximation within int64 range");
        const std::int64_t l1 = f->num;
        const std::int64_t m1 = f->den;

        PoleAngle e{magnitudes[k], l1, m1};
        if (mu % m1 == 0) {
            const double eps1 = std::abs(kTwoPi * static_cast<double>(l1) / static_cast<double>(m1) - th);
            const std::int64_t ml = checked_mul(m1, l1);
            // gamma > (mu - 1) / (m' l')
            std::int64_t gamma = (mu - 1) / ml + 1;
            // |eps''| = 2 pi l' / (m' m'') <= epsilon - |eps'|
            const double budget = epsilon - eps1;
            const double needed_m = kTwoPi * static_cast<double>(l1) / (static_cast<double>(m1) * budget);
            const double gamma_err = std::ceil((needed_m - 1.0) / static_cast<double>(ml));
            if (gamma_err > 9.0e15) throw Error(ErrorCode::Overflow, "gamma too large");
            gamma = std::max(gamma, static_cast<std::int64_t>(std::max(gamma_err, 1.0)));
            for (;; ++gamma) {
                e.l = checked_mul(checked_mul(l1, l1), gamma);
                e.m = checked_mul(ml, gamma) + 1;
                const double err = std::abs(kTwoPi * static_cast<double>(e.l) / static_cast<double>(e.m) - th);
                if (err <= epsilon) break;
            }
        }
        mu = checked_mul(mu, e.m);
        out.entries.push_back(e);
    }
    return out;
}

Lemma1Result lemma1_transform(const Polynomial& a, const Polynomial& q, double tol) {
    if (std::abs(a(1.0)) > 1e-9 * std::max(1.0, a.max_abs())) throw Error(ErrorCode::NoUnitRoot, "a(1) is not zero");
    const Division d = divide(a, Polynomial{1.0, -1.0}, 1.0);
    Polynomial c = conv(d.quotient, q);
    const auto& v = c.coeffs();
    bool ok = std::abs(v[0] - 1.0) <= tol && v.back() >= -tol;
    for (std::size_t k = 1; ok && k < v.size(); ++k) ok = v[k] <= v[k - 1] + tol;
    return {std::move(c), ok};
}

std::set<std::pair<std::int64_t, std::int64_t>> karpelevic_vertices(int N) {
    if (N < 2) throw Error(ErrorCode::InvalidArgument, "N must be >= 2");
    std::set<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t m = 1; m <= N - 1; ++m)
        for (std::int64_t l = 0; l < m; ++l)
            if (std::gcd(l, m) == 1) out.emplace(l, m);
    return out;
}

bool certify_exact_minimality(const TransferFunction& h, int N, const Config& cfg) {
    if (N < 2) return false;
    const std::int64_t max_den = std::max<std::int64_t>(cfg.max_denominator, N);
    for (const auto& p : h.poles()) {
        if (std::abs(std::abs(p) - 1.0) > cfg.axis_tol) continue;
        const auto f = rational_approximation(unit_angle(p), max_den, cfg.angle_tol / kTwoPi);
        if (!f) continue;
        // A reduced denominator of 1 means the angle is 0 (mod 2 pi).
        if (f->den > N - 1) return true;
    }
    return false;
}

}  // namespace posreal::theory
