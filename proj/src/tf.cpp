#include "posreal/tf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "posreal/error.hpp"

namespace posreal {

namespace {

double angle_0_2pi(const Complex& z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

void snap_to_axis(std::vector<Complex>& v, double axis_tol) {
    for (auto& z : v)
        if (std::abs(z.imag()) <= axis_tol) z = Complex(z.real(), 0.0);
}

void sort_poles(std::vector<Complex>& p) {
    std::stable_sort(p.begin(), p.end(), [](const Complex& l, const Complex& r) { return std::abs(l) > std::abs(r); });
    // Moduli that agree to rounding are ties; order those by angle.
    std::size_t i = 0;
    while (i < p.size()) {
        const double base = std::abs(p[i]);
        std::size_t j = i + 1;
        while (j < p.size() && base - std::abs(p[j]) <= 1e-9 * std::max(1.0, base)) ++j;
        std::stable_sort(p.begin() + static_cast<std::ptrdiff_t>(i), p.begin() + static_cast<std::ptrdiff_t>(j),
                         [](const Complex& l, const Complex& r) { return angle_0_2pi(l) < angle_0_2pi(r); });
        i = j;
    }
}

std::vector<double> pad_left(const std::vector<double>& b, std::size_t n) {
    std::vector<double> out(n, 0.0);
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(n - b.size()));
    return out;
}

}  // namespace

TransferFunction TransferFunction::from_coefficients(std::vector<double> b, std::vector<double> a, const Config& cfg) {
    if (a.size() < 2) throw Error(ErrorCode::NotStrictlyProper, "denominator must have degree >= 1");
    if (std::abs(a[0] - 1.0) > 1e-12) throw Error(ErrorCode::NotMonic, "denominator leading coefficient must be 1");
    a[0] = 1.0;
    const std::size_t n = a.size() - 1;
    if (b.empty()) b = {0.0};
    if (b.size() > n) throw Error(ErrorCode::NotStrictlyProper, "numerator has as many coefficients as the denominator");

    TransferFunction h;
    h.den_ = Polynomial(std::move(a));
    h.num_ = Polynomial(pad_left(b, n));

    const Polynomial bt = h.num_.trimmed();
    h.gain_ = bt.leading();
    if (h.gain_ != 0.0) h.zeros_ = roots(bt);
    h.poles_ = roots(h.den_);
    h.finish(cfg);
    return h;
}

TransferFunction TransferFunction::from_zpk(std::vector<Complex> zeros, std::vector<Complex> poles, double gain,
                                            const Config& cfg) {
    if (poles.empty()) throw Error(ErrorCode::NotStrictlyProper, "at least one pole is required");
    if (zeros.size() >= poles.size()) throw Error(ErrorCode::NotStrictlyProper, "need fewer zeros than poles");
    if (gain == 0.0 && !zeros.empty()) throw Error(ErrorCode::InvalidArgument, "zero gain with finite zeros");

    TransferFunction h;
    snap_to_axis(poles, cfg.axis_tol);
    snap_to_axis(zeros, cfg.axis_tol);
    h.den_ = from_roots(poles, cfg.conj_tol);
    const Polynomial monic_num = from_roots(zeros, cfg.conj_tol);
    std::vector<double> b = monic_num.coeffs();
    for (double& c : b) c *= gain;
    h.num_ = Polynomial(pad_left(b, poles.size()));
    h.gain_ = gain;
    h.zeros_ = gain == 0.0 ? std::vector<Complex>{} : std::move(zeros);
    h.poles_ = std::move(poles);
    h.finish(cfg);
    return h;
}

void TransferFunction::finish(const Config& cfg) {
    snap_to_axis(poles_, cfg.axis_tol);
    snap_to_axis(zeros_, cfg.axis_tol);
    for (const auto& z : zeros_) {
        for (const auto& p : poles_) {
            if (std::abs(z - p) <= cfg.coprime_tol) {
                throw Error(ErrorCode::CommonFactor, "zero-pole cancellation in the transfer function");
            }
        }
    }
    sort_poles(poles_);
    sort_poles(zeros_);
}

bool is_normalized(const TransferFunction& h, const Config& cfg) {
    return std::abs(h.dominant_pole() - Complex(1.0, 0.0)) <= cfg.axis_tol;
}

Normalized normalize_dominant_pole(const TransferFunction& h, const Config& cfg) {
    const Complex p1 = h.dominant_pole();
    if (std::abs(p1.imag()) > cfg.axis_tol || p1.real() <= cfg.axis_tol) {
        throw Error(ErrorCode::NonpositiveDominantPole, "dominant pole is not real and positive");
    }
    const double s = p1.real();
    if (s == 1.0) return {h, 1.0};

    TransferFunction g = h;
    const int n = h.order();
    std::vector<double> a = h.den().coeffs();
    std::vector<double> b = h.num().coeffs();
    // b_k multiplies z^(n-k) and sits at index k-1; a_k sits at index k.
    for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] /= std::pow(s, k);
    for (int k = 1; k <= n; ++k) b[static_cast<std::size_t>(k - 1)] /= std::pow(s, k);
    g.den_ = Polynomial(std::move(a));
    g.num_ = Polynomial(std::move(b));
    g.gain_ = h.gain() * std::pow(s, h.num_zeros() - n);
    for (auto& p : g.poles_) p /= s;
    for (auto& z : g.zeros_) z /= s;
    g.poles_.front() = Complex(1.0, 0.0);
    return {std::move(g), s};
}

MarkovSequence markov_parameters(const TransferFunction& h, int horizon) {
    if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
    const auto& a = h.den().coeffs();
    const auto& b = h.num().coeffs();
    const int n = h.order();
    MarkovSequence out;
    out.values.resize(static_cast<std::size_t>(horizon));
    for (int k = 1; k <= horizon; ++k) {
        double v = k <= n ? b[static_cast<std::size_t>(k - 1)] : 0.0;
        for (int j = 1; j <= std::min(k - 1, n); ++j) v -= a[static_cast<std::size_t>(j)] * out.values[static_cast<std::size_t>(k - j - 1)];
        out.values[static_cast<std::size_t>(k - 1)] = v;
    }
    return out;
}

namespace {

int positive_prefix(const MarkovSequence& m, double pos_tol) {
    int t = 0;
    while (t < m.horizon() && m.values[static_cast<std::size_t>(t)] >= -pos_tol) ++t;
    return t;
}

}  // namespace

bool check_external_positivity(const TransferFunction& h, int horizon, const Config& cfg) {
    if (horizon <= 0) horizon = cfg.positivity_horizon(h.order());
    const MarkovSequence m = markov_parameters(h, horizon);
    return positive_prefix(m, cfg.pos_tol) == horizon;
}

Classification classify(const TransferFunction& h, const Config& cfg) {
    if (!is_normalized(h, cfg)) throw Error(ErrorCode::NotNormalized, "dominant pole must be 1");
    Classification c;
    for (const auto& p : h.poles())
        if (std::abs(p.imag()) <= cfg.axis_tol && p.real() > cfg.axis_tol) ++c.positive_pole_count;
    c.in_M = c.positive_pole_count == 1;
    c.horizon = cfg.positivity_horizon(h.order());
    c.externally_positive_up_to = positive_prefix(markov_parameters(h, c.horizon), cfg.pos_tol);
    c.dominant_modulus = std::abs(h.dominant_pole());
    return c;
}

double matching_cost(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "point sets differ in size");
    const std::size_t n = x.size();
    if (n == 0) return 0.0;

    // Hungarian algorithm with potentials, 1-based rows/columns.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = std::abs(x[i0 - 1] - y[j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double cost = 0.0;
    for (std::size_t j = 1; j <= n; ++j) cost += std::abs(x[match[j] - 1] - y[j - 1]);
    return cost;
}

double distance(const TransferFunction& h, const TransferFunction& g) {
    if (h.poles().size() != g.poles().size()) throw Error(ErrorCode::ShapeMismatch, "pole counts differ");
    if (h.zeros().size() != g.zeros().size()) throw Error(ErrorCode::ShapeMismatch, "zero counts differ");
    return matching_cost(h.zeros(), g.zeros()) + matching_cost(h.poles(), g.poles());
}

}  // namespace posreal
