#include "posreal/compound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "posreal/error.hpp"

namespace posreal::compound {

StateSpaceRealization series_compose(const StateSpaceRealization& s1, const StateSpaceRealization& s2) {
    const int n1 = s1.dimension();
    const int n2 = s2.dimension();
    StateSpaceRealization out;
    out.A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
    out.A.topLeftCorner(n1, n1) = s1.A;
    out.A.bottomLeftCorner(n2, n1) = s2.B * s1.C;
    out.A.bottomRightCorner(n2, n2) = s2.A;
    out.B = Eigen::VectorXd::Zero(n1 + n2);
    out.B.head(n1) = s1.B;
    out.C = Eigen::RowVectorXd::Zero(n1 + n2);
    out.C.tail(n2) = s2.C;
    out.max_clamp = std::max(s1.max_clamp, s2.max_clamp);
    return out;
}

StateSpaceRealization parallel_compose(const StateSpaceRealization& s1, const StateSpaceRealization& s2) {
    const int n1 = s1.dimension();
    const int n2 = s2.dimension();
    StateSpaceRealization out;
    out.A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
    out.A.topLeftCorner(n1, n1) = s1.A;
    out.A.bottomRightCorner(n2, n2) = s2.A;
    out.B = Eigen::VectorXd(n1 + n2);
    out.B << s1.B, s2.B;
    out.C = Eigen::RowVectorXd(n1 + n2);
    out.C << s1.C, s2.C;
    out.max_clamp = std::max(s1.max_clamp, s2.max_clamp);
    return out;
}

namespace {

bool is_positive_real(const Complex& p, const Config& cfg) {
    return std::abs(p.imag()) <= cfg.axis_tol && p.real() > cfg.axis_tol;
}

struct Group {
    double positive_pole;
    std::vector<Complex> poles;
};

std::vector<Group> group_poles(const TransferFunction& h, const Config& cfg) {
    std::vector<Group> groups;
    for (double p : positive_poles(h, cfg)) groups.push_back({p, {Complex(p, 0.0)}});
    if (groups.size() < 2) throw Error(ErrorCode::NotEnoughPositivePoles, "decomposition needs two or more positive poles");

    for (const auto& p : h.poles()) {
        if (is_positive_real(p, cfg)) continue;
        std::size_t best = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const double gap = std::abs(std::abs(p) - groups[g].positive_pole);
            if (gap < best_gap) {
                best_gap = gap;
                best = g;
            }
        }
        groups[best].poles.push_back(p);
    }
    return groups;
}

std::vector<double> trim_noise(std::vector<double> c) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (double& v : c)
        if (std::abs(v) <= 1e-12 * scale) v = 0.0;
    return c;
}

std::optional<CompoundPlan> decompose_parallel(const TransferFunction& h, const std::vector<Group>& groups,
                                               const Config& cfg) {
    const int n = h.order();
    std::vector<Polynomial> dens;
    for (const auto& g : groups) dens.push_back(from_roots(g.poles, cfg.conj_tol));

    // B = sum_i N_i F_i with F_i = prod_(j != i) D_j and deg N_i < deg D_i.
    // Unknowns are the coefficients of each N_i; match coefficients of z^0..z^(n-1).
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    int col = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        Polynomial f{1.0};
        for (std::size_t j = 0; j < groups.size(); ++j)
            if (j != i) f = conv(f, dens[j]);
        const int d = static_cast<int>(dens[i].degree());
        const auto& fc = f.coeffs();
        const int fdeg = static_cast<int>(f.degree());
        for (int e = 0; e < d; ++e, ++col) {
            // z^e F_i: coefficient of z^(e + fdeg - k) is fc[k].
            for (int k = 0; k <= fdeg; ++k) M(e + fdeg - k, col) += fc[static_cast<std::size_t>(k)];
        }
    }
    Eigen::VectorXd rhs(n);
    const auto& b = h.num().coeffs();  // b[k-1] multiplies z^(n-k)
    for (int k = 1; k <= n; ++k) rhs(n - k) = b[static_cast<std::size_t>(k - 1)];
    const Eigen::VectorXd x = M.fullPivLu().solve(rhs);
    if ((M * x - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) return std::nullopt;

    CompoundPlan plan;
    plan.mode = Mode::Parallel;
    col = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const int d = static_cast<int>(dens[i].degree());
        std::vector<double> num(static_cast<std::size_t>(d));
        for (int e = 0; e < d; ++e) num[static_cast<std::size_t>(d - 1 - e)] = x(col + e);
        col += d;
        try {
            plan.parts.push_back(TransferFunction::from_coefficients(trim_noise(std::move(num)), dens[i].coeffs(), cfg));
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return plan;
}

std::optional<CompoundPlan> decompose_series(const TransferFunction& h, const std::vector<Group>& groups,
                                             const Config& cfg) {
    std::vector<std::vector<Complex>> zeros(groups.size());
    std::vector<int> capacity;
    for (const auto& g : groups) capacity.push_back(static_cast<int>(g.poles.size()) - 1);

    for (const auto& z : h.zeros()) {
        if (z.imag() < 0.0) continue;  // placed with its conjugate
        const int need = z.imag() > 0.0 ? 2 : 1;
        std::vector<std::size_t> order(groups.size());
        for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return std::abs(z - groups[l].positive_pole) < std::abs(z - groups[r].positive_pole);
        });
        bool placed = false;
        for (std::size_t g : order) {
            if (capacity[g] < need) continue;
            capacity[g] -= need;
            zeros[g].push_back(z);
            if (need == 2) zeros[g].push_back(std::conj(z));
            placed = true;
            break;
        }
        if (!placed) return std::nullopt;
    }

    CompoundPlan plan;
    plan.mode = Mode::Series;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double gain = g == 0 ? h.gain() : 1.0;
        try {
            plan.parts.push_back(TransferFunction::from_zpk(zeros[g], groups[g].poles, gain, cfg));
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return plan;
}

}  // namespace

std::vector<double> positive_poles(const TransferFunction& h, const Config& cfg) {
    std::vector<double> out;
    for (const auto& p : h.poles())
        if (is_positive_real(p, cfg)) out.push_back(p.real());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::optional<CompoundPlan> decompose(const TransferFunction& h, Mode mode, const Config& cfg) {
    const std::vector<Group> groups = group_poles(h, cfg);
    auto plan = mode == Mode::Parallel ? decompose_parallel(h, groups, cfg) : decompose_series(h, groups, cfg);
    if (!plan) return std::nullopt;
    for (const auto& part : plan->parts)
        if (!check_external_positivity(part, 0, cfg)) return std::nullopt;
    return plan;
}

std::optional<CompoundRealization> compound_realize(const TransferFunction& h, int N_max, const Config& cfg,
                                                    std::vector<Mode> modes) {
    for (Mode mode : modes) {
        auto plan = decompose(h, mode, cfg);
        if (!plan) continue;

        std::optional<StateSpaceRealization> acc;
        bool ok = true;
        for (const auto& part : plan->parts) {
            std::optional<Synthesis> s;
            try {
                s = synthesize(part, N_max, cfg);
            } catch (const Error&) {
                ok = false;
            }
            if (!ok || !s) {
                ok = false;
                break;
            }
            plan->dims.push_back(s->realization.dimension());
            if (!acc) acc = std::move(s->realization);
            else acc = mode == Mode::Series ? series_compose(*acc, s->realization) : parallel_compose(*acc, s->realization);
        }
        if (!ok || !acc) continue;
        if (!verify_realization(*acc, h, 2 * acc->dimension(), 1e-8)) continue;
        return CompoundRealization{std::move(*plan), std::move(*acc)};
    }
    return std::nullopt;
}

}  // namespace posreal::compound
