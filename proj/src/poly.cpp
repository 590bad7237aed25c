#include "posreal/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"

namespace posreal {

Polynomial::Polynomial(std::initializer_list<double> c) : coeffs_(c) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one coefficient");
}

Polynomial::Polynomial(std::vector<double> c) : coeffs_(std::move(c)) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one coefficient");
}

double Polynomial::operator()(double z) const {
    double acc = 0.0;
    for (double c : coeffs_) acc = acc * z + c;
    return acc;
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc = 0.0;
    for (double c : coeffs_) acc = acc * z + c;
    return acc;
}

double Polynomial::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::trimmed(double tol) const {
    std::size_t first = 0;
    while (first + 1 < coeffs_.size() && std::abs(coeffs_[first]) <= tol) ++first;
    return Polynomial(std::vector<double>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first), coeffs_.end()));
}

Polynomial conv(const Polynomial& a, const Polynomial& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<double> out(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    }
    return Polynomial(std::move(out));
}

Polynomial from_roots(std::span<const Complex> roots, double conj_tol) {
    std::vector<Complex> sorted(roots.begin(), roots.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Complex& l, const Complex& r) { return std::abs(l) < std::abs(r); });

    std::vector<Complex> acc{1.0};
    for (const Complex& r : sorted) {
        acc.push_back(0.0);
        for (std::size_t k = acc.size() - 1; k > 0; --k) acc[k] -= r * acc[k - 1];
    }

    std::vector<double> out;
    out.reserve(acc.size());
    for (const Complex& c : acc) {
        if (std::abs(c.imag()) > conj_tol) {
            throw Error(ErrorCode::NonConjugateRoots, "roots are not closed under conjugation");
        }
        out.push_back(c.real());
    }
    return Polynomial(std::move(out));
}

Division divide(const Polynomial& num, const Polynomial& den, double rem_tol) {
    if (num.degree() < den.degree()) {
        throw Error(ErrorCode::DegreeMismatch, "numerator degree is below denominator degree");
    }
    if (den.leading() == 0.0) throw Error(ErrorCode::InvalidArgument, "divisor has a zero leading coefficient");

    const auto& d = den.coeffs();
    std::vector<double> work = num.coeffs();
    const std::size_t qlen = num.degree() - den.degree() + 1;
    std::vector<double> q(qlen);
    for (std::size_t i = 0; i < qlen; ++i) {
        const double c = work[i] / d[0];
        q[i] = c;
        if (c == 0.0) continue;
        for (std::size_t j = 0; j < d.size(); ++j) work[i + j] -= c * d[j];
    }

    std::vector<double> rem;
    if (den.degree() == 0) {
        rem = {0.0};
    } else {
        rem.assign(work.begin() + static_cast<std::ptrdiff_t>(qlen), work.end());
    }
    const double bound = rem_tol * num.max_abs();
    const bool exact = std::all_of(rem.begin(), rem.end(), [&](double r) { return std::abs(r) <= bound; });
    return {Polynomial(std::move(q)), Polynomial(std::move(rem)), exact};
}

std::vector<Complex> roots(const Polynomial& p) {
    const Polynomial t = p.trimmed();
    const std::size_t n = t.degree();
    if (n == 0) return {};

    const auto& c = t.coeffs();
    // Trailing zeros are exact roots at the origin; peel them off so the
    // companion matrix stays nonsingular.
    std::size_t zeros_at_origin = 0;
    while (zeros_at_origin < n && c[n - zeros_at_origin] == 0.0) ++zeros_at_origin;
    const std::size_t m = n - zeros_at_origin;

    std::vector<Complex> out(zeros_at_origin, Complex(0.0, 0.0));
    if (m == 0) return out;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) companion(0, static_cast<Eigen::Index>(j)) = -c[j + 1] / c[0];
    for (std::size_t i = 1; i < m; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "companion eigenvalue solve failed");
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(ev(i));
    return out;
}

}  // namespace posreal
