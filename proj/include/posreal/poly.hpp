#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace posreal {

using Complex = std::complex<double>;

/// Dense real polynomial, coefficients in descending powers:
/// coeffs()[0] z^d + coeffs()[1] z^(d-1) + ... + coeffs()[d].
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> c);
    explicit Polynomial(std::vector<double> c);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    double leading() const { return coeffs_.front(); }

    double operator()(double z) const;
    Complex operator()(Complex z) const;

    double max_abs() const;

    /// Drops leading coefficients with |c| <= tol, keeping at least one.
    Polynomial trimmed(double tol = 0.0) const;

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<double> coeffs_;
};

/// Full convolution of the coefficient sequences.
Polynomial conv(const Polynomial& a, const Polynomial& b);

/// Monic real polynomial prod (z - r). Roots are multiplied in order of
/// ascending modulus; throws NonConjugateRoots if any coefficient keeps an
/// imaginary part larger than conj_tol.
Polynomial from_roots(std::span<const Complex> roots, double conj_tol = 1e-9);

struct Division {
    Polynomial quotient;
    Polynomial remainder;
    bool exact;
};

/// Synthetic long division. `exact` holds iff every remainder coefficient is
/// within rem_tol * max|num|.
Division divide(const Polynomial& num, const Polynomial& den, double rem_tol = 1e-9);

/// Roots as eigenvalues of the companion matrix. Leading zeros are ignored;
/// a constant polynomial has no roots.
std::vector<Complex> roots(const Polynomial& p);

}  // namespace posreal
