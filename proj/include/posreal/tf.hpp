#pragma once

#include <vector>

#include "posreal/config.hpp"
#include "posreal/poly.hpp"

namespace posreal {

/// Strictly proper SISO discrete-time transfer function
///
///   H(z) = (b_1 z^(n-1) + ... + b_n) / (z^n + a_1 z^(n-1) + ... + a_n)
///        = K prod(z - z_k) / prod(z - p_k).
///
/// The coefficient view and the pole/zero view are built together and never
/// change afterwards. Poles are ordered by descending modulus, ties broken by
/// ascending angle in [0, 2 pi), so poles()[0] is the dominant pole.
struct Normalized;
class TransferFunction;
Normalized normalize_dominant_pole(const TransferFunction& h, const Config& cfg);

class TransferFunction {
public:
    /// b = {b_1..b_n'} with n' <= n (left-padded with zeros), a monic of length n + 1.
    /// Throws NotMonic, NotStrictlyProper or CommonFactor.
    static TransferFunction from_coefficients(std::vector<double> b, std::vector<double> a, const Config& cfg = {});

    /// Throws NotStrictlyProper, CommonFactor or NonConjugateRoots.
    static TransferFunction from_zpk(std::vector<Complex> zeros, std::vector<Complex> poles, double gain,
                                     const Config& cfg = {});

    /// Numerator padded to n coefficients: num()[k - 1] = b_k.
    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    double gain() const noexcept { return gain_; }
    const std::vector<Complex>& zeros() const noexcept { return zeros_; }
    const std::vector<Complex>& poles() const noexcept { return poles_; }

    int order() const noexcept { return static_cast<int>(den_.degree()); }
    int num_zeros() const noexcept { return static_cast<int>(zeros_.size()); }
    const Complex& dominant_pole() const { return poles_.front(); }

private:
    TransferFunction() = default;
    void finish(const Config& cfg);
    friend Normalized normalize_dominant_pole(const TransferFunction& h, const Config& cfg);

    Polynomial num_;
    Polynomial den_;
    double gain_ = 0.0;
    std::vector<Complex> zeros_;
    std::vector<Complex> poles_;
};

struct MarkovSequence {
    std::vector<double> values;  // values[t - 1] = h_t

    int horizon() const noexcept { return static_cast<int>(values.size()); }
    double operator()(int t) const { return values[static_cast<std::size_t>(t - 1)]; }
};

struct Classification {
    int positive_pole_count = 0;
    bool in_M = false;
    int externally_positive_up_to = 0;  // largest T with h_1..h_T >= -pos_tol, capped at the screened horizon
    int horizon = 0;                    // horizon screened
    double dominant_modulus = 0.0;
};

struct Normalized {
    TransferFunction tf;
    double scale;
};

/// True iff the dominant pole equals 1 within axis_tol.
bool is_normalized(const TransferFunction& h, const Config& cfg = {});

/// Rescales z so the dominant pole becomes 1. The result has Markov
/// parameters h_t / scale^t, i.e. it is H(scale z). Throws
/// NonpositiveDominantPole unless p_1 is real and positive within axis_tol.
Normalized normalize_dominant_pole(const TransferFunction& h, const Config& cfg);
inline Normalized normalize_dominant_pole(const TransferFunction& h) { return normalize_dominant_pole(h, Config{}); }

/// h_k = b_k - sum_{j=1}^{min(k-1,n)} a_j h_{k-j}, with b_k = 0 for k > n.
MarkovSequence markov_parameters(const TransferFunction& h, int horizon);

/// Finite-horizon screen h_t >= -pos_tol for t <= horizon. Not a proof of
/// external positivity. horizon <= 0 uses cfg.positivity_horizon(n).
bool check_external_positivity(const TransferFunction& h, int horizon = 0, const Config& cfg = {});

/// Counts poles on the open positive real axis. Requires a normalized system
/// (NotNormalized otherwise).
Classification classify(const TransferFunction& h, const Config& cfg = {});

/// Sum of pole and zero displacements under the minimum-cost matching of each
/// set. Throws ShapeMismatch when the pole or zero counts differ.
double distance(const TransferFunction& h, const TransferFunction& g);

/// Minimum-cost perfect matching cost between two equally sized point sets.
double matching_cost(const std::vector<Complex>& x, const std::vector<Complex>& y);

}  // namespace posreal
