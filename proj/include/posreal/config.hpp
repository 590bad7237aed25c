#pragma once

#include <cstddef>
#include <string>

namespace posreal {

/// Numerical tolerances and search limits shared by every module.
struct Config {
    double conj_tol = 1e-9;     // imaginary residue allowed when multiplying out conjugate roots
    double rem_tol = 1e-9;      // relative remainder tolerance for exact division
    double feas_tol = 1e-9;     // LP constraint violation tolerance
    double pivot_tol = 1e-10;   // smallest usable simplex pivot
    double axis_tol = 1e-9;     // distance from the real axis treated as real
    double coprime_tol = 1e-7;  // zero/pole distance treated as a cancellation
    double pos_tol = 1e-9;      // slack on h_t >= 0
    double angle_tol = 1e-9;    // rational angle detection
    long long max_denominator = 64;
    int n_max = 64;
    int horizon = 0;  // 0 selects max(100, 20 n)
    unsigned threads = 0;  // 0 selects hardware concurrency

    int positivity_horizon(int order) const {
        if (horizon > 0) return horizon;
        return order * 20 > 100 ? order * 20 : 100;
    }

    /// Applies one `key=value` override; throws Error(InvalidArgument) on an unknown key.
    void set(const std::string& key, const std::string& value);
};

/// Reads a key=value file (blank lines and `#` comments ignored) on top of `base`.
Config load_config_file(const std::string& path, Config base = {});

/// Defaults, then the file named by POSREAL_CONFIG when that variable is set.
Config load_default_config();

}  // namespace posreal
