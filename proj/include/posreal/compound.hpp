#pragma once

#include <optional>
#include <vector>

#include "posreal/config.hpp"
#include "posreal/markov.hpp"
#include "posreal/tf.hpp"

namespace posreal::compound {

enum class Mode { Series, Parallel };

struct CompoundPlan {
    Mode mode = Mode::Series;
    std::vector<TransferFunction> parts;  // one positive pole each, ordered by descending positive pole
    std::vector<int> dims;                // realized dimension of each part; empty until realized
};

/// A = [[A1, 0], [B2 C1, A2]], B = [B1; 0], C = [0, C2]: the output of s1 feeds s2.
StateSpaceRealization series_compose(const StateSpaceRealization& s1, const StateSpaceRealization& s2);

/// A = diag(A1, A2), B = [B1; B2], C = [C1, C2].
StateSpaceRealization parallel_compose(const StateSpaceRealization& s1, const StateSpaceRealization& s2);

/// Splits a system with two or more positive poles into parts holding exactly
/// one positive pole each. Every non-positive pole joins the positive pole
/// nearest to it in modulus.
///
/// Parallel: partial fractions over the pole groups. Series: denominator
/// factored by group; each zero (with its conjugate) joins the group whose
/// positive pole is nearest, as long as that group stays strictly proper; the
/// gain goes to the first group.
///
/// Returns nullopt when some part fails the external positivity screen or the
/// split cannot keep every part strictly proper. Throws NotEnoughPositivePoles
/// when fewer than two positive poles are present.
std::optional<CompoundPlan> decompose(const TransferFunction& h, Mode mode, const Config& cfg = {});

/// Positive poles of h (real, above axis_tol), descending.
std::vector<double> positive_poles(const TransferFunction& h, const Config& cfg = {});

struct CompoundRealization {
    CompoundPlan plan;
    StateSpaceRealization realization;
};

/// Tries the requested modes in order (Series then Parallel by default). Each
/// part is normalized, realized at its minimal Markov dimension and mapped
/// back; the composition must reproduce h's Markov parameters over 2N steps.
std::optional<CompoundRealization> compound_realize(const TransferFunction& h, int N_max, const Config& cfg = {},
                                                    std::vector<Mode> modes = {Mode::Series, Mode::Parallel});

}  // namespace posreal::compound
