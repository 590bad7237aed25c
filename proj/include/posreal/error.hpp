#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posreal {

enum class ErrorCode {
    InvalidArgument,
    NonConjugateRoots,
    DegreeMismatch,
    NumericalBreakdown,
    NotStrictlyProper,
    NotMonic,
    CommonFactor,
    NonpositiveDominantPole,
    NotNormalized,
    ShapeMismatch,
    DimensionTooSmall,
    InvalidCertificate,
    ConditionViolated,
    InexactDivision,
    Unreachable,
    NoUnitRoot,
    NotEnoughPositivePoles,
    GridMismatch,
    Overflow,
    Io,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonConjugateRoots: return "NonConjugateRoots";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
        case ErrorCode::NotStrictlyProper: return "NotStrictlyProper";
        case ErrorCode::NotMonic: return "NotMonic";
        case ErrorCode::CommonFactor: return "CommonFactor";
        case ErrorCode::NonpositiveDominantPole: return "NonpositiveDominantPole";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::InvalidCertificate: return "InvalidCertificate";
        case ErrorCode::ConditionViolated: return "ConditionViolated";
        case ErrorCode::InexactDivision: return "InexactDivision";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::NoUnitRoot: return "NoUnitRoot";
        case ErrorCode::NotEnoughPositivePoles: return "NotEnoughPositivePoles";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

// Every failure raised by the library carries a stable code so front ends
// can report it without parsing the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace posreal
