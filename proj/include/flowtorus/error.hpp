#ifndef FLOWTORUS_ERROR_HPP
#define FLOWTORUS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace flowtorus {

enum class ErrorCode {
    // input / validation
    ParseError,
    ValidationError,
    // laurent
    ConstantTermNotOne,
    NonzeroConstantTerm,
    SizeCapExceeded,
    // mahler
    ZeroPolynomial,
    DegenerateSpecialization,
    NonIntegerCoefficients,
    BadPrime,
    NotApplicable,
    // digraph
    CycleCapExceeded,
    NotACycle,
    // hull
    ZeroDegree,
    EmptyRecurrentCore,
    DimensionCapExceeded,
    UnknownFace,
    BadExceptionalReference,
    // zeta
    InexactDivision,
    AmbiguousT,
    WalkCapExceeded,
    // covers
    InconsistentProjection,
    ActionDoesNotPreserveHull,
    ChainNotNested,
    NotIrreducible,
    GroupCapExceeded,
};

/// Broad class of a failure; the CLI maps it to an exit status.
enum class ErrorCategory { Validation = 1, Computation = 2, Cap = 3 };

constexpr std::string_view error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ConstantTermNotOne: return "ConstantTermNotOne";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegenerateSpecialization: return "DegenerateSpecialization";
    case ErrorCode::NonIntegerCoefficients: return "NonIntegerCoefficients";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::CycleCapExceeded: return "CycleCapExceeded";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::EmptyRecurrentCore: return "EmptyRecurrentCore";
    case ErrorCode::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorCode::UnknownFace: return "UnknownFace";
    case ErrorCode::BadExceptionalReference: return "BadExceptionalReference";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::AmbiguousT: return "AmbiguousT";
    case ErrorCode::WalkCapExceeded: return "WalkCapExceeded";
    case ErrorCode::InconsistentProjection: return "InconsistentProjection";
    case ErrorCode::ActionDoesNotPreserveHull: return "ActionDoesNotPreserveHull";
    case ErrorCode::ChainNotNested: return "ChainNotNested";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::GroupCapExceeded: return "GroupCapExceeded";
    }
    return "Unknown";
}

constexpr ErrorCategory error_category(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::BadExceptionalReference:
        return ErrorCategory::Validation;
    case ErrorCode::SizeCapExceeded:
    case ErrorCode::CycleCapExceeded:
    case ErrorCode::DimensionCapExceeded:
    case ErrorCode::WalkCapExceeded:
    case ErrorCode::GroupCapExceeded:
        return ErrorCategory::Cap;
    default:
        return ErrorCategory::Computation;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return error_category(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace flowtorus

#endif // FLOWTORUS_ERROR_HPP
