#pragma once

#include <stdexcept>
#include <string>

namespace clq {

// Error kinds raised by the engine. The CLI maps them to exit codes.
enum class Err {
    NonInvertibleImage,
    ZeroToNegativePower,
    NonIntegralResult,
    NonExactDivision,
    ParseError,
    UnsupportedType,
    NotAlmostPositive,
    FrozenDirection,
    LimitExceeded,
    LabelingFailure,
    NoExpansion,
    MultipleExpansions,
    NotTwoRestricted,
    NotJDominant,
    CapExceeded,
    OutOfProvedScope,
    NegativeRemainder,
    UnsupportedRoot,
    InterpolationMismatch,
    ScaleExceeded,
    OutOfRange,
    MismatchReport,
    Overflow,
    InvalidArgument,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& msg)
        : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
    Err kind() const { return kind_; }
    // limit-type failures (exit code 3 in the CLI)
    bool is_limit() const {
        return kind_ == Err::LimitExceeded || kind_ == Err::CapExceeded ||
               kind_ == Err::ScaleExceeded;
    }

private:
    Err kind_;
};

}  // namespace clq
