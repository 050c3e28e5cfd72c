#pragma once

#include <stdexcept>
#include <string>

namespace tropmetz {

enum class ErrorCode {
    MixedSigns,
    ArityMismatch,
    DimensionMismatch,
    SingularSystem,
    NonStochastic,
    PreconditionViolated,
    NotCompliant,
    EmptyBelow,
    SupportMismatch,
    ValidationFailed,
    SignCollision,
    NoWitness,
    Malformed,
};

const char* to_string(ErrorCode code) noexcept;

/// Domain error raised by every module of the library. Input that cannot be
/// parsed at all carries ErrorCode::Malformed; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tropmetz
