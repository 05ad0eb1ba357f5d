#pragma once

#include <stdexcept>
#include <string>

namespace isoschatten {

enum class ErrorCode {
    SingularAtZero,
    NegativeRadius,
    DivergentMass,
    InvalidKernel,
    DegenerateDomain,
    EmptyRaster,
    DimensionMismatch,
    ConvergenceFailure,
    InvalidExponent,
    NonPositiveSpectrum,
    ZetaOutOfRange,
    InsufficientSpectrum,
    MissingEigenvectors,
    IndexOutOfRange,
    SingularKernelRejected,
    RejectionInefficiency,
    NotATriangle,
    ConfigParseError,
    InvalidArgument,
    IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace isoschatten
