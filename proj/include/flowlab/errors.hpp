#ifndef FLOWLAB_ERRORS_HPP
#define FLOWLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flowlab {

enum class ErrorCode {
    InvalidExpr,
    PoleHit,
    ZeroDenominator,
    DegenerateDilatation,
    OutsideValidity,
    DepthExceeded,
    NonFinite,
    UnknownPreset,
    MismatchedInitialPair,
    DegenerateBasis,
    SensePreservationViolated,
    InvalidManifest,
    IoFailure,
};

/// Library-wide exception. Carries a machine-readable code so the C API
/// can map failures to status values without string matching.
class FlowError : public std::runtime_error {
public:
    FlowError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw FlowError(code, what);
}

} // namespace flowlab

#endif
