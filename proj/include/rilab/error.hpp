#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rilab {

enum class ErrorKind {
    InvalidArgument,
    QuadratureFailure,
    DivergentIntegral,
    OutOfSupport,
    RootFailure,
    EmptySupport,
    NotIntegrable,
    DivergentNorm,
    OutOfRange,
    ConstraintViolation,
    NormFailure,
    Unsupported,
    ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::OutOfSupport: return "OutOfSupport";
    case ErrorKind::RootFailure: return "RootFailure";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::DivergentNorm: return "DivergentNorm";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::NormFailure: return "NormFailure";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above, so
/// callers (the campaign runner in particular) can localize and classify it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) throw Error(kind, message);
}

} // namespace rilab
