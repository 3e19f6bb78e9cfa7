#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cliqueblowup {

enum class ErrorKind {
    ParseError,
    DuplicateEdge,
    SelfLoop,
    InvalidParameter,
    NotConnected,
    SizeCapExceeded,
    DegreeZero,
    NotSymmetric,
    InconsistentSpectrum,
    InternalAssertion,
    NumericalFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cliqueblowup
