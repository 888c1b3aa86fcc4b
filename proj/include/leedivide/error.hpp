#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leedivide {

enum class ErrorCode {
    ParseError,
    Nonplanar,
    InconsistentOrientation,
    BadArc,
    NotDivisible,
    DivByZero,
    NotACycle,
    NotAKnot,
    BadLocation,
    IncoherentSaddle,
    UnknownRing,
    Io,
};

// Stable upper-case names, used in JSON error objects.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace leedivide
