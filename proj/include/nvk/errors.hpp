#pragma once

#include <stdexcept>
#include <string>

namespace nvk {

// Base class for all domain errors raised by the library. The CLI maps
// UsageError/ParseError to exit code 2 and everything else to exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct CutoffAmbiguous : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct GroupMismatch : Error {
    using Error::Error;
};
struct NotOrthogonal : Error {
    using Error::Error;
};
struct NotIndependent : Error {
    using Error::Error;
};
struct ZeroMap : Error {
    using Error::Error;
};
struct NotASupergroup : Error {
    using Error::Error;
};
struct NotEquivariant : Error {
    using Error::Error;
};
struct NotFiltrationIso : Error {
    using Error::Error;
};
struct HomotopyIdentityFails : Error {
    using Error::Error;
};
struct ShiftExceeded : Error {
    using Error::Error;
};
struct GapViolated : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};
struct SignRuleUnavailable : Error {
    using Error::Error;
};
struct NotSymmetric : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct InvariantViolation : Error {
    using Error::Error;
};
struct TruncationUnstable : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};

}  // namespace nvk
