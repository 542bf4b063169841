#pragma once

#include <stdexcept>
#include <string>

namespace kadv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct PreconditionViolation : Error { using Error::Error; };
struct NotATour : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct OffCycle : Error { using Error::Error; };
struct NoSuchSubtour : Error { using Error::Error; };
struct GadgetMismatch : Error { using Error::Error; };
struct NotStandard : Error {
    explicit NotStandard(const std::string& msg, int witness_gadget = -1)
        : Error(msg), witness(witness_gadget) {}
    int witness;  // index of the offending gadget, -1 if not gadget-specific
};
struct GirthTooSmall : Error { using Error::Error; };
struct CoverInvalid : Error { using Error::Error; };
struct InfeasibleScale : Error { using Error::Error; };
struct AssemblyFailed : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace kadv
