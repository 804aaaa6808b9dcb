#pragma once

#include <stdexcept>

namespace basketsom {

// Base of all toolkit errors. The CLI maps every subtype to exit code 1,
// except IoError which maps to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct MalformedHeader : Error {
    using Error::Error;
};

struct UnknownProduct : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// confidence(a, b) when no basket contains a.
struct UndefinedConditional : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace basketsom
