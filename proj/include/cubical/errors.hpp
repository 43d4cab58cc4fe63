#pragma once

#include <stdexcept>
#include <string>

namespace cubical {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidOperator : Error {
    using Error::Error;
};

struct CompositionError : Error {
    using Error::Error;
};

// An operation needed cubes above the truncation dimension.
struct TruncationError : Error {
    using Error::Error;
};

// A search or enumeration hit its configured cap. Never a certificate of absence.
struct ResourceError : Error {
    using Error::Error;
};

struct ConstructionError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// A bounded search could not settle the question either way.
struct UndecidedError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace cubical
