#pragma once

#include <stdexcept>
#include <string>

namespace fns {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChartMismatch : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct MixedDegrees : Error {
    using Error::Error;
};
struct DegreeTooHigh : Error {
    using Error::Error;
};
struct BadValence : Error {
    using Error::Error;
};
struct NotScalarForm : Error {
    using Error::Error;
};
struct NotCotangent : Error {
    using Error::Error;
};
struct NotHorizontal : Error {
    using Error::Error;
};
struct NotHomogeneous : Error {
    using Error::Error;
};
struct NotClosed : Error {
    using Error::Error;
};
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};
struct UnknownOperator : Error {
    using Error::Error;
};
struct ArityError : Error {
    using Error::Error;
};
struct UnboundSymbol : Error {
    using Error::Error;
};
struct UnknownSuite : Error {
    using Error::Error;
};

} // namespace fns
