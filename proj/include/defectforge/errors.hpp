#pragma once

#include <stdexcept>
#include <string>

namespace defectforge {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyRequest : Error {
    using Error::Error;
};
struct InvalidRegion : Error {
    using Error::Error;
};
struct TooFewGenerators : Error {
    using Error::Error;
};
struct NoBoundaryVertex : Error {
    using Error::Error;
};
struct Disconnected : Error {
    using Error::Error;
};
struct InvalidDiscretization : Error {
    using Error::Error;
};
struct InvalidPath : Error {
    using Error::Error;
};
struct InvalidWidths : Error {
    using Error::Error;
};
struct InvalidContour : Error {
    using Error::Error;
};
struct InvalidParams : Error {
    using Error::Error;
};
struct BooleanError : Error {
    using Error::Error;
};
struct NotClosed : Error {
    using Error::Error;
};
struct OutOfBounds : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
/// Internal geometric assumption failed (should not happen for valid inputs).
struct GeometryError : Error {
    using Error::Error;
};

} // namespace defectforge
