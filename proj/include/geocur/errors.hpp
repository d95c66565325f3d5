#pragma once

#include <stdexcept>
#include <string>

namespace geocur {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Four points collapse so that the cross-ratio denominator vanishes.
struct DegenerateConfiguration : Error {
    using Error::Error;
};

struct InvalidAxis : Error {
    using Error::Error;
};

struct OrientationMismatch : Error {
    using Error::Error;
};

struct GeodesicsCross : Error {
    using Error::Error;
};

struct SharedEndpoint : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NoSolutionInArc : Error {
    using Error::Error;
};

struct CrossingLeaves : Error {
    using Error::Error;
};

struct NonpositiveWeight : Error {
    using Error::Error;
};

struct CrossingFamily : Error {
    using Error::Error;
};

struct CannotSeparate : Error {
    using Error::Error;
};

struct BaseOnLeaf : Error {
    using Error::Error;
};

struct UnsupportedVariant : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace geocur
