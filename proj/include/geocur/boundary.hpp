#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "geocur/errors.hpp"

namespace geocur {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Global angular comparison threshold: two boundary points closer than this
// are treated as equal everywhere in the library.
inline constexpr double kPointEps = 1e-12;

/// Reduce an angle to the canonical range [0, 2*pi).
inline double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

/// A point e^{i*angle} on the boundary circle S^1.
struct BoundaryPoint {
    double angle = 0.0;  // canonical in [0, 2*pi)

    BoundaryPoint() = default;
    explicit BoundaryPoint(double theta) : angle(wrap_angle(theta)) {}

    static BoundaryPoint from_unit(std::complex<double> z) {
        return BoundaryPoint(std::arg(z));
    }

    std::complex<double> unit() const { return std::polar(1.0, angle); }
};

/// Counterclockwise angular offset of p measured from `base`, in [0, 2*pi).
inline double ccw_from(double base, double angle) {
    return wrap_angle(angle - base);
}

inline double ccw_from(BoundaryPoint base, BoundaryPoint p) {
    return ccw_from(base.angle, p.angle);
}

/// Shorter angular distance between two boundary points, in [0, pi].
inline double angular_distance(BoundaryPoint a, BoundaryPoint b) {
    double d = ccw_from(a, b);
    return std::min(d, kTwoPi - d);
}

inline bool same_point(BoundaryPoint a, BoundaryPoint b, double eps = kPointEps) {
    return angular_distance(a, b) < eps;
}

/// True iff going counterclockwise from a one meets b strictly before c.
inline bool ccw_order(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c) {
    return ccw_from(a, b) < ccw_from(a, c);
}

/// An oriented geodesic, identified with its ordered pair of ideal endpoints.
struct Geodesic {
    BoundaryPoint p;
    BoundaryPoint q;

    Geodesic(BoundaryPoint first, BoundaryPoint second) : p(first), q(second) {
        if (same_point(p, q))
            throw InvalidAxis("geodesic endpoints coincide");
    }

    Geodesic reversed() const { return Geodesic(q, p); }

    /// Unoriented canonical form: endpoints ordered by angle.
    Geodesic unoriented() const {
        return (p.angle <= q.angle) ? *this : Geodesic(q, p);
    }
};

// ---------------------------------------------------------------------------
// Cayley transform between the upper half-plane boundary (extended reals) and
// the disk boundary. Fixed convention C(z) = (z - i)/(z + i), so C(0) = -1,
// C(inf) = 1, C(1) = -i, C(-1) = i.
// ---------------------------------------------------------------------------

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline BoundaryPoint cayley_to_disk(double x) {
    if (std::isinf(x)) return BoundaryPoint(0.0);
    const std::complex<double> i(0.0, 1.0);
    return BoundaryPoint::from_unit((x - i) / (x + i));
}

/// Inverse of cayley_to_disk; the disk point 1 maps to infinity.
inline double cayley_to_line(BoundaryPoint w) {
    if (same_point(w, BoundaryPoint(0.0))) return kInf;
    std::complex<double> z = w.unit();
    std::complex<double> r = std::complex<double>(0.0, 1.0) * (1.0 + z) / (1.0 - z);
    return r.real();
}

}  // namespace geocur
