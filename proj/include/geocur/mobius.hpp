#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "geocur/boundary.hpp"
#include "geocur/errors.hpp"

namespace geocur {

using cplx = std::complex<double>;

/// Orientation-preserving isometry of the unit disk, stored as the SU(1,1)
/// matrix [[u, v], [conj(v), conj(u)]] with |u|^2 - |v|^2 = 1, up to sign.
class MobiusMap {
public:
    MobiusMap() : u_(1.0, 0.0), v_(0.0, 0.0) {}

    MobiusMap(cplx u, cplx v) : u_(u), v_(v) {
        double n = std::norm(u_) - std::norm(v_);
        if (n <= 0.0)
            throw OrientationMismatch("matrix does not preserve the disk");
        double s = std::sqrt(n);
        u_ /= s;
        v_ /= s;
    }

    cplx u() const { return u_; }
    cplx v() const { return v_; }

    static MobiusMap identity() { return MobiusMap(); }

    /// Rotation z -> e^{i phi} z.
    static MobiusMap rotation(double phi) {
        return MobiusMap(std::polar(1.0, phi / 2.0), cplx(0.0, 0.0));
    }

    /// Trusted entries already satisfying |u|^2 - |v|^2 = 1. The normalizing
    /// constructor computes that difference explicitly, which cancels
    /// catastrophically once the entries are large.
    static MobiusMap from_unit_entries(cplx u, cplx v) { return with_entries(u, v); }

    cplx apply_complex(cplx z) const {
        return (u_ * z + v_) / (std::conj(v_) * z + std::conj(u_));
    }

    BoundaryPoint operator()(BoundaryPoint p) const {
        return BoundaryPoint::from_unit(apply_complex(p.unit()));
    }

    Geodesic operator()(const Geodesic& g) const {
        return Geodesic((*this)(g.p), (*this)(g.q));
    }

    // inverse and products of unit-determinant matrices are unit-determinant
    // already; renormalizing through the constructor would cancel
    // catastrophically once entries are large (long earthquake compositions).
    MobiusMap inverse() const { return with_entries(std::conj(u_), -v_); }

    friend MobiusMap operator*(const MobiusMap& A, const MobiusMap& B) {
        // [[u,v],[v*,u*]] * [[u',v'],[v'*,u'*]]
        return with_entries(A.u_ * B.u_ + A.v_ * std::conj(B.v_),
                            A.u_ * B.v_ + A.v_ * std::conj(B.u_));
    }

    /// |trace| = |2 Re u|; equals 2 cosh(m/2) for a translation of length m.
    double abs_trace() const { return std::abs(2.0 * u_.real()); }

    /// Resolve the sign ambiguity: first nonzero entry gets positive real part.
    MobiusMap canonical_sign() const {
        cplx lead = (std::abs(u_) > 0.0) ? u_ : v_;
        double key = (std::abs(lead.real()) > 1e-14) ? lead.real() : lead.imag();
        if (key < 0.0) return with_entries(-u_, -v_);
        return *this;
    }

    bool is_near_identity(double eps = 1e-10) const {
        MobiusMap c = canonical_sign();
        return std::abs(c.u_ - 1.0) < eps && std::abs(c.v_) < eps;
    }

private:
    static MobiusMap with_entries(cplx u, cplx v) {
        MobiusMap m;
        m.u_ = u;
        m.v_ = v;
        return m;
    }

    cplx u_, v_;
};

// ---------------------------------------------------------------------------
// Cross-ratio
// ---------------------------------------------------------------------------

/// cr = (c-a)(d-b) / ((d-a)(c-b)) with unit-modulus representatives.
/// Real for concircular points; > 1 for counterclockwise-ordered separated
/// pairs {a,b}, {c,d}.
inline double cross_ratio(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c,
                          BoundaryPoint d) {
    cplx za = a.unit(), zb = b.unit(), zc = c.unit(), zd = d.unit();
    cplx den = (zd - za) * (zc - zb);
    if (std::abs(zd - za) < kPointEps || std::abs(zc - zb) < kPointEps)
        throw DegenerateConfiguration("cross_ratio: a ~ d or b ~ c");
    cplx q = (zc - za) * (zd - zb) / den;
    if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q)))
        throw DegenerateConfiguration("cross_ratio: residual imaginary part");
    return q.real();
}

// ---------------------------------------------------------------------------
// Three-point interpolation
// ---------------------------------------------------------------------------

namespace detail {

// Raw 2x2 complex matrix, used only while assembling SU(1,1) elements.
struct Mat2 {
    cplx a, b, c, d;

    Mat2 adjugate() const { return {d, -b, -c, a}; }

    friend Mat2 operator*(const Mat2& A, const Mat2& B) {
        return {A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d};
    }
};

// Matrix of the map sending (z1, z2, z3) to (0, 1, inf).
inline Mat2 to_standard_triple(cplx z1, cplx z2, cplx z3) {
    return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}

}  // namespace detail

/// The unique disk isometry carrying src[k] to dst[k], k = 0,1,2. The two
/// triples must have the same cyclic orientation.
inline MobiusMap mobius_from_three_pairs(const std::array<BoundaryPoint, 3>& src,
                                         const std::array<BoundaryPoint, 3>& dst) {
    if (ccw_order(src[0], src[1], src[2]) != ccw_order(dst[0], dst[1], dst[2]))
        throw OrientationMismatch("triples have opposite cyclic order");

    detail::Mat2 A = detail::to_standard_triple(src[0].unit(), src[1].unit(), src[2].unit());
    detail::Mat2 B = detail::to_standard_triple(dst[0].unit(), dst[1].unit(), dst[2].unit());
    detail::Mat2 M = B.adjugate() * A;

    cplx det = M.a * M.d - M.b * M.c;
    cplx s = std::sqrt(det);
    M.a /= s; M.b /= s; M.c /= s; M.d /= s;

    // A disk-preserving element of SL(2,C) has d = conj(a), c = conj(b) up to
    // a global sign.
    double scale = std::abs(M.a) + std::abs(M.b) + 1.0;
    if (std::abs(M.d - std::conj(M.a)) > 1e-8 * scale ||
        std::abs(M.c - std::conj(M.b)) > 1e-8 * scale)
        throw OrientationMismatch("triples are not carried by a disk isometry");

    return MobiusMap(M.a, M.b);
}

// ---------------------------------------------------------------------------
// Hyperbolic translations
// ---------------------------------------------------------------------------

enum class AxisEndpoint { first, second };

/// Hyperbolic translation with the given axis and translation length; the
/// selected endpoint is attracting. Built by conjugating the translation
/// along the diameter (-1, 1) of length m.
inline MobiusMap hyperbolic_translation(const Geodesic& axis, double length,
                                        AxisEndpoint attracting = AxisEndpoint::second) {
    if (length < 0.0) throw InvalidAxis("negative translation length");
    if (length == 0.0) return MobiusMap::identity();

    BoundaryPoint rep = (attracting == AxisEndpoint::second) ? axis.p : axis.q;
    BoundaryPoint att = (attracting == AxisEndpoint::second) ? axis.q : axis.p;

    // Third normalization point: midpoint of the ccw arc from rep to att,
    // mapped to -i, the midpoint of the ccw arc from -1 to 1.
    BoundaryPoint mid(rep.angle + 0.5 * ccw_from(rep, att));
    MobiusMap g = mobius_from_three_pairs(
        {rep, mid, att},
        {BoundaryPoint(std::numbers::pi), BoundaryPoint(1.5 * std::numbers::pi),
         BoundaryPoint(0.0)});

    // Translation along (-1, 1) attracting 1: [[cosh, sinh], [sinh, cosh]].
    MobiusMap t0 = MobiusMap::from_unit_entries(cplx(std::cosh(length / 2.0), 0.0),
                                                cplx(std::sinh(length / 2.0), 0.0));
    return g.inverse() * t0 * g;
}

// ---------------------------------------------------------------------------
// Distance between disjoint geodesics
// ---------------------------------------------------------------------------

inline bool endpoints_interleave(const Geodesic& g1, const Geodesic& g2) {
    double len = ccw_from(g1.p, g1.q);
    bool in1 = ccw_from(g1.p, g2.p) < len;
    bool in2 = ccw_from(g1.p, g2.q) < len;
    return in1 != in2;
}

/// Hyperbolic distance between two disjoint geodesics. Equivalent to
/// normalizing g1 to the half-plane geodesic (0, inf) so that g2 has real
/// endpoints 0 < u < v and computing arccosh((v+u)/(v-u)).
inline double geodesic_distance(const Geodesic& g1, const Geodesic& g2) {
    if (same_point(g1.p, g2.p) || same_point(g1.p, g2.q) ||
        same_point(g1.q, g2.p) || same_point(g1.q, g2.q))
        throw SharedEndpoint("geodesics share an endpoint");
    if (endpoints_interleave(g1, g2))
        throw GeodesicsCross("geodesics intersect");

    // With g1 at (0, inf) and g2 at (u, v) the cross-ratio below equals u/v.
    double r = cross_ratio(g1.p, g1.q, g2.p, g2.q);
    if (r < 0.0) throw GeodesicsCross("geodesics intersect");
    if (r > 1.0) r = 1.0 / r;
    return std::acosh((1.0 + r) / (1.0 - r));
}

}  // namespace geocur
