#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "geocur/boundary.hpp"
#include "geocur/errors.hpp"
#include "geocur/mobius.hpp"

namespace geocur {

/// Closed counterclockwise arc from `start` to `end`. Nonempty, never the
/// full circle.
struct Arc {
    BoundaryPoint start;
    BoundaryPoint end;

    Arc(BoundaryPoint s, BoundaryPoint e) : start(s), end(e) {
        double len = ccw_from(start, end);
        if (len <= kPointEps || len >= kTwoPi - kPointEps)
            throw DegenerateConfiguration("arc is empty or the full circle");
    }

    double length() const { return ccw_from(start, end); }

    bool contains_closed(BoundaryPoint p, double eps = kPointEps) const {
        double off = ccw_from(start, p);
        return off <= length() + eps || off >= kTwoPi - eps;
    }

    bool contains_open(BoundaryPoint p, double eps = kPointEps) const {
        double off = ccw_from(start, p);
        return off > eps && off < length() - eps;
    }
};

/// Box of geodesics [a,b] x [c,d]: geodesics with first endpoint in the arc
/// [a,b] and second endpoint in the disjoint arc [c,d]. The corners
/// (a, b, c, d) occur in counterclockwise cyclic order.
struct Box {
    Arc first;
    Arc second;

    Box(Arc f, Arc s) : first(f), second(s) {
        double b = ccw_from(first.start, first.end);
        double c = ccw_from(first.start, second.start);
        double d = ccw_from(first.start, second.end);
        if (!(b + kPointEps < c && c + kPointEps < d && d < kTwoPi - kPointEps))
            throw DegenerateConfiguration("box corners not in ccw order or arcs touch");
    }

    static Box from_angles(double a, double b, double c, double d) {
        return Box(Arc(BoundaryPoint(a), BoundaryPoint(b)),
                   Arc(BoundaryPoint(c), BoundaryPoint(d)));
    }

    BoundaryPoint a() const { return first.start; }
    BoundaryPoint b() const { return first.end; }
    BoundaryPoint c() const { return second.start; }
    BoundaryPoint d() const { return second.end; }

    std::array<BoundaryPoint, 4> corners() const { return {a(), b(), c(), d()}; }

    /// The box with the two arcs swapped (orientation-reversed geodesics).
    Box flipped() const { return Box(second, first); }
};

/// Liouville measure of a box: |log| of the corner cross-ratio.
inline double liouville_box(const Box& Q) {
    return std::abs(std::log(cross_ratio(Q.a(), Q.b(), Q.c(), Q.d())));
}

/// The canonical box Q* = [1, i] x [-1, -i], with L(Q*) = log 2.
inline Box q_star() {
    return Box::from_angles(0.0, 0.5 * std::numbers::pi, std::numbers::pi,
                            1.5 * std::numbers::pi);
}

/// Image box gamma(Q): the box spanned by the images of the corners.
inline Box map_box(const MobiusMap& gamma, const Box& Q) {
    return Box(Arc(gamma(Q.a()), gamma(Q.b())), Arc(gamma(Q.c()), gamma(Q.d())));
}

/// A box with L = log 2: the image of Q* under an isometry. Every log-2 box
/// arises this way since the cross-ratio is a complete Mobius invariant.
inline Box random_log2_box(const MobiusMap& gamma) {
    return map_box(gamma, q_star());
}

/// Complementary box [b,c] x [d,a]. Satisfies
/// exp(-L(Q)) + exp(-L(complementary_box(Q))) = 1.
inline Box complementary_box(const Box& Q) {
    return Box(Arc(Q.b(), Q.c()), Arc(Q.d(), Q.a()));
}

// ---------------------------------------------------------------------------
// Quadrature cross-check of the integral kernel form
// ---------------------------------------------------------------------------

namespace detail {

// Kernel dt ds / |e^{it} - e^{is}|^2 = dt ds / (4 sin^2((t-s)/2)).
inline double liouville_kernel(double t, double s) {
    double h = std::sin(0.5 * (t - s));
    return 1.0 / (4.0 * h * h);
}

struct QuadState {
    long double sum = 0.0L;
    std::uint64_t evals = 0;
    std::uint64_t budget = 0;
};

// Tensor 3-point Gauss-Legendre on one rectangle.
inline double gauss3x3(double t0, double t1, double s0, double s1) {
    constexpr double r = 0.774596669241483;  // sqrt(3/5)
    constexpr double w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double x[3] = {-r, 0.0, r};
    double tm = 0.5 * (t0 + t1), th = 0.5 * (t1 - t0);
    double sm = 0.5 * (s0 + s1), sh = 0.5 * (s1 - s0);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            acc += w[i] * w[j] * liouville_kernel(tm + th * x[i], sm + sh * x[j]);
    return acc * th * sh;
}

// Adaptive bisection; accept when one subdivision changes the Gauss value by
// at most the local tolerance.
inline void quad_rect(double t0, double t1, double s0, double s1, double tol,
                      int depth, QuadState& st) {
    double tm = 0.5 * (t0 + t1), sm = 0.5 * (s0 + s1);
    double coarse = gauss3x3(t0, t1, s0, s1);
    double fine = gauss3x3(t0, tm, s0, sm) + gauss3x3(t0, tm, sm, s1) +
                  gauss3x3(tm, t1, s0, sm) + gauss3x3(tm, t1, sm, s1);
    st.evals += 45;
    if (st.evals > st.budget)
        throw NoConvergence("liouville_quad: refinement budget exhausted");

    if (std::abs(fine - coarse) <= tol || depth >= 30) {
        st.sum += fine + (fine - coarse) / 63.0;
        return;
    }
    double ct = tol / 2.0;
    quad_rect(t0, tm, s0, sm, ct, depth + 1, st);
    quad_rect(t0, tm, sm, s1, ct, depth + 1, st);
    quad_rect(tm, t1, s0, sm, ct, depth + 1, st);
    quad_rect(tm, t1, sm, s1, ct, depth + 1, st);
}

}  // namespace detail

/// Liouville measure of a box by adaptive quadrature of the integral kernel.
/// Agrees with liouville_box within tol. The two arcs must be separated by at
/// least 1e-6 radians; closer than that only the closed form is offered.
inline double liouville_quad(const Box& Q, double tol,
                             std::uint64_t budget = 1'000'000) {
    if (tol < 1e-10) tol = 1e-10;
    double gap1 = ccw_from(Q.b(), Q.c());
    double gap2 = kTwoPi - ccw_from(Q.a(), Q.d());
    if (gap1 < 1e-6 || gap2 < 1e-6)
        throw DegenerateConfiguration("liouville_quad: arc separation below 1e-6");

    // Integrate over the angle rectangle; lift the second arc so the kernel
    // argument never wraps.
    double t0 = Q.a().angle;
    double t1 = t0 + Q.first.length();
    double s0 = t0 + ccw_from(Q.a(), Q.c());
    double s1 = s0 + Q.second.length();

    detail::QuadState st;
    st.budget = budget;
    detail::quad_rect(t0, t1, s0, s1, 0.25 * tol, 0, st);
    return static_cast<double>(st.sum);
}

// ---------------------------------------------------------------------------
// Fourth-point inversion
// ---------------------------------------------------------------------------

/// Solve liouville_box([a,b] x [c,d]) = target_L for the fourth corner d,
/// constrained to lie in `arc`. Closed form from the cross-ratio equation.
inline BoundaryPoint solve_fourth_point(BoundaryPoint a, BoundaryPoint b,
                                        BoundaryPoint c, double target_L,
                                        const Arc& arc) {
    if (target_L <= 0.0) throw DegenerateConfiguration("target_L must be positive");
    double k = std::exp(target_L);
    cplx za = a.unit(), zb = b.unit(), zc = c.unit();
    // (c-a)(d-b) = k (d-a)(c-b)  =>  d [(c-a) - k(c-b)] = b(c-a) - k a(c-b)
    cplx den = (zc - za) - k * (zc - zb);
    if (std::abs(den) < kPointEps)
        throw NoSolutionInArc("solve_fourth_point: degenerate linear system");
    cplx zd = (zb * (zc - za) - k * za * (zc - zb)) / den;
    BoundaryPoint d = BoundaryPoint::from_unit(zd);
    if (std::abs(std::abs(zd) - 1.0) > 1e-8)
        throw NoSolutionInArc("solve_fourth_point: solution off the circle");
    if (!arc.contains_closed(d, 1e-12))
        throw NoSolutionInArc("solve_fourth_point: solution outside target arc");
    double check = cross_ratio(a, b, c, d);
    if (std::abs(std::log(std::abs(check)) - target_L) > 1e-9)
        throw NoSolutionInArc("solve_fourth_point: forward validation failed");
    return d;
}

}  // namespace geocur
