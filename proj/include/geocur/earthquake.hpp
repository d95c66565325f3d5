#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "geocur/boundary.hpp"
#include "geocur/errors.hpp"
#include "geocur/lamination.hpp"
#include "geocur/liouville.hpp"
#include "geocur/mobius.hpp"

namespace geocur {

/// Orientation-preserving piecewise-Mobius homeomorphism of S^1. Pieces are
/// indexed by the counterclockwise arcs between consecutive breakpoints; a
/// point exactly at a breakpoint evaluates via the arc starting there.
class CircleMap {
public:
    CircleMap() : pieces_(1) {}  // identity

    CircleMap(std::vector<double> breakpoints, std::vector<MobiusMap> pieces)
        : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (breakpoints_.empty()) {
            if (pieces_.size() != 1)
                throw Error("CircleMap: global map requires exactly one piece");
            return;
        }
        if (breakpoints_.size() != pieces_.size())
            throw Error("CircleMap: breakpoint/piece count mismatch");
        if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()))
            throw Error("CircleMap: breakpoints not sorted");
    }

    static CircleMap mobius(const MobiusMap& m) { return CircleMap({}, {m}); }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<MobiusMap>& pieces() const { return pieces_; }

    std::size_t piece_index(double angle) const {
        if (breakpoints_.empty()) return 0;
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), angle);
        if (it == breakpoints_.begin()) return breakpoints_.size() - 1;
        return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    }

    const MobiusMap& piece_at(double angle) const { return pieces_[piece_index(angle)]; }

    BoundaryPoint operator()(BoundaryPoint p) const { return piece_at(p.angle)(p); }

    /// Midpoint of the arc with the given piece index.
    double arc_midpoint(std::size_t i) const {
        if (breakpoints_.empty()) return 0.0;
        double lo = breakpoints_[i];
        double hi = (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1]
                                                  : breakpoints_[0] + kTwoPi;
        return wrap_angle(0.5 * (lo + hi));
    }

    CircleMap inverse() const {
        if (breakpoints_.empty()) return CircleMap({}, {pieces_[0].inverse()});
        std::vector<std::pair<double, MobiusMap>> recs;
        recs.reserve(breakpoints_.size());
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            BoundaryPoint img = pieces_[i](BoundaryPoint(breakpoints_[i]));
            recs.emplace_back(img.angle, pieces_[i].inverse());
        }
        std::sort(recs.begin(), recs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<double> bps;
        std::vector<MobiusMap> ps;
        for (auto& r : recs) {
            bps.push_back(r.first);
            ps.push_back(r.second);
        }
        return CircleMap(std::move(bps), std::move(ps));
    }

    /// Largest jump across any breakpoint (chordal distance of the one-sided
    /// limits). Zero for a genuine homeomorphism up to roundoff.
    double max_discontinuity() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            BoundaryPoint bp(breakpoints_[i]);
            std::size_t prev = (i == 0) ? breakpoints_.size() - 1 : i - 1;
            BoundaryPoint from_left = pieces_[prev](bp);
            BoundaryPoint from_right = pieces_[i](bp);
            worst = std::max(worst, std::abs(from_left.unit() - from_right.unit()));
        }
        return worst;
    }

    /// Cyclic-order preservation on a deterministic grid of point triples.
    bool preserves_cyclic_order(int n_triples = 1000,
                                std::uint64_t seed = 0xc1c1eull) const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ang(0.0, kTwoPi);
        for (int i = 0; i < n_triples; ++i) {
            BoundaryPoint a(ang(rng)), b(ang(rng)), c(ang(rng));
            if (same_point(a, b, 1e-6) || same_point(b, c, 1e-6) || same_point(a, c, 1e-6))
                continue;
            if (ccw_order(a, b, c) != ccw_order((*this)(a), (*this)(b), (*this)(c)))
                return false;
        }
        return true;
    }

private:
    std::vector<double> breakpoints_;  // sorted, empty for a global map
    std::vector<MobiusMap> pieces_;
};

/// f after g, as circle maps.
inline CircleMap compose(const CircleMap& f, const CircleMap& g) {
    if (f.breakpoints().empty() && g.breakpoints().empty())
        return CircleMap::mobius(f.pieces()[0] * g.pieces()[0]);

    CircleMap ginv = g.inverse();
    std::vector<double> bps = g.breakpoints();
    for (double bf : f.breakpoints()) bps.push_back(ginv(BoundaryPoint(bf)).angle);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [](double a, double b) { return std::abs(a - b) < kPointEps; }),
              bps.end());
    if (bps.size() > 1 && (bps.back() - bps.front()) > kTwoPi - kPointEps)
        bps.pop_back();
    if (bps.empty()) return CircleMap::mobius(f.pieces()[0] * g.pieces()[0]);

    std::vector<MobiusMap> ps;
    ps.reserve(bps.size());
    for (std::size_t i = 0; i < bps.size(); ++i) {
        double lo = bps[i];
        double hi = (i + 1 < bps.size()) ? bps[i + 1] : bps[0] + kTwoPi;
        double mid = wrap_angle(0.5 * (lo + hi));
        BoundaryPoint gm = g(BoundaryPoint(mid));
        ps.push_back(f.piece_at(gm.angle) * g.piece_at(mid));
    }
    return CircleMap(std::move(bps), std::move(ps));
}

/// Image box h(Q): the box spanned by the h-images of the corners.
inline Box map_box(const CircleMap& h, const Box& Q) {
    return Box(Arc(h(Q.a()), h(Q.b())), Arc(h(Q.c()), h(Q.d())));
}

/// L(h(Q)) computed through the Mobius pieces rather than from image corner
/// angles. Corner images collapse together at rate e^{-t m} along earthquake
/// paths, far below what angle coordinates can resolve; the SU(1,1) identity
///   g(z1) - g(z2) = (z1 - z2) / ((conj(v) z1 + conj(u)) (conj(v) z2 + conj(u)))
/// (det = 1) evaluates such chord differences with full relative precision
/// when both corners share a piece. Cross-piece differences route one corner
/// through the comparison map of the two pieces first.
inline double liouville_value(const CircleMap& h, const Box& Q) {
    auto diff = [&](BoundaryPoint x, BoundaryPoint y) -> cplx {
        std::size_t ix = h.piece_index(x.angle), iy = h.piece_index(y.angle);
        const MobiusMap& g = h.pieces()[iy];
        cplx zy = y.unit();
        cplx w = (ix == iy)
                     ? x.unit()
                     : (g.inverse() * h.pieces()[ix]).apply_complex(x.unit());
        cplx dw = std::conj(g.v()) * w + std::conj(g.u());
        cplx dy = std::conj(g.v()) * zy + std::conj(g.u());
        return (w - zy) / (dw * dy);
    };
    cplx num = diff(Q.c(), Q.a()) * diff(Q.d(), Q.b());
    cplx den = diff(Q.d(), Q.a()) * diff(Q.c(), Q.b());
    if (num == cplx(0.0) || den == cplx(0.0))
        throw DegenerateConfiguration("liouville_value: collapsed corner images");
    return std::abs(std::log(std::abs(num / den)));
}

// ---------------------------------------------------------------------------
// Earthquake maps
// ---------------------------------------------------------------------------

/// Left-earthquake boundary map of a finite lamination. The gap whose closure
/// contains base_ref carries the identity; the map on any other gap is the
/// composition of left translations along the leaves separating it from the
/// base gap, nearest-to-base first.
struct EarthquakeMap {
    FiniteLamination lamination;
    BoundaryPoint base_ref;
    CircleMap boundary;
    // Per boundary arc: indices of separating leaves, nearest-to-base first.
    std::vector<std::vector<std::size_t>> separating;
    // Left translation along each leaf, same indexing as lamination.leaves.
    std::vector<MobiusMap> leaf_translation;
};

namespace detail {

// Leaf l strictly separates x from y on S^1.
inline bool leaf_separates(const Geodesic& l, BoundaryPoint x, BoundaryPoint y) {
    double len = ccw_from(l.p, l.q);
    bool xin = ccw_from(l.p, x) < len;
    bool yin = ccw_from(l.p, y) < len;
    return xin != yin;
}

// Leaf a weakly separates base from leaf b: both endpoints of b lie in the
// closed arc of a not containing base.
inline bool weakly_separates(const Geodesic& a, const Geodesic& b, BoundaryPoint base) {
    double len = ccw_from(a.p, a.q);
    bool base_near = ccw_from(a.p, base) < len;
    auto in_far_closed = [&](BoundaryPoint x) {
        if (same_point(x, a.p) || same_point(x, a.q)) return true;
        bool near = ccw_from(a.p, x) < len;
        return near != base_near;
    };
    return in_far_closed(b.p) && in_far_closed(b.q);
}

}  // namespace detail

inline EarthquakeMap build_earthquake(const FiniteLamination& lam,
                                      BoundaryPoint base_ref) {
    require_valid(lam);
    for (const auto& l : lam.leaves)
        if (same_point(base_ref, l.geodesic.p) || same_point(base_ref, l.geodesic.q))
            throw BaseOnLeaf("base reference point is a leaf endpoint");

    EarthquakeMap E;
    E.lamination = lam;
    E.base_ref = base_ref;
    if (lam.leaves.empty()) {
        E.boundary = CircleMap();
        E.separating = {{}};
        return E;
    }

    // Boundary arcs between consecutive leaf endpoints.
    std::vector<double> bps;
    bps.reserve(2 * lam.leaves.size());
    for (const auto& l : lam.leaves) {
        bps.push_back(l.geodesic.p.angle);
        bps.push_back(l.geodesic.q.angle);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [](double a, double b) { return std::abs(a - b) < kPointEps; }),
              bps.end());

    // Per-leaf left translation: the attracting fixed point is the endpoint
    // reached second when traversing S^1 counterclockwise from base_ref.
    E.leaf_translation.reserve(lam.leaves.size());
    for (const auto& l : lam.leaves) {
        const Geodesic& g = l.geodesic;
        bool p_first = ccw_from(base_ref, g.p) < ccw_from(base_ref, g.q);
        E.leaf_translation.push_back(hyperbolic_translation(
            g, l.weight, p_first ? AxisEndpoint::second : AxisEndpoint::first));
    }
    const std::vector<MobiusMap>& leaf_translation = E.leaf_translation;

    std::vector<MobiusMap> pieces;
    pieces.reserve(bps.size());
    E.separating.reserve(bps.size());
    for (std::size_t i = 0; i < bps.size(); ++i) {
        double lo = bps[i];
        double hi = (i + 1 < bps.size()) ? bps[i + 1] : bps[0] + kTwoPi;
        BoundaryPoint mid(0.5 * (lo + hi));

        std::vector<std::size_t> sep;
        for (std::size_t k = 0; k < lam.leaves.size(); ++k)
            if (detail::leaf_separates(lam.leaves[k].geodesic, base_ref, mid))
                sep.push_back(k);
        std::sort(sep.begin(), sep.end(), [&](std::size_t a, std::size_t b) {
            return detail::weakly_separates(lam.leaves[a].geodesic,
                                            lam.leaves[b].geodesic, base_ref);
        });

        MobiusMap m;  // identity
        for (std::size_t k : sep) m = m * leaf_translation[k];
        pieces.push_back(m);
        E.separating.push_back(std::move(sep));
    }
    E.boundary = CircleMap(std::move(bps), std::move(pieces));
    return E;
}

inline CircleMap earthquake_boundary_map(const EarthquakeMap& E) {
    return E.boundary;
}

namespace detail {

// log |conj(v_T) w + conj(u_T)| for w below T and w_above = T(w). The same
// quantity seen from T^{-1} at w_above is its exact reciprocal; whichever of
// the two comes out >= 1 is the numerically trustworthy one.
inline double log_conformal_factor(const MobiusMap& T, cplx w, cplx w_above) {
    double below = std::abs(std::conj(T.v()) * w + std::conj(T.u()));
    MobiusMap S = T.inverse();
    double above = std::abs(std::conj(S.v()) * w_above + std::conj(S.u()));
    return (below >= above) ? std::log(below) : -std::log(above);
}

}  // namespace detail

/// L(E(Q)) evaluated through the leaf structure instead of the assembled
/// pieces. Corner chords contract like e^{-t m} along scaled earthquakes;
/// here each chord difference is telescoped one leaf translation at a time,
///   |g(z1) - g(z2)| = |z1 - z2| / (|conj(v) z1 + conj(u)| |conj(v) z2 + conj(u)|),
/// accumulating the conformal factors in log space. This never multiplies
/// piece matrices together, so the precision loss of forming comparison maps
/// from two nearly-equal huge products does not arise; accuracy degrades only
/// with the shear of a single leaf, not with the total shear of the chain.
inline double liouville_value(const EarthquakeMap& E, const Box& Q) {
    const CircleMap& h = E.boundary;
    const std::vector<MobiusMap>& T = E.leaf_translation;

    // log |h(x) - h(y)| via the separating chains of the two corners.
    auto logdiff = [&](BoundaryPoint x, BoundaryPoint y) -> double {
        const std::vector<std::size_t>* sx = &E.separating[h.piece_index(x.angle)];
        const std::vector<std::size_t>* sy = &E.separating[h.piece_index(y.angle)];
        std::size_t c = 0;
        while (c < sx->size() && c < sy->size() && (*sx)[c] == (*sy)[c]) ++c;
        // Peel the longer specific chain; the other point is pulled back
        // through it, so the base chord is measured in that corner's frame.
        cplx zx = x.unit(), zy = y.unit();
        if (sy->size() - c > sx->size() - c) {
            std::swap(sx, sy);
            std::swap(zx, zy);
        }

        // Intermediate images, innermost factor (farthest from base) first:
        // wx[j] is zx after the last (size - j) factors of sx, wx[0] = h(x).
        auto chain_images = [&](const std::vector<std::size_t>& s, cplx z) {
            std::vector<cplx> w(s.size() + 1);
            w[s.size()] = z;
            for (std::size_t j = s.size(); j-- > 0;)
                w[j] = T[s[j]].apply_complex(w[j + 1]);
            return w;
        };
        std::vector<cplx> wx = chain_images(*sx, zx);
        std::vector<cplx> wy = chain_images(*sy, zy);

        double acc = 0.0;
        // Shared prefix: both corners sit below every common factor.
        for (std::size_t j = 0; j < c; ++j)
            acc -= detail::log_conformal_factor(T[(*sx)[j]], wx[j + 1], wx[j]) +
                   detail::log_conformal_factor(T[(*sy)[j]], wy[j + 1], wy[j]);
        // x-specific factors: pull the y point back through each one.
        cplx q = wy[c];
        for (std::size_t j = c; j < sx->size(); ++j) {
            cplx q_below = T[(*sx)[j]].inverse().apply_complex(q);
            acc -= detail::log_conformal_factor(T[(*sx)[j]], wx[j + 1], wx[j]) +
                   detail::log_conformal_factor(T[(*sx)[j]], q_below, q);
            q = q_below;
        }
        double base = std::abs(zx - q);
        if (base == 0.0)
            throw DegenerateConfiguration("liouville_value: collapsed corner images");
        return std::log(base) + acc;
    };

    double log_cr = logdiff(Q.c(), Q.a()) + logdiff(Q.d(), Q.b()) -
                    logdiff(Q.d(), Q.a()) - logdiff(Q.c(), Q.b());
    return std::abs(log_cr);
}

// ---------------------------------------------------------------------------
// Normalization and quasisymmetric estimates
// ---------------------------------------------------------------------------

/// Post-compose with the isometry sending (h(1), h(i), h(-1)) back to
/// (1, i, -1); the result fixes the three points.
inline CircleMap normalize_fix_three(const CircleMap& h) {
    const BoundaryPoint one(0.0), eye(0.5 * std::numbers::pi), mone(std::numbers::pi);
    MobiusMap gamma =
        mobius_from_three_pairs({h(one), h(eye), h(mone)}, {one, eye, mone});
    std::vector<MobiusMap> ps;
    ps.reserve(h.pieces().size());
    for (const auto& p : h.pieces()) ps.push_back(gamma * p);
    return CircleMap(h.breakpoints(), std::move(ps));
}

/// Sampled lower bound for the quasisymmetric constant: sup over (x, t) of
/// the symmetrized M-ratio |h(e^{i(x+t)}) - h(e^{ix})| / |h(e^{ix}) - h(e^{i(x-t)})|.
inline double qs_constant_estimate(const CircleMap& h, int n_samples,
                                   std::uint64_t seed = 0x9572ab1eull) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> logt(std::log(1e-3),
                                                std::log(0.5 * std::numbers::pi));
    double best = 1.0;
    for (int i = 0; i < n_samples; ++i) {
        double x = ang(rng);
        double t = std::exp(logt(rng));
        auto hp = h(BoundaryPoint(x + t)).unit();
        auto hm = h(BoundaryPoint(x - t)).unit();
        auto h0 = h(BoundaryPoint(x)).unit();
        double num = std::abs(hp - h0), den = std::abs(h0 - hm);
        if (num <= 0.0 || den <= 0.0) continue;
        double r = num / den;
        best = std::max(best, std::max(r, 1.0 / r));
    }
    return best;
}

/// Sampled Teichmuller convergence gauge: qs distortion of h_n o h^{-1},
/// minus one. Tends to zero along Teichmuller-convergent sequences.
inline double teich_convergence_gauge(const CircleMap& h_n, const CircleMap& h,
                                      int n_samples,
                                      std::uint64_t seed = 0x9572ab1eull) {
    return qs_constant_estimate(compose(h_n, h.inverse()), n_samples, seed) - 1.0;
}

}  // namespace geocur
