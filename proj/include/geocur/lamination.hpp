#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "geocur/boundary.hpp"
#include "geocur/errors.hpp"
#include "geocur/liouville.hpp"
#include "geocur/mobius.hpp"

namespace geocur {

/// Transversal-intersection test on endpoint cyclic order. Geodesics sharing
/// an endpoint are non-crossing by convention.
inline bool geodesics_cross(const Geodesic& g1, const Geodesic& g2) {
    if (same_point(g1.p, g2.p) || same_point(g1.p, g2.q) ||
        same_point(g1.q, g2.p) || same_point(g1.q, g2.q))
        return false;
    return endpoints_interleave(g1, g2);
}

struct Leaf {
    Geodesic geodesic;  // unoriented canonical form
    double weight;

    Leaf(Geodesic g, double w) : geodesic(g.unoriented()), weight(w) {}
};

/// Finitely many pairwise non-crossing weighted geodesics. As a geodesic
/// current: each leaf of weight m carries an atom of mass m at each of its
/// two orientations.
struct FiniteLamination {
    std::vector<Leaf> leaves;

    FiniteLamination() = default;
    explicit FiniteLamination(std::vector<Leaf> ls) : leaves(std::move(ls)) {}

    double total_mass() const {
        double s = 0.0;
        for (const auto& l : leaves) s += l.weight;
        return s;
    }

    FiniteLamination scaled(double t) const {
        FiniteLamination out;
        out.leaves.reserve(leaves.size());
        for (const auto& l : leaves) out.leaves.emplace_back(l.geodesic, t * l.weight);
        return out;
    }
};

struct LaminationReport {
    bool ok = true;
    std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs;
    std::vector<std::size_t> nonpositive_weights;
};

inline LaminationReport validate_lamination(const FiniteLamination& lam) {
    LaminationReport rep;
    for (std::size_t i = 0; i < lam.leaves.size(); ++i) {
        if (!(lam.leaves[i].weight > 0.0)) {
            rep.ok = false;
            rep.nonpositive_weights.push_back(i);
        }
        for (std::size_t j = i + 1; j < lam.leaves.size(); ++j) {
            if (geodesics_cross(lam.leaves[i].geodesic, lam.leaves[j].geodesic)) {
                rep.ok = false;
                rep.crossing_pairs.emplace_back(i, j);
            }
        }
    }
    return rep;
}

inline void require_valid(const FiniteLamination& lam) {
    LaminationReport rep = validate_lamination(lam);
    if (!rep.nonpositive_weights.empty())
        throw NonpositiveWeight("lamination has a nonpositive leaf weight");
    if (!rep.crossing_pairs.empty())
        throw CrossingLeaves("lamination has crossing leaves");
}

// ---------------------------------------------------------------------------
// Box masses
// ---------------------------------------------------------------------------

enum class BoundaryMode { include, exclude };

/// Mass of the oriented atoms (p, q) with p in [a,b] and q in [c,d]. The mode
/// controls whether atoms with an endpoint exactly on the box boundary count.
inline double lamination_box_mass(const FiniteLamination& lam, const Box& Q,
                                  BoundaryMode mode = BoundaryMode::include) {
    auto in_arc = [&](const Arc& arc, BoundaryPoint p) {
        return mode == BoundaryMode::include ? arc.contains_closed(p)
                                             : arc.contains_open(p);
    };
    double mass = 0.0;
    for (const auto& l : lam.leaves) {
        BoundaryPoint p = l.geodesic.p, q = l.geodesic.q;
        if (in_arc(Q.first, p) && in_arc(Q.second, q)) mass += l.weight;
        if (in_arc(Q.first, q) && in_arc(Q.second, p)) mass += l.weight;
    }
    return mass;
}

// ---------------------------------------------------------------------------
// Thurston norm estimation
// ---------------------------------------------------------------------------

namespace detail {

// Half-plane coordinate of a disk boundary point pulled back by gamma^{-1}.
inline double pullback_real(const MobiusMap& gamma_inv, BoundaryPoint p) {
    return cayley_to_line(gamma_inv(p));
}

inline MobiusMap random_translation(std::mt19937_64& rng, double length_scale,
                                    double max_length) {
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double t1 = ang(rng), t2 = ang(rng);
    while (angular_distance(BoundaryPoint(t1), BoundaryPoint(t2)) < 1e-3)
        t2 = ang(rng);
    double u = uni(rng);
    double len = std::min(-length_scale * std::log1p(-u), max_length);
    if (len <= 0.0) len = 1e-6;
    return hyperbolic_translation(Geodesic(BoundaryPoint(t1), BoundaryPoint(t2)), len);
}

}  // namespace detail

struct ThurstonEstimate {
    double lower;  // sampled lower bound
    double upper;  // comparability bound; may be loose
};

/// Sampled two-sided estimate of sup over unit-length hyperbolic arcs J of
/// the leaf mass crossing J. The lower bound maximizes over n_samples random
/// unit arcs; the upper bound is (L(Q*)/log 2 + 1) times a sampled box-mass
/// sup over log-2 boxes.
inline ThurstonEstimate thurston_norm_estimate(const FiniteLamination& lam,
                                               int n_samples,
                                               std::uint64_t seed = 20240901u) {
    require_valid(lam);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);

    // Base arc: the segment of the diameter (-1, 1) from the origin to
    // hyperbolic distance 1, which in half-plane coordinates is the segment
    // of the imaginary axis at heights [1, e]. A leaf pulled back to real
    // endpoints (p, q) crosses it iff p q < 0 and 1 <= sqrt(-p q) <= e.
    double lower = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        MobiusMap gamma = MobiusMap::rotation(ang(rng)) *
                          detail::random_translation(rng, 1.0, 6.0);
        MobiusMap ginv = gamma.inverse();
        double crossed = 0.0;
        for (const auto& l : lam.leaves) {
            double p = detail::pullback_real(ginv, l.geodesic.p);
            double q = detail::pullback_real(ginv, l.geodesic.q);
            if (!std::isfinite(p) || !std::isfinite(q)) continue;
            if (p * q < 0.0) {
                double h = std::sqrt(-p * q);
                if (h >= 1.0 && h <= std::numbers::e) crossed += l.weight;
            }
        }
        lower = std::max(lower, crossed);
    }

    // Comparability upper bound via sampled log-2 boxes.
    std::mt19937_64 rng2(seed ^ 0x9e3779b97f4a7c15ull);
    double sup_mass = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        MobiusMap gamma = MobiusMap::rotation(ang(rng2)) *
                          detail::random_translation(rng2, 1.0, 6.0);
        sup_mass = std::max(sup_mass,
                            lamination_box_mass(lam, random_log2_box(gamma)));
    }
    double upper = 2.0 * sup_mass;  // L(Q*)/log 2 + 1 = 2
    return {lower, std::max(upper, lower)};
}

// ---------------------------------------------------------------------------
// Families and discretization
// ---------------------------------------------------------------------------

/// One-parameter family of disjoint geodesics s -> (p(s), q(s)) on [s0, s1]
/// carrying a piecewise-constant density w(s) >= 0.
struct FamilySpec {
    double s0, s1;
    std::function<BoundaryPoint(double)> first;
    std::function<BoundaryPoint(double)> second;
    // density_breaks has size k+1 spanning [s0, s1]; density_values size k.
    std::vector<double> density_breaks;
    std::vector<double> density_values;

    static FamilySpec uniform(double s0, double s1,
                              std::function<BoundaryPoint(double)> p,
                              std::function<BoundaryPoint(double)> q) {
        return FamilySpec{s0, s1, std::move(p), std::move(q), {s0, s1}, {1.0}};
    }

    Geodesic geodesic_at(double s) const { return Geodesic(first(s), second(s)); }

    double total_mass() const {
        double m = 0.0;
        for (std::size_t i = 0; i < density_values.size(); ++i)
            m += density_values[i] * (density_breaks[i + 1] - density_breaks[i]);
        return m;
    }

    /// Mass of parameters in [s0, s].
    double cumulative(double s) const {
        double m = 0.0;
        for (std::size_t i = 0; i < density_values.size(); ++i) {
            double lo = density_breaks[i], hi = density_breaks[i + 1];
            if (s <= lo) break;
            m += density_values[i] * (std::min(s, hi) - lo);
        }
        return m;
    }

    /// Parameter with cumulative mass exactly `target`.
    double inverse_cumulative(double target) const {
        double m = 0.0;
        for (std::size_t i = 0; i < density_values.size(); ++i) {
            double lo = density_breaks[i], hi = density_breaks[i + 1];
            double seg = density_values[i] * (hi - lo);
            if (m + seg >= target && density_values[i] > 0.0)
                return lo + (target - m) / density_values[i];
            m += seg;
        }
        return s1;
    }

    void validate(int grid = 1000) const {
        std::mt19937_64 rng(0x5eedfa111ull);
        std::uniform_real_distribution<double> uni(s0, s1);
        for (int i = 0; i < grid; ++i) {
            double sa = uni(rng), sb = uni(rng);
            if (std::abs(sa - sb) < 1e-9 * (s1 - s0)) continue;
            if (geodesics_cross(geodesic_at(sa), geodesic_at(sb)))
                throw CrossingFamily("family geodesics interleave");
        }
    }
};

/// Finite approximation by equal-mass binning: n leaves at the mass-median
/// parameter of each bin, each carrying the bin's total mass.
inline FiniteLamination discretize_family(const FamilySpec& spec, int n) {
    spec.validate();
    double W = spec.total_mass();
    FiniteLamination out;
    out.leaves.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = spec.inverse_cumulative(W * (i + 0.5) / n);
        out.leaves.emplace_back(spec.geodesic_at(s), W / n);
    }
    require_valid(out);
    return out;
}

/// Box mass of the continuous family: integral of w over parameters whose
/// geodesic lies in Q (either orientation). Midpoint rule on a fine grid.
inline double family_box_mass(const FamilySpec& spec, const Box& Q,
                              int grid = 200'000) {
    double ds = (spec.s1 - spec.s0) / grid;
    double mass = 0.0;
    std::size_t seg = 0;
    for (int i = 0; i < grid; ++i) {
        double s = spec.s0 + (i + 0.5) * ds;
        while (seg + 1 < spec.density_values.size() && s > spec.density_breaks[seg + 1])
            ++seg;
        double w = spec.density_values[seg];
        if (w == 0.0) continue;
        Geodesic g = spec.geodesic_at(s);
        bool inside = (Q.first.contains_closed(g.p) && Q.second.contains_closed(g.q)) ||
                      (Q.first.contains_closed(g.q) && Q.second.contains_closed(g.p));
        if (inside) mass += w * ds;
    }
    return mass;
}

// ---------------------------------------------------------------------------
// Generic boxes
// ---------------------------------------------------------------------------

/// Perturb the corners of Q by at most max_shift so that no leaf endpoint of
/// lam lies on the boundary of the result. `grow` selects the preferred shift
/// direction (outward when true).
inline Box generic_box(const Box& Q, const FiniteLamination& lam, double max_shift,
                       bool grow = true) {
    constexpr double clear_eps = 1e-9;
    std::vector<double> endpoints;
    endpoints.reserve(2 * lam.leaves.size());
    for (const auto& l : lam.leaves) {
        endpoints.push_back(l.geodesic.p.angle);
        endpoints.push_back(l.geodesic.q.angle);
    }
    auto clear = [&](double angle) {
        for (double e : endpoints)
            if (angular_distance(BoundaryPoint(angle), BoundaryPoint(e)) < clear_eps)
                return false;
        return true;
    };

    std::array<double, 4> c = {Q.a().angle, Q.a().angle + ccw_from(Q.a(), Q.b()),
                               Q.a().angle + ccw_from(Q.a(), Q.c()),
                               Q.a().angle + ccw_from(Q.a(), Q.d())};
    // Outward direction per corner: a and c move clockwise, b and d ccw.
    const std::array<double, 4> outward = {-1.0, +1.0, -1.0, +1.0};
    for (int k = 0; k < 4; ++k) {
        if (clear(c[k])) continue;
        bool fixed = false;
        for (int j = 1; j <= 32 && !fixed; ++j) {
            for (double sgn : {grow ? outward[k] : -outward[k], grow ? -outward[k] : outward[k]}) {
                double cand = c[k] + sgn * max_shift * j / 32.0;
                if (!clear(cand)) continue;
                std::array<double, 4> trial = c;
                trial[k] = cand;
                if (trial[0] + kPointEps < trial[1] && trial[1] + kPointEps < trial[2] &&
                    trial[2] + kPointEps < trial[3] &&
                    trial[3] - trial[0] < kTwoPi - kPointEps) {
                    c = trial;
                    fixed = true;
                    break;
                }
            }
        }
        if (!fixed)
            throw CannotSeparate("generic_box: endpoints denser than max_shift allows");
    }
    return Box::from_angles(c[0], c[1], c[2], c[3]);
}

}  // namespace geocur
