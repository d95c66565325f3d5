#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "geocur/boundary.hpp"
#include "geocur/earthquake.hpp"
#include "geocur/errors.hpp"
#include "geocur/lamination.hpp"
#include "geocur/liouville.hpp"
#include "geocur/mobius.hpp"

namespace geocur {

/// Geodesic current as a box-evaluation functional. Variants: the Liouville
/// pullback of a circle homeomorphism, the atomic measure of a finite
/// lamination, and positive scalings of either.
class Current {
public:
    enum class Kind { pullback, lamination, scaled };

    static Current liouville_base() { return pullback(CircleMap()); }

    static Current pullback(CircleMap h) {
        Current c;
        c.kind_ = Kind::pullback;
        c.map_ = std::make_shared<CircleMap>(std::move(h));
        return c;
    }

    static Current lamination(FiniteLamination lam,
                              BoundaryMode mode = BoundaryMode::include) {
        require_valid(lam);
        Current c;
        c.kind_ = Kind::lamination;
        c.lam_ = std::make_shared<FiniteLamination>(std::move(lam));
        c.mode_ = mode;
        return c;
    }

    static Current scaled(double factor, Current inner) {
        if (!(factor > 0.0)) throw Error("Current::scaled: factor must be positive");
        Current c;
        c.kind_ = Kind::scaled;
        c.factor_ = factor;
        c.inner_ = std::make_shared<Current>(std::move(inner));
        return c;
    }

    Kind kind() const { return kind_; }

    bool is_pullback() const { return kind_ == Kind::pullback; }

    const CircleMap& map() const {
        if (kind_ != Kind::pullback) throw UnsupportedVariant("not a pullback current");
        return *map_;
    }

    double value(const Box& Q) const {
        switch (kind_) {
            case Kind::pullback:
                return liouville_value(*map_, Q);
            case Kind::lamination:
                return lamination_box_mass(*lam_, Q, mode_);
            case Kind::scaled:
                return factor_ * inner_->value(Q);
        }
        return 0.0;
    }

private:
    Current() = default;

    Kind kind_ = Kind::pullback;
    std::shared_ptr<const CircleMap> map_;
    std::shared_ptr<const FiniteLamination> lam_;
    BoundaryMode mode_ = BoundaryMode::include;
    double factor_ = 1.0;
    std::shared_ptr<const Current> inner_;
};

inline double current_value(const Current& alpha, const Box& Q) {
    return alpha.value(Q);
}

// ---------------------------------------------------------------------------
// Isometry sampling
// ---------------------------------------------------------------------------

/// Seeded generator of hyperbolic translations: axis endpoints uniform on
/// S^1, translation length exponential with the given mean, truncated at
/// max_length to keep box corners numerically resolvable.
struct IsometrySampler {
    std::uint64_t seed = 1;
    int count = 64;
    double length_scale = 1.0;
    double max_length = 6.0;
    bool include_identity = true;

    std::vector<MobiusMap> samples() const {
        std::vector<MobiusMap> out;
        out.reserve(static_cast<std::size_t>(count) + (include_identity ? 1 : 0));
        if (include_identity) out.push_back(MobiusMap::identity());
        std::mt19937_64 rng(seed);
        for (int i = 0; i < count; ++i)
            out.push_back(detail::random_translation(rng, length_scale, max_length));
        return out;
    }
};

/// Sampled lower bound for sup over boxes with L(Q) = log 2 of alpha(Q),
/// realized as alpha(gamma Q*) over the sampler's isometries.
inline double sup_norm_estimate(const Current& alpha, const IsometrySampler& sampler) {
    double best = 0.0;
    for (const auto& g : sampler.samples())
        best = std::max(best, alpha.value(random_log2_box(g)));
    return best;
}

/// Max over the box list of |alpha(Q) - beta(Q)|.
inline double weak_discrepancy(const Current& alpha, const Current& beta,
                               const std::vector<Box>& boxes) {
    double worst = 0.0;
    for (const auto& Q : boxes)
        worst = std::max(worst, std::abs(alpha.value(Q) - beta.value(Q)));
    return worst;
}

/// Max over sampled isometries gamma and base boxes Q of
/// |alpha(gamma Q) - beta(gamma Q)| -- the box-based surrogate of the
/// uniform weak* distance.
inline double uniform_discrepancy(const Current& alpha, const Current& beta,
                                  const IsometrySampler& sampler,
                                  const std::vector<Box>& base_boxes) {
    double worst = 0.0;
    for (const auto& g : sampler.samples())
        for (const auto& Q : base_boxes) {
            Box gQ = map_box(g, Q);
            worst = std::max(worst, std::abs(alpha.value(gQ) - beta.value(gQ)));
        }
    return worst;
}

/// |exp(-alpha(Q)) + exp(-alpha(complementary_box(Q))) - 1|. Vanishes on
/// Liouville pullbacks; positive on lamination currents.
inline double bonahon_residual(const Current& alpha, const Box& Q) {
    return std::abs(std::exp(-alpha.value(Q)) +
                    std::exp(-alpha.value(complementary_box(Q))) - 1.0);
}

/// Mapping-class action on pullback currents: Pullback(h) maps to
/// Pullback(normalize(h o g^{-1})).
inline Current mcg_pushforward(const CircleMap& g, const Current& alpha) {
    if (!alpha.is_pullback())
        throw UnsupportedVariant("mcg_pushforward: only pullback currents");
    return Current::pullback(normalize_fix_three(compose(alpha.map(), g.inverse())));
}

/// Q* plus 24 deterministic Mobius images spanning thin, fat and skewed
/// shapes. Fixed regression geometry, independent of any seed.
inline std::vector<Box> default_base_boxes() {
    std::vector<Box> boxes;
    boxes.push_back(q_star());
    const Geodesic diameter(BoundaryPoint(std::numbers::pi), BoundaryPoint(0.0));
    const Geodesic skew(BoundaryPoint(0.4), BoundaryPoint(2.9));
    for (int k = 0; k < 4; ++k) {
        MobiusMap rot = MobiusMap::rotation(0.25 * kTwoPi * k + 0.37);
        for (double len : {0.5, 1.5, 3.0}) {
            boxes.push_back(map_box(rot * hyperbolic_translation(diameter, len), q_star()));
            boxes.push_back(map_box(rot * hyperbolic_translation(skew, len), q_star()));
        }
    }
    return boxes;
}

}  // namespace geocur
