#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "geocur/liouville.hpp"
#include "oracles.hpp"

using namespace geocur;
using Catch::Approx;

TEST_CASE("liouville_box of the canonical box is log 2") {
    CHECK(liouville_box(q_star()) == Approx(std::numbers::ln2).margin(1e-12));
}

TEST_CASE("liouville_box of the Cayley image of (0, 1, inf, -1) is log 2") {
    Box Q(Arc(cayley_to_disk(0.0), cayley_to_disk(1.0)),
          Arc(cayley_to_disk(kInf), cayley_to_disk(-1.0)));
    CHECK(liouville_box(Q) == Approx(std::numbers::ln2).margin(1e-12));
}

TEST_CASE("liouville_box vanishes as an arc collapses") {
    Box thin = Box::from_angles(0.0, 1e-6, 1.0, 2.0);
    CHECK(liouville_box(thin) < 1e-5);
    CHECK(liouville_box(thin) > 0.0);
}

TEST_CASE("liouville_box additivity under arc splits") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Box Q = oracles::random_box(rng);
        double a = Q.a().angle;
        double blen = ccw_from(Q.a(), Q.b());
        double mid = a + blen * (0.1 + 0.8 * uni(rng));
        Box left = Box(Arc(Q.a(), BoundaryPoint(mid)), Q.second);
        Box right = Box(Arc(BoundaryPoint(mid), Q.b()), Q.second);
        REQUIRE(std::abs(liouville_box(left) + liouville_box(right) - liouville_box(Q)) <=
                1e-10);
    }
}

TEST_CASE("liouville_box Mobius invariance") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
        Box Q = oracles::random_box(rng);
        MobiusMap g = oracles::random_mobius(rng);
        REQUIRE(std::abs(liouville_box(map_box(g, Q)) - liouville_box(Q)) <= 1e-9);
    }
}

TEST_CASE("liouville_box flip invariance") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        Box Q = oracles::random_box(rng);
        REQUIRE(std::abs(liouville_box(Q.flipped()) - liouville_box(Q)) <= 1e-12);
    }
}

TEST_CASE("liouville_quad agrees with the closed form") {
    CHECK(liouville_quad(q_star(), 1e-8) == Approx(std::numbers::ln2).margin(1e-8));

    Box thin = Box::from_angles(0.0, 1e-3, 2.0, 2.0 + 1e-3);
    CHECK(liouville_quad(thin, 1e-10) == Approx(liouville_box(thin)).margin(1e-10));

    // Kernel symmetry: swapped arcs integrate to the same value.
    Box Q = Box::from_angles(0.2, 1.1, 2.4, 4.0);
    CHECK(liouville_quad(Q.flipped(), 1e-9) == Approx(liouville_quad(Q, 1e-9)).margin(2e-9));
}

TEST_CASE("liouville_quad regression set") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        Box Q = oracles::random_box(rng, 0.1);
        REQUIRE(liouville_quad(Q, 1e-8) == Approx(liouville_box(Q)).margin(1e-8));
    }
}

TEST_CASE("liouville_quad rejects nearly touching arcs") {
    Box touchy = Box::from_angles(0.0, 1.0, 1.0 + 1e-7, 3.0);
    CHECK_THROWS_AS(liouville_quad(touchy, 1e-8), DegenerateConfiguration);
}

TEST_CASE("complementary_box and the cocycle identity") {
    Box comp = complementary_box(q_star());
    CHECK(angular_distance(comp.a(), BoundaryPoint(0.5 * std::numbers::pi)) < 1e-12);
    CHECK(liouville_box(comp) == Approx(std::numbers::ln2).margin(1e-12));
    CHECK(std::exp(-liouville_box(q_star())) + std::exp(-liouville_box(comp)) ==
          Approx(1.0).margin(1e-12));

    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 1000; ++trial) {
        Box Q = oracles::random_box(rng);
        double resid = std::exp(-liouville_box(Q)) +
                       std::exp(-liouville_box(complementary_box(Q))) - 1.0;
        REQUIRE(std::abs(resid) <= 1e-10);
    }

    // Double complement rotates the corners; L is preserved.
    Box Q = oracles::random_box(rng);
    Box QQ = complementary_box(complementary_box(Q));
    CHECK(angular_distance(QQ.a(), Q.c()) < 1e-12);
    CHECK(liouville_box(QQ) == Approx(liouville_box(Q)).margin(1e-12));
}

TEST_CASE("solve_fourth_point closed form") {
    BoundaryPoint a(0.0), b(0.5 * std::numbers::pi), c(std::numbers::pi);
    Arc arc(BoundaryPoint(std::numbers::pi + 0.01), BoundaryPoint(kTwoPi - 0.01));
    BoundaryPoint d = solve_fourth_point(a, b, c, std::numbers::ln2, arc);
    CHECK(d.angle == Approx(1.5 * std::numbers::pi).margin(1e-10));

    // target -> 0+ collapses d onto c (just past it ccw).
    Arc wide(c, BoundaryPoint(kTwoPi - 0.01));
    BoundaryPoint d_small = solve_fourth_point(a, b, c, 1e-8, wide);
    CHECK(angular_distance(d_small, c) < 1e-6);
}

TEST_CASE("solve_fourth_point round trips") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 1000; ++trial) {
        Box Q = oracles::random_box(rng);
        double L = liouville_box(Q);
        Arc arc(BoundaryPoint(Q.c().angle + 1e-4), Q.a());
        BoundaryPoint d = solve_fourth_point(Q.a(), Q.b(), Q.c(), L, arc);
        REQUIRE(angular_distance(d, Q.d()) <= 1e-9);
    }
}

TEST_CASE("solve_fourth_point rejects solutions outside the arc") {
    BoundaryPoint a(0.0), b(0.5 * std::numbers::pi), c(std::numbers::pi);
    Arc wrong(BoundaryPoint(3.2), BoundaryPoint(4.0));  // excludes 3*pi/2
    CHECK_THROWS_AS(solve_fourth_point(a, b, c, std::numbers::ln2, wrong),
                    NoSolutionInArc);
}

TEST_CASE("random_log2_box always has measure log 2") {
    CHECK(liouville_box(random_log2_box(MobiusMap::identity())) ==
          Approx(std::numbers::ln2).margin(1e-12));

    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 1000; ++trial) {
        MobiusMap g = oracles::random_mobius(rng);
        REQUIRE(std::abs(liouville_box(random_log2_box(g)) - std::numbers::ln2) <= 1e-9);
    }

    MobiusMap skew = hyperbolic_translation(
        Geodesic(BoundaryPoint(std::numbers::pi), BoundaryPoint(0.0)), 5.0);
    CHECK(liouville_box(random_log2_box(skew)) == Approx(std::numbers::ln2).margin(1e-9));
}

TEST_CASE("cross-ratio is a complete invariant: equal-L boxes are isometric") {
    std::mt19937_64 rng(28);
    for (int trial = 0; trial < 50; ++trial) {
        MobiusMap g = oracles::random_mobius(rng);
        Box Q1 = q_star();
        Box Q2 = random_log2_box(g);
        MobiusMap carry = mobius_from_three_pairs({Q1.a(), Q1.b(), Q1.c()},
                                                  {Q2.a(), Q2.b(), Q2.c()});
        // Fourth corner follows automatically.
        REQUIRE(angular_distance(carry(Q1.d()), Q2.d()) <= 1e-8);
    }
}
