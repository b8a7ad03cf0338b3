#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fracdde/characteristic.hpp"
#include "fracdde/regions.hpp"
#include "support/oracles.hpp"

using namespace fracdde;

TEST_CASE("P and Q are related by z = 1 - h s", "[char]") {
    const ModelParams p{0.7, -1.2, 0.9, 1.0, 6};
    const double h = p.step();
    for (int i = 0; i < 30; ++i) {
        const Complex s(-2.0 + 0.5 * i, 1.5 - 0.1 * i);
        const Complex lhs = eval_P(1.0 - h * s, p);
        const Complex rhs = std::pow(h, p.alpha) * eval_Q(s, p);
        REQUIRE(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("Q is conjugate symmetric", "[char][property]") {
    const ModelParams p{0.35, 0.4, -2.0, 1.0, 3};
    for (int i = 0; i < 30; ++i) {
        const Complex s(0.3 * i - 1.0, 0.2 * i + 0.1);
        REQUIRE(std::abs(eval_Q(std::conj(s), p) - std::conj(eval_Q(s, p))) < 1e-12);
    }
}

TEST_CASE("contour parametrization matches eval_Q", "[char]") {
    const ModelParams p{0.6, -1.0, 0.5, 1.0, 4};
    const double h = p.step();
    for (int i = 1; i < 40; ++i) {
        const double phi = -1.5 + 3.0 * i / 40.0;
        const Complex s = (1.0 + std::polar(1.0, 2.0 * phi)) / h;
        REQUIRE(std::abs(contour_Q(phi, p) - eval_Q(s, p)) < 1e-11);
    }
}

TEST_CASE("winding count examples", "[char]") {
    CHECK(count_roots_in_disk({0.8, -3.0, 1.0, 1.0, 20}).winding == 0);
    CHECK(count_roots_in_disk({0.8, 0.0, -3.0, 1.0, 20}).winding >= 1);
    CHECK(count_roots_in_disk({0.5, 0.0, -1.5, 1.0, 1}).winding == 1);
    CHECK(classify({0.8, -3.0, 1.0, 1.0, 20}) == Classification::DecaysToZero);
    CHECK(classify({0.8, 0.0, -3.0, 1.0, 20}) == Classification::UnstableForSomeHistory);
    CHECK(classify({0.5, -1.0, 1.0, 1.0, 1}) == Classification::BoundaryCase);
    CHECK_THROWS_AS(classify({0.5, 1.0, 0.0, 1.0, 1}), SolvabilityError);
    CHECK_THROWS_AS(count_roots_in_disk({0.5, 0.0, 0.0, 1.0, 1}, 100), DomainError);
}

TEST_CASE("winding count agrees with a brute-force zero search", "[char][oracle]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ualpha(0.1, 0.9);
    std::uniform_real_distribution<double> ucoef(-4.0, 1.0);
    std::uniform_int_distribution<int> uk(1, 10);
    int compared = 0;
    int nonzero = 0;
    while (compared < 50) {
        const ModelParams p{ualpha(rng), ucoef(rng), ucoef(rng), 1.0, uk(rng)};
        const oracle::CharPoly cp{p.alpha, p.a, p.b, p.step(), p.k};
        const auto zs = oracle::find_zeros_in_disk(cp);
        if (zs.closest_to_circle < 1e-3) continue;  // too close to call by either method
        const RootReport r = count_roots_in_disk(p);
        INFO("alpha = " << p.alpha << ", a = " << p.a << ", b = " << p.b << ", k = " << p.k);
        REQUIRE_FALSE(r.boundary_root_suspected);
        REQUIRE(r.winding == static_cast<int>(zs.roots.size()));
        if (r.winding > 0) ++nonzero;
        ++compared;
    }
    CHECK(nonzero >= 5);
}

TEST_CASE("half contour and full contour give the same count", "[char][property]") {
    for (double a : {-3.5, -1.0, 0.5}) {
        for (double b : {-3.0, -0.5, 0.8}) {
            for (int k : {1, 2, 7}) {
                const ModelParams p{0.55, a, b, 1.0, k};
                REQUIRE(count_roots_in_disk(p).winding == count_roots_upper_half(p).winding);
            }
        }
    }
}

TEST_CASE("root count agrees with membership away from boundaries", "[char][property]") {
    for (double alpha : {0.3, 0.7}) {
        for (int k : {1, 3, 8}) {
            for (int i = 0; i <= 10; ++i) {
                for (int j = 0; j <= 10; ++j) {
                    const double a = -4.0 + 0.47 * i;
                    const double b = -4.0 + 0.47 * j;
                    const ModelParams p{alpha, a, b, 1.0, k};
                    if (std::fabs(1.0 - std::pow(p.step(), alpha) * a) < 1e-12) continue;
                    const auto v = numerical_membership(alpha, k, a, b);
                    if (std::fabs(v.upper_margin) < 1e-6 || std::fabs(v.lower_margin) < 1e-6) continue;
                    const auto c = classify_with_roots(p);
                    if (c.roots.min_modulus_on_circle < 1e-7 * c.roots.scale) continue;
                    INFO("alpha = " << alpha << ", k = " << k << ", a = " << a << ", b = " << b);
                    REQUIRE(v.stable() == (c.classification == Classification::DecaysToZero));
                }
            }
        }
    }
}
