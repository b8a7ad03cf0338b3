#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fracdde/solver.hpp"
#include "support/oracles.hpp"

using namespace fracdde;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double max_rel_diff(std::span<const double> x, const std::vector<double>& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        worst = std::max(worst, std::fabs(x[i] - y[i]) / (1.0 + std::fabs(y[i])));
    }
    return worst;
}

}  // namespace

TEST_CASE("solver matches the dense triangular system", "[solver][oracle]") {
    struct Case {
        double alpha, a, b, tau;
        int k;
    };
    const Case cases[] = {{0.5, -3.0, 1.0, 1.0, 10}, {0.2, 0.5, -0.3, 2.0, 4},  {0.8, -1.0, -2.0, 0.5, 1},
                          {0.9, 0.0, 1.5, 1.0, 3},    {0.35, -2.0, 0.0, 1.0, 5}, {0.65, 1.0, 1.0, 3.0, 7}};
    for (const auto& c : cases) {
        const ModelParams p{c.alpha, c.a, c.b, c.tau, c.k};
        const auto hist = sample_history(phi::Sinusoid{0.3, 6.0}, p);
        const Trajectory t = solve_from_history(p, hist, 300);
        const auto ref = oracle::dense_scheme(c.alpha, c.a, c.b, c.tau, c.k, hist, 300);
        INFO("alpha = " << c.alpha << ", k = " << c.k);
        REQUIRE(max_rel_diff(t.values(), ref) < 1e-11);
    }
}

TEST_CASE("a = b = 0 keeps the initial value", "[solver]") {
    const ModelParams p{0.4, 0.0, 0.0, 1.0, 2};
    const Trajectory t = solve(p, phi::Constant{0.7}, 100);
    for (long n = 1; n <= 100; ++n) REQUIRE_THAT(t.y(n), WithinRel(0.7, 1e-14));
}

TEST_CASE("constant solution on a + b = 0 with k = 1", "[solver]") {
    const ModelParams p{0.5, -1.3, 1.3, 1.0, 1};
    const Trajectory t = solve(p, phi::Constant{2.0}, 500);
    for (long n = 1; n <= 500; ++n) REQUIRE_THAT(t.y(n), WithinRel(2.0, 1e-12));
}

TEST_CASE("scheme residual vanishes", "[solver][property]") {
    for (double alpha : {0.15, 0.5, 0.85}) {
        const ModelParams p{alpha, -2.0, 0.7, 1.0, 8};
        const Trajectory t = solve(p, phi::Linear{-0.1, -0.2}, 400);
        REQUIRE(max_scheme_residual(t) < 1e-9);
    }
}

TEST_CASE("solution is linear in the history", "[solver][property]") {
    const ModelParams p{0.6, -1.5, 0.8, 1.0, 5};
    const auto h1 = sample_history(phi::Sinusoid{0.3, 6.0}, p);
    const auto h2 = sample_history(phi::Linear{-0.1, -0.2}, p);
    std::vector<double> h3(h1.size());
    for (std::size_t i = 0; i < h1.size(); ++i) h3[i] = 2.0 * h1[i] - 3.0 * h2[i];
    const Trajectory t1 = solve_from_history(p, h1, 200);
    const Trajectory t2 = solve_from_history(p, h2, 200);
    const Trajectory t3 = solve_from_history(p, h3, 200);
    for (long n = 1; n <= 200; ++n) {
        REQUIRE_THAT(t3.y(n), WithinAbs(2.0 * t1.y(n) - 3.0 * t2.y(n), 1e-12));
    }
}

TEST_CASE("delay scaling leaves the discrete solution unchanged", "[solver][property]") {
    // (a, b, tau, phi(t)) and (a tau^alpha, b tau^alpha, 1, phi(tau s)) give the same y_n
    const double tau = 2.5;
    const ModelParams p{0.45, -1.2, 0.4, tau, 6};
    const InitialFunction f = phi::Sinusoid{0.3, 6.0};
    const Trajectory t = solve(p, f, 300);
    const Trajectory u = solve(p.unit_delay(), rescale_time(f, tau), 300);
    for (long n = -6; n <= 300; ++n) REQUIRE_THAT(u.y(n), WithinAbs(t.y(n), 1e-12 * (1.0 + std::fabs(t.y(n)))));
    CHECK_THAT(u.time(300) * tau, WithinRel(t.time(300), 1e-14));
}

TEST_CASE("history sampling", "[solver]") {
    const ModelParams p{0.5, 0.0, 0.0, 1.0, 10};
    const auto h = sample_history(phi::Linear{-0.1, -0.2}, p);
    REQUIRE(h.size() == 11);
    CHECK(h.front() == -0.1 * -1.0 - 0.2);  // exactly t = -tau
    CHECK(h.back() == -0.2);
    const phi::Sampled table{{{-1.0, 1.0}, {0.0, 3.0}}};
    const auto hs = sample_history(table, p);
    CHECK_THAT(hs[5], WithinAbs(2.0, 1e-15));
    CHECK_THROWS_AS(check_coverage(phi::Sampled{{{-0.5, 1.0}, {0.0, 1.0}}}, 1.0), DomainError);
}

TEST_CASE("divergence is flagged, not thrown", "[solver]") {
    const ModelParams p{0.8, 0.0, -3.0, 1.0, 20};
    const Trajectory t = solve(p, phi::Constant{1.0}, 200000);
    CHECK(t.diverged());
    CHECK(t.last_index() < 200000);
    for (double v : t.values()) REQUIRE(std::fabs(v) <= kDivergenceThreshold);
}

TEST_CASE("solver rejects bad input", "[solver]") {
    CHECK_THROWS_AS(solve(ModelParams{0.5, 1.0, 0.0, 1.0, 1}, phi::Constant{1.0}, 10), SolvabilityError);
    CHECK_THROWS_AS(solve(ModelParams{1.2, 0.0, 0.0, 1.0, 1}, phi::Constant{1.0}, 10), DomainError);
    CHECK_THROWS_AS(solve(ModelParams{0.5, 0.0, 0.0, -1.0, 1}, phi::Constant{1.0}, 10), DomainError);
    CHECK_THROWS_AS(solve(ModelParams{0.5, 0.0, 0.0, 1.0, 0}, phi::Constant{1.0}, 10), DomainError);
    CHECK_THROWS_AS(solve_from_history(ModelParams{0.5, 0.0, 0.0, 1.0, 2}, {1.0}, 10), LengthError);
    const Trajectory t = solve(ModelParams{0.5, -1.0, 0.0, 1.0, 2}, phi::Constant{1.0}, 10);
    CHECK_THROWS_AS(t.y(11), LengthError);
    CHECK_THROWS_AS(t.y(-3), LengthError);
}
