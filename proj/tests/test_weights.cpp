#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "fracdde/weights.hpp"
#include "support/oracles.hpp"

using namespace fracdde;
using Catch::Matchers::WithinAbs;

TEST_CASE("GL weights equal the binomial coefficients", "[weights][oracle]") {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const WeightTable w(alpha, 50);
        for (int j = 0; j <= 50; ++j) {
            INFO("alpha = " << alpha << ", j = " << j);
            REQUIRE_THAT(w[j], WithinAbs(oracle::binomial_weight(alpha, j), 1e-12));
            REQUIRE_THAT(w[j], WithinAbs(oracle::binomial_weight_gamma(alpha, j), 1e-12));
        }
    }
}

TEST_CASE("GL weights: sign pattern and sum", "[weights][property]") {
    const WeightTable w(0.6, 20000);
    CHECK(w[0] == 1.0);
    for (std::size_t j = 1; j <= w.max_index(); ++j) REQUIRE(w[j] < 0.0);
    const auto s = w.partial_sums();
    // partial sums decrease to (1 - 1)^alpha = 0
    for (std::size_t j = 1; j < s.size(); ++j) REQUIRE(s[j] < s[j - 1]);
    CHECK(s.back() > 0.0);
    CHECK(s.back() < 0.01);
}

TEST_CASE("inverse weights convolve to the unit impulse", "[weights][oracle]") {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const WeightTable w(alpha, 200);
        const WeightTable mu(-alpha, 200);
        const auto d = convolve(w.values(), mu.values(), 201);
        REQUIRE_THAT(d[0], WithinAbs(1.0, 1e-10));
        for (std::size_t n = 1; n <= 200; ++n) REQUIRE_THAT(d[n], WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("truncated discrete Laplace transform of the weights", "[weights][oracle]") {
    // h sum w_j (1 - h s)^j = h (h s)^alpha for |1 - h s| < 1
    const double h = 0.1;
    const double alpha = 0.5;
    const WeightTable w(alpha, 400);
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        const std::complex<double> q = std::polar(0.05 + 0.45 * (i % 5) / 4.0, -3.0 + 0.3 * i);
        const std::complex<double> s = (1.0 - q) / h;
        const auto lhs = discrete_laplace_truncated(w.values(), h, s);
        const auto rhs = std::pow(h, 1.0 + alpha) * std::pow(s, alpha);
        INFO("s = " << s);
        REQUIRE(std::abs(lhs - rhs) < 1e-8);
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("weight table rejects bad sigma", "[weights]") {
    CHECK_THROWS_AS(WeightTable(0.0, 5), DomainError);
    CHECK_THROWS_AS(WeightTable(1.0, 5), DomainError);
    CHECK_THROWS_AS(WeightTable(-1.0, 5), DomainError);
    const WeightTable w(0.5, 3);
    CHECK_THROWS_AS(w.at(4), LengthError);
    CHECK(w.size() == 4);
}

TEST_CASE("discrete Caputo of a constant is zero", "[weights]") {
    const WeightTable w(0.4, 10);
    const std::vector<double> y(11, 2.5);
    CHECK(discrete_caputo(y, 0.1, w) == 0.0);
    const std::vector<double> single{3.0};
    CHECK(discrete_caputo(single, 0.1, w) == 0.0);
    const std::vector<double> longer(20, 1.0);
    CHECK_THROWS_AS(discrete_caputo(longer, 0.1, w), LengthError);
}

TEST_CASE("discrete Caputo of a step", "[weights]") {
    // y_0 = 0, y_j = 1 for j >= 1: D y_n = h^{-alpha} S_{n-1}
    const double alpha = 0.3;
    const WeightTable w(alpha, 30);
    const auto s = w.partial_sums();
    std::vector<double> y(31, 1.0);
    y[0] = 0.0;
    for (std::size_t n = 1; n <= 30; ++n) {
        const std::span<const double> head(y.data(), n + 1);
        REQUIRE_THAT(discrete_caputo(head, 0.2, w), WithinAbs(s[n - 1] / std::pow(0.2, alpha), 1e-13));
    }
}

TEST_CASE("convolve checks lengths", "[weights]") {
    const std::vector<double> f{1.0, 2.0};
    CHECK_THROWS_AS(convolve(f, f, 3), LengthError);
    const auto c = convolve(f, f, 2);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 4.0);
}
