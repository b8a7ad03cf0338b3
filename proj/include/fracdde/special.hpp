#pragma once

// Complex powers on the principal branch and a real gamma function.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "fracdde/errors.hpp"

namespace fracdde {

using Complex = std::complex<double>;

/// Principal power s^sigma with arg(s) taken in (-pi, pi].
///
/// The branch cut is the negative real axis, which maps with arg = pi
/// (including a signed -0 imaginary part). Values approaching the axis
/// from below therefore jump; nothing is smoothed.
inline Complex principal_power(Complex s, double sigma) {
    const double re = s.real();
    const double im = s.imag();
    if (re == 0.0 && im == 0.0) {
        if (sigma > 0.0) return {0.0, 0.0};
        throw DomainError("principal_power: 0^sigma with sigma <= 0");
    }
    if (sigma == 0.0) return {1.0, 0.0};
    if (sigma == 1.0) return s;
    const double theta = (im == 0.0 && re < 0.0) ? std::numbers::pi : std::atan2(im, re);
    const double mag = std::pow(std::hypot(re, im), sigma);
    const double phase = sigma * theta;
    return {mag * std::cos(phase), mag * std::sin(phase)};
}

/// Integer power by repeated squaring; exact branch-free for any z.
inline Complex integer_power(Complex z, int n) {
    Complex result{1.0, 0.0};
    Complex base = n < 0 ? 1.0 / z : z;
    unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
    while (e != 0) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

namespace detail {

// Lanczos approximation, g = 7, nine terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_gamma(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace detail

/// Gamma function on (0, 5]; relative error below 1e-12.
inline double gamma_fn(double x) {
    if (!(x > 0.0 && x <= 5.0)) {
        throw DomainError("gamma_fn: argument outside (0, 5]");
    }
    if (x < 0.5) return detail::lanczos_gamma(x + 1.0) / x;
    return detail::lanczos_gamma(x);
}

}  // namespace fracdde
