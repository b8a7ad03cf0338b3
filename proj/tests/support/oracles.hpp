#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// (-1)^j binom(sigma, j) from the Gamma-function ratio, in long double.
inline double binomial_weight(double sigma, int j) {
    // binom(sigma, j) = prod_{i=0}^{j-1} (sigma - i) / (i + 1)
    long double num = 1.0L;
    for (int i = 0; i < j; ++i) num *= (static_cast<long double>(sigma) - i) / static_cast<long double>(i + 1);
    return static_cast<double>((j % 2 == 0 ? 1.0L : -1.0L) * num);
}

/// Coefficients of (1 - z)^sigma by the generalized binomial series,
/// evaluated through lgamma for j where the product form would overflow.
inline double binomial_weight_gamma(double sigma, int j) {
    if (j == 0) return 1.0;
    // (-1)^j binom(sigma, j) = Gamma(j - sigma) / (Gamma(-sigma) Gamma(j + 1))
    const double s = -sigma;
    const double lg = std::lgamma(j + s) - std::lgamma(s) - std::lgamma(j + 1.0);
    const double sign = (s > 0.0) ? 1.0 : -1.0;  // Gamma(s) < 0 for s in (-1, 0); Gamma(j + s) > 0
    return sign * std::exp(lg);
}

/// y_1..y_N of the scheme as a dense lower-triangular system solved in long
/// double, with weights from the product formula.
inline std::vector<double> dense_scheme(double alpha, double a, double b, double tau, int k,
                                        const std::vector<double>& history, std::size_t steps) {
    const long double h = static_cast<long double>(tau) / k;
    const long double ha = std::pow(h, static_cast<long double>(alpha));
    std::vector<long double> w(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) w[j] = binomial_weight(alpha, static_cast<int>(j));
    const long double y0 = history.back();
    std::vector<long double> y(steps + 1);
    y[0] = y0;
    // row n: sum_j w_{n-j} (y_j - y0) - h^alpha a y_n = h^alpha b y_{n-k}
    for (std::size_t n = 1; n <= steps; ++n) {
        const long n_minus_k = static_cast<long>(n) - k;
        const long double delayed =
            n_minus_k <= 0 ? history[static_cast<std::size_t>(n_minus_k + k)] : y[static_cast<std::size_t>(n_minus_k)];
        long double rhs = ha * b * delayed;
        for (std::size_t j = 0; j < n; ++j) rhs -= w[n - j] * (y[j] - y0);
        rhs += w[0] * y0;
        y[n] = rhs / (w[0] - ha * a);
    }
    return std::vector<double>(y.begin() + 1, y.end());
}

/// P(z) = (1 - z)^alpha - h^alpha (a + b z^k) and its derivative.
struct CharPoly {
    double alpha, a, b, h;
    int k;

    cplx value(cplx z) const {
        return std::pow(1.0 - z, alpha) - std::pow(h, alpha) * (a + b * std::pow(z, k));
    }
    cplx derivative(cplx z) const {
        return -alpha * std::pow(1.0 - z, alpha - 1.0) - std::pow(h, alpha) * b * double(k) * std::pow(z, k - 1);
    }
};

struct ZeroSearch {
    std::vector<cplx> roots;   ///< distinct zeros with |z| < 1
    double closest_to_circle;  ///< min | |z| - 1 | over all zeros found near the disk
};

/// Zeros of P in the open unit disk: local minima of |P| on a polar grid,
/// polished by Newton's method and de-duplicated.
inline ZeroSearch find_zeros_in_disk(const CharPoly& p, int nr = 120, int nt = 480) {
    ZeroSearch out{{}, 1.0};
    std::vector<double> mod(static_cast<std::size_t>(nr * nt));
    auto at = [&](int i, int j) -> double& { return mod[static_cast<std::size_t>(i * nt + ((j + nt) % nt))]; };
    auto node = [&](int i, int j) {
        // radii up to 1.05 so zeros just outside still register
        const double r = 1.05 * (i + 0.5) / nr;
        const double t = 2.0 * M_PI * j / nt;
        return std::polar(r, t);
    };
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) at(i, j) = std::abs(p.value(node(i, j)));
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            const double v = at(i, j);
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di;
                    if (ii < 0 || ii >= nr) continue;
                    if (at(ii, j + dj) < v) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;
            cplx z = node(i, j);
            bool ok = false;
            for (int it = 0; it < 100; ++it) {
                const cplx f = p.value(z);
                const cplx d = p.derivative(z);
                if (std::abs(d) == 0.0) break;
                const cplx step = f / d;
                z -= step;
                if (std::abs(1.0 - z) < 1e-14) break;  // drifted onto the branch point
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) {
                    ok = true;
                    break;
                }
            }
            if (!ok || std::abs(p.value(z)) > 1e-10) continue;
            if (std::abs(z) > 1.2) continue;
            out.closest_to_circle = std::min(out.closest_to_circle, std::fabs(std::abs(z) - 1.0));
            if (std::abs(z) >= 1.0) continue;
            const bool seen = std::any_of(out.roots.begin(), out.roots.end(),
                                          [&](cplx r) { return std::abs(r - z) < 1e-7; });
            if (!seen) out.roots.push_back(z);
        }
    }
    return out;
}

}  // namespace oracle
