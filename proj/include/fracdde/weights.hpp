#pragma once

// Grunwald-Letnikov weights and the discrete operators built on them.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "fracdde/errors.hpp"
#include "fracdde/special.hpp"

namespace fracdde {

/// Taylor coefficients w_0..w_N of (1 - z)^sigma.
///
/// sigma = alpha gives the GL weights; sigma = -alpha gives their
/// convolution inverse. Immutable after construction.
class WeightTable {
public:
    WeightTable(double sigma, std::size_t n) : sigma_(sigma) {
        if (!(sigma > -1.0 && sigma < 1.0) || sigma == 0.0) {
            throw DomainError("gl_weights: sigma must lie in (-1, 1) \\ {0}");
        }
        w_.resize(n + 1);
        w_[0] = 1.0;
        for (std::size_t j = 1; j <= n; ++j) {
            w_[j] = (1.0 - (sigma + 1.0) / static_cast<double>(j)) * w_[j - 1];
        }
    }

    double sigma() const noexcept { return sigma_; }
    std::size_t size() const noexcept { return w_.size(); }
    /// Largest index covered.
    std::size_t max_index() const noexcept { return w_.size() - 1; }
    double operator[](std::size_t j) const noexcept { return w_[j]; }
    double at(std::size_t j) const {
        if (j >= w_.size()) throw LengthError("WeightTable: index beyond table");
        return w_[j];
    }
    std::span<const double> values() const noexcept { return w_; }

    /// Partial sums S_n = sum_{j<=n} w_j for n = 0..max_index().
    std::vector<double> partial_sums() const {
        std::vector<double> s(w_.size());
        double acc = 0.0;
        for (std::size_t j = 0; j < w_.size(); ++j) {
            acc += w_[j];
            s[j] = acc;
        }
        return s;
    }

private:
    double sigma_;
    std::vector<double> w_;
};

inline WeightTable gl_weights(double sigma, std::size_t n) { return WeightTable(sigma, n); }

/// Unweighted discrete convolution (f * g)_n = sum_{j<=n} f_{n-j} g_j for n < count.
inline std::vector<double> convolve(std::span<const double> f, std::span<const double> g,
                                    std::size_t count) {
    if (f.size() < count || g.size() < count) {
        throw LengthError("convolve: sequences shorter than requested length");
    }
    std::vector<double> out(count, 0.0);
    for (std::size_t n = 0; n < count; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= n; ++j) acc += f[n - j] * g[j];
        out[n] = acc;
    }
    return out;
}

/// h^{-alpha} sum_{j=0}^{n} w_{n-j} (y_j - y_0), with n = y.size() - 1.
inline double discrete_caputo(std::span<const double> y, double h, const WeightTable& wt) {
    if (y.empty()) throw LengthError("discrete_caputo: empty sequence");
    if (!(h > 0.0)) throw DomainError("discrete_caputo: step must be positive");
    const std::size_t n = y.size() - 1;
    if (n == 0) return 0.0;
    if (wt.max_index() < n) throw LengthError("discrete_caputo: weight table too short");
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) acc += wt[n - j] * (y[j] - y[0]);
    return acc / std::pow(h, wt.sigma());
}

/// Partial sum h sum_{j=0}^{M} f_j (1 - h s)^j of the discrete Laplace transform.
///
/// Truncation is the caller's business; no tail estimate is attempted.
inline Complex discrete_laplace_truncated(std::span<const double> f, double h, Complex s) {
    const Complex q = 1.0 - h * s;
    // Horner from the top keeps the error proportional to the largest term.
    Complex acc{0.0, 0.0};
    for (std::size_t j = f.size(); j-- > 0;) acc = acc * q + f[j];
    return h * acc;
}

}  // namespace fracdde
