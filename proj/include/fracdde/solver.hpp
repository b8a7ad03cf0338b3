#pragma once

// Time stepping of the Grunwald-Letnikov (fractional backward Euler) scheme
//
//   h^{-alpha} sum_{j=0}^{n} w_{n-j} (y_j - y_0) = a y_n + b y_{n-k},   n >= 1.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracdde/errors.hpp"
#include "fracdde/model.hpp"
#include "fracdde/weights.hpp"

namespace fracdde {

/// Magnitude beyond which a run is declared divergent and stopped.
inline constexpr double kDivergenceThreshold = 1e300;

class Trajectory {
public:
    Trajectory(ModelParams params, std::vector<double> history, std::vector<double> values,
               bool diverged)
        : params_(params),
          history_(std::move(history)),
          values_(std::move(values)),
          diverged_(diverged) {}

    const ModelParams& params() const noexcept { return params_; }
    /// y_{-k} .. y_0
    std::span<const double> history() const noexcept { return history_; }
    /// y_1 .. y_N (shorter than requested when diverged)
    std::span<const double> values() const noexcept { return values_; }
    bool diverged() const noexcept { return diverged_; }

    int k() const noexcept { return params_.k; }
    /// Last computed index N.
    std::size_t last_index() const noexcept { return values_.size(); }
    double y0() const noexcept { return history_.back(); }
    double step() const noexcept { return params_.step(); }
    double time(long n) const noexcept { return static_cast<double>(n) * params_.step(); }

    /// y_n for -k <= n <= N.
    double y(long n) const {
        if (n <= 0) {
            const long idx = n + params_.k;
            if (idx < 0) throw LengthError("Trajectory::y: index before history");
            return history_[static_cast<std::size_t>(idx)];
        }
        if (static_cast<std::size_t>(n) > values_.size()) {
            throw LengthError("Trajectory::y: index beyond computed values");
        }
        return values_[static_cast<std::size_t>(n) - 1];
    }

private:
    ModelParams params_;
    std::vector<double> history_;
    std::vector<double> values_;
    bool diverged_;
};

/// y_{-j} = phi(-j h) for j = 0..k, returned in order y_{-k} .. y_0.
inline std::vector<double> sample_history(const InitialFunction& f, const ModelParams& params) {
    params.validate();
    check_coverage(f, params.tau);
    const double h = params.step();
    std::vector<double> hist(static_cast<std::size_t>(params.k) + 1);
    for (int j = 0; j <= params.k; ++j) {
        // t = -j h, except hit -tau exactly at j = k
        const double t = (j == params.k) ? -params.tau : -static_cast<double>(j) * h;
        hist[static_cast<std::size_t>(params.k - j)] = evaluate(f, t);
    }
    return hist;
}

namespace detail {

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) noexcept {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const noexcept { return sum + carry; }
};

}  // namespace detail

/// Solves steps 1..steps from an explicit history y_{-k}..y_0.
///
/// `weights` may be supplied to reuse a GL table (sigma must equal alpha and
/// cover `steps`). Divergence stops the run and sets the flag; the partial
/// trajectory is returned.
inline Trajectory solve_from_history(const ModelParams& params, std::vector<double> history,
                                     std::size_t steps, const WeightTable* weights = nullptr) {
    params.validate_solvable();
    if (steps < 1) throw DomainError("solve: step count must be at least 1");
    if (history.size() != static_cast<std::size_t>(params.k) + 1) {
        throw LengthError("solve: history must hold k + 1 values");
    }
    std::optional<WeightTable> own;
    if (weights == nullptr || weights->max_index() < steps || weights->sigma() != params.alpha) {
        own.emplace(params.alpha, steps);
        weights = &*own;
    }
    const WeightTable& w = *weights;

    const double h_alpha = std::pow(params.step(), params.alpha);
    const double denom = 1.0 - h_alpha * params.a;
    const double delay_coef = h_alpha * params.b;
    const std::size_t k = static_cast<std::size_t>(params.k);
    const double y0 = history.back();

    // full[j] = y_j for j = 0..n
    std::vector<double> full;
    full.reserve(steps + 1);
    full.push_back(y0);

    double prefix = 0.0;  // S_{n-1} = sum_{m=0}^{n-1} w_m
    bool diverged = false;
    for (std::size_t n = 1; n <= steps; ++n) {
        prefix += w[n - 1];
        detail::CompensatedSum conv;
        for (std::size_t j = 1; j < n; ++j) conv.add(w[n - j] * full[j]);
        const double delayed = (n <= k) ? history[n] : full[n - k];
        const double yn = (delay_coef * delayed + y0 * prefix - conv.value()) / denom;
        if (!std::isfinite(yn) || std::fabs(yn) > kDivergenceThreshold) {
            diverged = true;
            break;
        }
        full.push_back(yn);
    }
    std::vector<double> values(full.begin() + 1, full.end());
    return Trajectory(params, std::move(history), std::move(values), diverged);
}

inline Trajectory solve(const ModelParams& params, const InitialFunction& f, std::size_t steps) {
    params.validate_solvable();
    return solve_from_history(params, sample_history(f, params), steps);
}

/// max_n |D_h^alpha y_n - a y_n - b y_{n-k}| / (1 + |y_n|), recomputed from scratch.
inline double max_scheme_residual(const Trajectory& traj) {
    const ModelParams& p = traj.params();
    const std::size_t last = traj.last_index();
    if (last == 0) return 0.0;
    const WeightTable w(p.alpha, last);
    const double h_alpha = std::pow(p.step(), p.alpha);
    const double y0 = traj.y0();
    double worst = 0.0;
    for (std::size_t n = 1; n <= last; ++n) {
        detail::CompensatedSum acc;
        for (std::size_t j = 1; j <= n; ++j) {
            acc.add(w[n - j] * (traj.y(static_cast<long>(j)) - y0));
        }
        const long ln = static_cast<long>(n);
        const double yn = traj.y(ln);
        const double rhs = p.a * yn + p.b * traj.y(ln - p.k);
        const double res = std::fabs(acc.value() / h_alpha - rhs);
        worst = std::max(worst, res / (1.0 + std::fabs(yn)));
    }
    return worst;
}

}  // namespace fracdde
