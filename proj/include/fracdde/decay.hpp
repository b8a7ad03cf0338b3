#pragma once

// Long-time diagnostics of computed trajectories: the observed decay index,
// the Mittag-Leffler constant lim y_n t_n^alpha, and an empirical verdict.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdde/errors.hpp"
#include "fracdde/solver.hpp"
#include "fracdde/special.hpp"

namespace fracdde {

/// Grid index n >= 1 whose t_n is closest to t.
inline std::size_t nearest_index(const Trajectory& traj, double t) {
    const double n = std::round(t / traj.step());
    return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

/// p(t_n) = -ln(|y_n| / |y_{n-1}|) / ln(t_n / t_{n-1}) at the grid point nearest t.
inline double decay_index(const Trajectory& traj, double t) {
    if (!(t > 1.0)) throw DomainError("decay_index: t must exceed 1");
    const std::size_t n = nearest_index(traj, t);
    if (n < 2 || n > traj.last_index()) throw LengthError("decay_index: t outside the computed range");
    const long ln = static_cast<long>(n);
    const double yn = std::fabs(traj.y(ln));
    const double yp = std::fabs(traj.y(ln - 1));
    if (yn == 0.0 || yp == 0.0) throw UndefinedError("decay_index: zero value at a bracketing point");
    return -std::log(yn / yp) / std::log(traj.time(ln) / traj.time(ln - 1)) + 0.0;  // no -0
}

struct MittagLefflerConstant {
    double estimate;   ///< extrapolated limit of y_n t_n^alpha
    double predicted;  ///< -y_0 / (Gamma(1 - alpha) (a + b))
    double rate;       ///< fitted gamma in c_n = c_inf + d t_n^{-gamma}; NaN when the fit fails
    double raw;        ///< y_N t_N^alpha
    std::vector<std::pair<double, double>> samples;  ///< (t, y t^alpha) at N/4, N/2, N
};

inline double predicted_ml_constant(const ModelParams& p, double y0) {
    if (p.a + p.b == 0.0) throw DomainError("ml_constant: a + b = 0 has no algebraic decay");
    return -y0 / (gamma_fn(1.0 - p.alpha) * (p.a + p.b));
}

/// Richardson-style extrapolation of y_n t_n^alpha over the dyadic times t_N/4, t_N/2, t_N.
inline MittagLefflerConstant ml_constant(const Trajectory& traj) {
    const ModelParams& p = traj.params();
    const double predicted = predicted_ml_constant(p, traj.y0());
    const std::size_t last = traj.last_index();
    if (last < 4) throw LengthError("ml_constant: trajectory too short");
    MittagLefflerConstant out{0.0, predicted, std::nan(""), 0.0, {}};
    for (std::size_t n : {last / 4, last / 2, last}) {
        const long ln = static_cast<long>(n);
        const double t = traj.time(ln);
        out.samples.emplace_back(t, traj.y(ln) * std::pow(t, p.alpha));
    }
    const double c1 = out.samples[0].second;
    const double c2 = out.samples[1].second;
    const double c3 = out.samples[2].second;
    out.raw = c3;
    out.estimate = c3;
    const double d12 = c2 - c1;
    const double d23 = c3 - c2;
    if (d12 != 0.0) {
        const double ratio = d23 / d12;  // 2^{-gamma} for exactly dyadic times
        if (ratio > 0.0 && ratio < 1.0) {
            out.rate = -std::log2(ratio);
            out.estimate = c3 + d23 * ratio / (1.0 - ratio);
        }
    }
    return out;
}

enum class EmpiricalVerdict { Decays, Bounded, Diverges };

inline std::string to_string(EmpiricalVerdict v) {
    switch (v) {
        case EmpiricalVerdict::Decays: return "Decays";
        case EmpiricalVerdict::Bounded: return "Bounded";
        case EmpiricalVerdict::Diverges: return "Diverges";
    }
    return "Bounded";
}

inline constexpr double kGrowthFactor = 1e3;
inline constexpr double kDecayFactor = 0.1;

namespace detail {

inline double max_abs(const Trajectory& traj, std::size_t from, std::size_t to) {
    double m = 0.0;
    for (std::size_t n = from; n <= to; ++n) m = std::max(m, std::fabs(traj.y(static_cast<long>(n))));
    return m;
}

}  // namespace detail

/// Envelope max |y_n| over (N/2^{j+1}, N/2^j] for j = 0..3, latest window first.
inline std::vector<double> dyadic_envelope(const Trajectory& traj) {
    const std::size_t last = traj.last_index();
    std::vector<double> env;
    std::size_t hi = last;
    for (int j = 0; j < 4 && hi >= 2; ++j) {
        const std::size_t lo = hi / 2;
        env.push_back(detail::max_abs(traj, lo + 1, hi));
        hi = lo;
    }
    return env;
}

inline bool envelope_decreasing(const Trajectory& traj) {
    const auto env = dyadic_envelope(traj);
    for (std::size_t j = 1; j < env.size(); ++j) {
        if (!(env[j - 1] < env[j])) return false;
    }
    return true;
}

inline EmpiricalVerdict empirical_verdict(const Trajectory& traj) {
    if (traj.diverged()) return EmpiricalVerdict::Diverges;
    const std::size_t last = traj.last_index();
    if (last < 256 || last < 4 * static_cast<std::size_t>(traj.k())) {
        throw DomainError("empirical_verdict: needs N >= 256 and N >= 4k");
    }
    const double first = detail::max_abs(traj, 0, last / 4);
    const double late = detail::max_abs(traj, last - last / 4 + 1, last);
    if (late > kGrowthFactor * first) return EmpiricalVerdict::Diverges;
    if (late < kDecayFactor * first && envelope_decreasing(traj)) return EmpiricalVerdict::Decays;
    return EmpiricalVerdict::Bounded;
}

struct DecayReport {
    std::vector<std::pair<double, double>> index_series;  ///< (t_n, p(t_n))
    double ml_constant_estimate = std::nan("");
    double ml_constant_predicted = std::nan("");
    EmpiricalVerdict empirical_verdict = EmpiricalVerdict::Bounded;
};

/// Decay index at each requested time, ML constants when a + b != 0, and the verdict.
/// Times that are out of range or sit next to a zero value are skipped.
inline DecayReport analyze_decay(const Trajectory& traj, std::span<const double> times) {
    DecayReport r;
    for (double t : times) {
        if (!(t > 1.0)) continue;
        const std::size_t n = nearest_index(traj, t);
        if (n < 2 || n > traj.last_index()) continue;
        const long ln = static_cast<long>(n);
        if (traj.y(ln - 1) == 0.0 || traj.y(ln) == 0.0) continue;
        r.index_series.emplace_back(traj.time(ln), decay_index(traj, t));
    }
    const ModelParams& p = traj.params();
    if (p.a + p.b != 0.0 && traj.last_index() >= 4 && !traj.diverged()) {
        const auto ml = ml_constant(traj);
        r.ml_constant_estimate = ml.estimate;
        r.ml_constant_predicted = ml.predicted;
    }
    const std::size_t last = traj.last_index();
    if (traj.diverged() || (last >= 256 && last >= 4 * static_cast<std::size_t>(traj.k()))) {
        r.empirical_verdict = empirical_verdict(traj);
    }
    return r;
}

}  // namespace fracdde
