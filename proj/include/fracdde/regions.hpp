#pragma once

// Continuous and numerical stability regions in the (a, b) plane.
//
// Everything below works with unit delay. Overloads taking `tau` map
// (a, b) -> (a tau^alpha, b tau^alpha) first; verdicts are scale invariant.
//
// Continuous region S*: above the curve Gamma, below a + b = 0.
// Numerical region S_k: below a + b = 0 and above the line a - b = 2^alpha
// (k = 1) or the curve Gamma_0 (k >= 2).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdde/bisect.hpp"
#include "fracdde/errors.hpp"

namespace fracdde {

inline constexpr double kPi = std::numbers::pi;
/// Half-width of the band around a boundary inside which a point is reported as on it.
inline constexpr double kBoundaryTolerance = 1e-9;

struct CurvePoint {
    double theta;
    double a;
    double b;
};

enum class CurveKind { GammaContinuous, GammaM, CaseILine };

struct RegionCurve {
    CurveKind kind;
    double alpha;
    int k = 0;  ///< unused for GammaContinuous
    int m = 0;  ///< only for GammaM
    double theta_lo;
    double theta_hi;
    std::vector<CurvePoint> samples;
};

namespace detail {

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

inline void check_curve_index(int k, int m) {
    if (k < 1) throw DomainError("k must be a positive integer");
    if (m < 0 || 2 * m + 1 > k) throw DomainError("curve index needs 0 <= m and 2m + 1 <= k");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Continuous boundary Gamma

/// Left end of the Gamma parameter interval, (1 - alpha) pi.
inline double gamma_theta_lo(double alpha) { return (1.0 - alpha) * kPi; }

inline CurvePoint gamma_continuous(double alpha, double theta) {
    detail::check_alpha(alpha);
    if (!(theta > gamma_theta_lo(alpha) && theta < kPi)) {
        throw DomainError("gamma_continuous: theta outside ((1 - alpha) pi, pi)");
    }
    const double scale = std::pow(theta, alpha) / std::sin(theta);
    return {theta, scale * std::sin(theta + alpha * kPi / 2.0),
            -scale * std::sin(alpha * kPi / 2.0)};
}

/// a-coordinate of the vertex of S*, where Gamma meets a + b = 0.
inline double continuous_vertex(double alpha) {
    detail::check_alpha(alpha);
    return std::pow((1.0 - alpha) * kPi, alpha) * std::sin(alpha * kPi / 2.0) /
           std::sin(alpha * kPi);
}

/// Limit of a - b along Gamma as theta -> pi.
inline double continuous_asymptote_level(double alpha) {
    detail::check_alpha(alpha);
    return std::pow(kPi, alpha) * std::cos(alpha * kPi / 2.0);
}

/// a(theta) - b(theta) along Gamma; strictly decreasing. Both endpoints are
/// accepted and give the limits (2 * vertex, asymptote level).
inline double lambda_continuous(double alpha, double theta) {
    detail::check_alpha(alpha);
    if (!(theta >= gamma_theta_lo(alpha) && theta <= kPi)) {
        throw DomainError("lambda_continuous: theta outside ((1 - alpha) pi, pi)");
    }
    if (theta == kPi) return continuous_asymptote_level(alpha);
    return std::pow(theta, alpha) * std::sin(theta / 2.0 + alpha * kPi / 2.0) / std::sin(theta / 2.0);
}

// ---------------------------------------------------------------------------
// Numerical boundary curves Gamma_m (boundary locus, Case III)

/// Left end (2m + 1 - alpha) k pi / (k - alpha) of the Gamma_m interval.
inline double gamma_m_theta_lo(double alpha, int k, int m) {
    return (2.0 * m + 1.0 - alpha) * k * kPi / (k - alpha);
}

inline double gamma_m_theta_hi(int m) { return (2.0 * m + 1.0) * kPi; }

inline CurvePoint gamma_m_point(double alpha, int k, int m, double theta) {
    detail::check_alpha(alpha);
    detail::check_curve_index(k, m);
    if (!(theta >= gamma_m_theta_lo(alpha, k, m) && theta < gamma_m_theta_hi(m))) {
        throw DomainError("gamma_m_point: theta outside the curve's parameter interval");
    }
    const double half = theta / (2.0 * k);
    const double scale =
        std::pow(2.0 * k, alpha) * std::pow(std::sin(half), alpha) / std::sin(theta);
    return {theta, scale * std::sin(theta + alpha * (kPi / 2.0 - half)),
            -scale * std::sin(alpha * kPi / 2.0 - alpha * half)};
}

/// a_m: where Gamma_m meets a + b = 0.
inline double vertex_a_m(double alpha, int k, int m) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
    detail::check_curve_index(k, m);
    const double phi = (k - 2.0 * m - 1.0) * kPi / (2.0 * (k - alpha));
    return std::pow(2.0 * k, alpha) * std::pow(std::cos(phi), alpha) / (2.0 * std::cos(alpha * phi));
}

/// Limit of a - b along Gamma_0 as theta -> pi.
inline double gamma0_asymptote_level(double alpha, int k) {
    detail::check_alpha(alpha);
    if (k < 2) throw DomainError("gamma0_asymptote_level: k must be at least 2");
    const double x = kPi / (2.0 * k);
    return std::pow(2.0 * k, alpha) * std::pow(std::sin(x), alpha) *
           std::cos(alpha * (kPi / 2.0 - x));
}

/// Limit of a - b along Gamma_m as theta -> (2m + 1) pi; m = 0 gives the Gamma_0 level.
inline double gamma_m_asymptote_level(double alpha, int k, int m) {
    detail::check_alpha(alpha);
    detail::check_curve_index(k, m);
    const double x = (2.0 * m + 1.0) * kPi / (2.0 * k);
    return std::pow(2.0 * k, alpha) * std::pow(std::sin(x), alpha) *
           std::cos(alpha * (kPi / 2.0 - x));
}

/// a - b along Gamma_0; strictly decreasing for k >= 2. Both endpoints accepted.
inline double lambda_k(double alpha, int k, double theta) {
    detail::check_alpha(alpha);
    if (k < 2) throw DomainError("lambda_k: k must be at least 2");
    if (!(theta >= gamma_m_theta_lo(alpha, k, 0) && theta <= kPi)) {
        throw DomainError("lambda_k: theta outside the Gamma_0 parameter interval");
    }
    const double half = theta / (2.0 * k);
    return std::pow(2.0 * k, alpha) * std::pow(std::sin(half), alpha) *
           std::sin(theta / 2.0 + alpha * (kPi / 2.0 - half)) / std::sin(theta / 2.0);
}

/// a - b along Gamma_m at any theta of its interval (used for ordering checks).
inline double lambda_gamma_m(double alpha, int k, int m, double theta) {
    const CurvePoint p = gamma_m_point(alpha, k, m, theta);
    return p.a - p.b;
}

struct LineLevel {
    int sign;      ///< (-1)^k
    double level;  ///< (2k)^alpha
};

/// Case I line a + sign * b = level, with sign = (-1)^k and level = (2k)^alpha.
inline LineLevel case1_line_level(double alpha, int k) {
    detail::check_alpha(alpha);
    if (k < 1) throw DomainError("case1_line_level: k must be positive");
    return {(k % 2 == 0) ? 1 : -1, std::pow(2.0 * k, alpha)};
}

// ---------------------------------------------------------------------------
// Membership

enum class MembershipStatus { StableInterior, Unstable, OnUpperLine, OnLowerBoundary, Indeterminate };
enum class BindingConstraint { UpperLine, LowerCurve };

struct MembershipVerdict {
    MembershipStatus status;
    BindingConstraint binding;
    CurveKind lower_kind;  ///< which lower boundary applies to this region
    double margin;         ///< signed value of the binding inequality (> 0 on the stable side)
    double upper_margin;   ///< -(a + b)
    double lower_margin;   ///< gap to the lower boundary; +inf when it cannot bind
    double band;           ///< tolerance band used

    bool stable() const noexcept { return status == MembershipStatus::StableInterior; }
    bool on_boundary() const noexcept {
        return status == MembershipStatus::OnUpperLine || status == MembershipStatus::OnLowerBoundary ||
               status == MembershipStatus::Indeterminate;
    }
};

namespace detail {

inline MembershipVerdict make_verdict(double upper, double lower, CurveKind kind, double tol) {
    MembershipVerdict v{MembershipStatus::Indeterminate, BindingConstraint::UpperLine, kind,
                        0.0, upper, lower, tol};
    if (std::isnan(upper) || std::isnan(lower)) {
        v.margin = std::numeric_limits<double>::quiet_NaN();
        return v;
    }
    v.binding = (lower < upper) ? BindingConstraint::LowerCurve : BindingConstraint::UpperLine;
    v.margin = std::min(upper, lower);
    if (upper < -tol || lower < -tol) {
        v.status = MembershipStatus::Unstable;
    } else if (std::fabs(upper) <= tol) {
        v.status = MembershipStatus::OnUpperLine;
        v.binding = BindingConstraint::UpperLine;
    } else if (std::fabs(lower) <= tol) {
        v.status = MembershipStatus::OnLowerBoundary;
        v.binding = BindingConstraint::LowerCurve;
    } else {
        v.status = MembershipStatus::StableInterior;
    }
    return v;
}

// Solve lambda(theta) = level for a strictly decreasing lambda on [lo, hi].
template <class Lambda>
double invert_decreasing(Lambda&& lambda, double level, double lo, double hi) {
    return bisect_root([&](double t) { return lambda(t) - level; }, lo, hi, 1e-15);
}

}  // namespace detail

/// b-coordinate of Gamma on the line a - b = level, for level strictly
/// between the asymptote level and twice the vertex.
inline double gamma_b_on_line(double alpha, double level) {
    const double lo = gamma_theta_lo(alpha);
    const double theta = detail::invert_decreasing(
        [alpha](double t) { return lambda_continuous(alpha, t); }, level, lo, kPi);
    if (theta <= lo) return -continuous_vertex(alpha);
    if (theta >= kPi) return -std::numeric_limits<double>::infinity();
    return gamma_continuous(alpha, theta).b;
}

/// b-coordinate of Gamma_0 on the line a - b = level, for level strictly
/// between its asymptote level and 2 a_0.
inline double gamma0_b_on_line(double alpha, int k, double level) {
    const double lo = gamma_m_theta_lo(alpha, k, 0);
    const double theta = detail::invert_decreasing(
        [alpha, k](double t) { return lambda_k(alpha, k, t); }, level, lo, kPi);
    if (theta >= kPi) return -std::numeric_limits<double>::infinity();
    return gamma_m_point(alpha, k, 0, theta).b;
}

/// Membership in the continuous region S* (unit delay).
inline MembershipVerdict continuous_membership(double alpha, double a, double b,
                                               double tol = kBoundaryTolerance) {
    detail::check_alpha(alpha);
    const double upper = -(a + b);
    const double level = a - b;
    double lower;
    if (level <= continuous_asymptote_level(alpha)) {
        // includes all of R1 = {a <= b < -a, a <= 0}
        lower = std::numeric_limits<double>::infinity();
    } else if (double top = 2.0 * continuous_vertex(alpha); level >= top) {
        lower = -(level - top);
    } else {
        lower = b - gamma_b_on_line(alpha, level);
    }
    return detail::make_verdict(upper, lower, CurveKind::GammaContinuous, tol);
}

inline MembershipVerdict continuous_membership(double alpha, double a, double b, double tau,
                                               double tol) {
    const double s = std::pow(tau, alpha);
    return continuous_membership(alpha, a * s, b * s, tol);
}

/// Membership in the numerical region S_k (unit delay, h = 1/k).
inline MembershipVerdict numerical_membership(double alpha, int k, double a, double b,
                                              double tol = kBoundaryTolerance) {
    detail::check_alpha(alpha);
    if (k < 1) throw DomainError("numerical_membership: k must be positive");
    const double upper = -(a + b);
    const double level = a - b;
    if (k == 1) {
        return detail::make_verdict(upper, std::pow(2.0, alpha) - level, CurveKind::CaseILine, tol);
    }
    double lower;
    if (level <= gamma0_asymptote_level(alpha, k)) {
        lower = std::numeric_limits<double>::infinity();
    } else if (double top = 2.0 * vertex_a_m(alpha, k, 0); level >= top) {
        lower = -(level - top);
    } else {
        lower = b - gamma0_b_on_line(alpha, k, level);
    }
    return detail::make_verdict(upper, lower, CurveKind::GammaM, tol);
}

inline MembershipVerdict numerical_membership(double alpha, int k, double a, double b,
                                              double tau, double tol) {
    const double s = std::pow(tau, alpha);
    return numerical_membership(alpha, k, a * s, b * s, tol);
}

// ---------------------------------------------------------------------------
// Critical orders and the failure of tau(0)-stability

struct CriticalAlphas {
    double alpha_star_low;    ///< below it the k = 2 asymptote of Gamma_0 lies above Gamma's
    double alpha_star_high;   ///< above it the Gamma_0 asymptote level decreases in k
    double residual_low;
    double residual_high;
};

/// 4^a sin^a(pi/4) cos(a pi/4) - pi^a cos(a pi/2)
inline double critical_low_equation(double a) {
    return std::pow(4.0, a) * std::pow(std::sin(kPi / 4.0), a) * std::cos(a * kPi / 4.0) -
           std::pow(kPi, a) * std::cos(a * kPi / 2.0);
}

/// g(pi/4) - g(pi/6), g(x) = (sin x / x)^a cos(a (pi/2 - x))
inline double critical_high_equation(double a) {
    auto g = [a](double x) { return std::pow(std::sin(x) / x, a) * std::cos(a * (kPi / 2.0 - x)); };
    return g(kPi / 4.0) - g(kPi / 6.0);
}

inline CriticalAlphas critical_alphas() {
    // Both equations hold trivially at a = 0; the brackets exclude that root.
    const double low = bisect_root(critical_low_equation, 0.05, 0.2, 1e-12);
    const double high = bisect_root(critical_high_equation, 0.1, 0.5, 1e-12);
    return {low, high, critical_low_equation(low), critical_high_equation(high)};
}

/// X: the crossing of Gamma_0 and Gamma, as the point on each curve.
struct CurveIntersection {
    CurvePoint on_gamma0;
    CurvePoint on_gamma;
    double level;  ///< a - b at the crossing
};

inline std::optional<CurveIntersection> gamma0_gamma_intersection(double alpha, int k) {
    detail::check_alpha(alpha);
    if (k < 2) throw DomainError("gamma0_gamma_intersection: k must be at least 2");
    const double level0 = gamma0_asymptote_level(alpha, k);
    const double level_c = continuous_asymptote_level(alpha);
    // The far ends only separate when Gamma_0 runs out to a lower line than Gamma.
    if (!(level0 > level_c)) return std::nullopt;
    const double top = std::min(2.0 * vertex_a_m(alpha, k, 0), 2.0 * continuous_vertex(alpha));
    if (!(top > level0)) return std::nullopt;

    auto gap = [alpha, k](double c) { return gamma0_b_on_line(alpha, k, c) - gamma_b_on_line(alpha, c); };
    const double width = top - level0;
    const double c_lo = level0 + 1e-9 * width;
    const double c_hi = top - 1e-12 * width;
    const double g_lo = gap(c_lo);
    const double g_hi = gap(c_hi);
    if (!std::isfinite(g_lo) || !std::isfinite(g_hi) || (g_lo > 0.0) == (g_hi > 0.0)) {
        return std::nullopt;
    }
    const double c = bisect_root(gap, c_lo, c_hi, 1e-14);

    const double t0 = detail::invert_decreasing(
        [alpha, k](double t) { return lambda_k(alpha, k, t); }, c, gamma_m_theta_lo(alpha, k, 0), kPi);
    const double tc = detail::invert_decreasing(
        [alpha](double t) { return lambda_continuous(alpha, t); }, c, gamma_theta_lo(alpha), kPi);
    CurveIntersection x{gamma_m_point(alpha, k, 0, t0), gamma_continuous(alpha, tc), c};
    if (!(std::fabs(x.on_gamma0.a) + x.on_gamma0.b < 0.0)) return std::nullopt;
    return x;
}

struct ParamPoint {
    double a;
    double b;
};

/// A point of S* that is not in S_k, or nothing when none is produced.
///
/// k = 1: midpoint of the b-axis interval between Gamma (at a = 0) and the
/// line a - b = 2^alpha. k >= 2: on the vertex side of X, halfway between
/// Gamma and Gamma_0.
inline std::optional<ParamPoint> tau0_counterexample(double alpha, int k) {
    detail::check_alpha(alpha);
    if (k < 1) throw DomainError("tau0_counterexample: k must be positive");
    if (k == 1) {
        // a = 0 on Gamma forces theta = pi - alpha pi / 2
        const double lo = -std::pow(kPi * (1.0 - alpha / 2.0), alpha);
        const double hi = -std::pow(2.0, alpha);
        if (!(lo < hi)) return std::nullopt;
        return ParamPoint{0.0, 0.5 * (lo + hi)};
    }
    const auto x = gamma0_gamma_intersection(alpha, k);
    if (!x) return std::nullopt;
    const double top = 2.0 * vertex_a_m(alpha, k, 0);
    const double c = x->level + 0.5 * (top - x->level);
    const double b_num = gamma0_b_on_line(alpha, k, c);
    const double b_cont = gamma_b_on_line(alpha, c);
    if (!(b_num > b_cont)) return std::nullopt;
    const double b = 0.5 * (b_num + b_cont);
    return ParamPoint{b + c, b};
}

// ---------------------------------------------------------------------------
// Curve export

inline constexpr std::size_t kCurveSamples = 2048;

namespace detail {

// Uniform grid in u, warped by tanh so samples crowd both ends of (lo, hi).
inline std::vector<double> warped_parameters(double lo, double hi, std::size_t n, double beta = 3.0) {
    std::vector<double> out(n);
    const double norm = std::tanh(beta);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n) - 1.0;
        const double w = 0.5 * (1.0 + std::tanh(beta * u) / norm);
        out[i] = lo + (hi - lo) * w;
    }
    return out;
}

}  // namespace detail

inline RegionCurve sample_gamma(double alpha, std::size_t n = kCurveSamples) {
    RegionCurve c{CurveKind::GammaContinuous, alpha, 0, 0, gamma_theta_lo(alpha), kPi, {}};
    for (double t : detail::warped_parameters(c.theta_lo, c.theta_hi, n)) {
        c.samples.push_back(gamma_continuous(alpha, t));
    }
    return c;
}

inline RegionCurve sample_gamma_m(double alpha, int k, int m, std::size_t n = kCurveSamples) {
    detail::check_alpha(alpha);
    detail::check_curve_index(k, m);
    RegionCurve c{CurveKind::GammaM, alpha, k, m, gamma_m_theta_lo(alpha, k, m), gamma_m_theta_hi(m), {}};
    if (!(c.theta_lo < c.theta_hi)) throw DomainError("sample_gamma_m: empty parameter interval");
    for (double t : detail::warped_parameters(c.theta_lo, c.theta_hi, n)) {
        c.samples.push_back(gamma_m_point(alpha, k, m, t));
    }
    return c;
}

/// Case I line sampled with theta = a over a window of width `span` ending
/// where the line meets a + b = 0 (k odd) or centred there (k even).
inline RegionCurve sample_case1_line(double alpha, int k, std::size_t n = kCurveSamples,
                                     double span = 10.0) {
    const LineLevel line = case1_line_level(alpha, k);
    // meets a + b = 0 at a = level / 2 for k odd; k even is parallel to it
    const double a_hi = (line.sign < 0) ? line.level / 2.0 : line.level / 2.0 + span / 2.0;
    RegionCurve c{CurveKind::CaseILine, alpha, k, 0, a_hi - span, a_hi, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double a = c.theta_lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
        // a + sign b = level
        c.samples.push_back({a, a, (line.level - a) / line.sign});
    }
    return c;
}

inline std::string to_string(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::StableInterior: return "StableInterior";
        case MembershipStatus::Unstable: return "Unstable";
        case MembershipStatus::OnUpperLine: return "OnUpperLine";
        case MembershipStatus::OnLowerBoundary: return "OnLowerBoundary";
        case MembershipStatus::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

inline std::string to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::GammaContinuous: return "gamma";
        case CurveKind::GammaM: return "gammam";
        case CurveKind::CaseILine: return "line";
    }
    return "line";
}

inline std::string to_string(BindingConstraint c) {
    return c == BindingConstraint::UpperLine ? "UpperLine" : "LowerCurve";
}

}  // namespace fracdde
