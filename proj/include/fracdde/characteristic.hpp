#pragma once

// Characteristic function Q(s) = s^alpha - a - b (1 - h s)^k of the GL scheme
// and root counting on the closed disk |s - 1/h| <= 1/h.
//
// The circle is s(phi) = h^{-1}(1 + e^{2 i phi}) = 2 h^{-1} cos(phi) e^{i phi},
// phi in (-pi/2, pi/2), traversed counter-clockwise. It passes through the
// branch point s = 0 at phi = +-pi/2; a short arc there is cut out and replaced
// by the two chords through Q(0) = -a - b.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracdde/errors.hpp"
#include "fracdde/model.hpp"
#include "fracdde/special.hpp"

namespace fracdde {

inline Complex eval_Q(Complex s, const ModelParams& p) {
    const double h = p.step();
    return principal_power(s, p.alpha) - p.a - p.b * integer_power(1.0 - h * s, p.k);
}

inline Complex eval_P(Complex z, const ModelParams& p) {
    const double h_alpha = std::pow(p.step(), p.alpha);
    return principal_power(1.0 - z, p.alpha) - h_alpha * (p.a + p.b * integer_power(z, p.k));
}

/// Q on the disk boundary, written in phi so that 1 - h s = -e^{2 i phi} is exact.
inline Complex contour_Q(double phi, const ModelParams& p) {
    const double h = p.step();
    const double c = std::cos(phi);
    if (c <= 0.0) return Complex(-p.a - p.b, 0.0);  // s = 0
    const double mag = std::pow(2.0 * c / h, p.alpha);
    const Complex s_alpha{mag * std::cos(p.alpha * phi), mag * std::sin(p.alpha * phi)};
    const double sign = (p.k % 2 == 0) ? 1.0 : -1.0;
    const double twok = 2.0 * p.k * phi;
    return s_alpha - p.a - p.b * sign * Complex(std::cos(twok), std::sin(twok));
}

/// Angular width (in the circle angle 2 phi) of the arc cut out around s = 0.
inline constexpr double kExcisionWidth = 1e-7;
/// Relative modulus below which a root on the circle is suspected.
inline constexpr double kBoundaryRootThreshold = 1e-7;

struct RootReport {
    int winding = 0;  ///< roots in the open disk, with multiplicity
    double min_modulus_on_circle = std::numeric_limits<double>::infinity();
    bool boundary_root_suspected = false;
    std::size_t samples_used = 0;
    double scale = 1.0;  ///< 1 + |a| + |b| + h^{-alpha}
};

namespace detail {

struct ArgumentTrace {
    double total = 0.0;  // accumulated change of arg Q
    double min_modulus = std::numeric_limits<double>::infinity();
    std::size_t samples = 0;
    bool unresolved = false;
};

// Change of arg Q along phi in [phi0, phi1] with adaptive splitting so that
// each accepted step changes the argument by less than pi/2.
inline void trace_argument(const ModelParams& p, double phi0, double phi1, std::size_t n,
                           ArgumentTrace& tr) {
    struct Node {
        double phi;
        Complex q;
    };
    constexpr double kMaxStep = std::numbers::pi / 2.0;
    constexpr double kMinWidth = 1e-15;
    auto sample = [&](double phi) {
        const Complex q = contour_Q(phi, p);
        tr.min_modulus = std::min(tr.min_modulus, std::abs(q));
        ++tr.samples;
        return Node{phi, q};
    };
    Node left = sample(phi0);
    std::vector<Node> pending;  // right endpoints still to reach, top = nearest
    for (std::size_t i = n; i >= 1; --i) {
        const double phi = phi0 + (phi1 - phi0) * static_cast<double>(i) / static_cast<double>(n);
        pending.push_back(i == n ? sample(phi1) : sample(phi));
    }
    while (!pending.empty()) {
        const Node right = pending.back();
        const double step = std::arg(right.q * std::conj(left.q));
        if (std::fabs(step) < kMaxStep || right.phi - left.phi < kMinWidth) {
            if (std::fabs(step) >= kMaxStep) tr.unresolved = true;
            tr.total += step;
            left = right;
            pending.pop_back();
        } else {
            pending.push_back(sample(0.5 * (left.phi + right.phi)));
        }
    }
}

// Arg change from Q(phi_from) straight to Q(phi_to) with no refinement.
inline double chord_step(Complex from, Complex to) { return std::arg(to * std::conj(from)); }

inline RootReport finish_report(const ModelParams& p, const ArgumentTrace& tr, double turns) {
    RootReport r;
    r.scale = 1.0 + std::fabs(p.a) + std::fabs(p.b) + p.singular_a();
    r.winding = static_cast<int>(std::lround(turns));
    r.min_modulus_on_circle = tr.min_modulus;
    r.samples_used = tr.samples;
    r.boundary_root_suspected = tr.unresolved || tr.min_modulus < kBoundaryRootThreshold * r.scale;
    return r;
}

inline std::size_t base_samples(const ModelParams& p, std::size_t n_base) {
    // (1 - h s)^k turns k times around the circle
    return std::max<std::size_t>(n_base, 64 * static_cast<std::size_t>(p.k));
}

}  // namespace detail

/// Winding number of Q around 0 along the disk boundary.
inline RootReport count_roots_in_disk(const ModelParams& p, std::size_t n_base = 1024) {
    p.validate();
    if (n_base < 256) throw DomainError("count_roots_in_disk: n_base must be at least 256");
    const double half = std::numbers::pi / 2.0;
    const double cut = kExcisionWidth / 4.0;  // phi is half the circle angle
    detail::ArgumentTrace tr;
    detail::trace_argument(p, -half + cut, half - cut, detail::base_samples(p, n_base), tr);
    const Complex q_start = contour_Q(-half + cut, p);
    const Complex q_end = contour_Q(half - cut, p);
    const Complex q_zero(-p.a - p.b, 0.0);
    tr.min_modulus = std::min(tr.min_modulus, std::abs(q_zero));
    tr.samples += 1;
    if (std::abs(q_zero) > 0.0) {
        tr.total += detail::chord_step(q_end, q_zero) + detail::chord_step(q_zero, q_start);
    } else {
        tr.unresolved = true;
    }
    return detail::finish_report(p, tr, tr.total / (2.0 * std::numbers::pi));
}

/// Same count from the upper half-contour only, using Q(conj s) = conj Q(s).
inline RootReport count_roots_upper_half(const ModelParams& p, std::size_t n_base = 1024) {
    p.validate();
    if (n_base < 256) throw DomainError("count_roots_upper_half: n_base must be at least 256");
    const double half = std::numbers::pi / 2.0;
    const double cut = kExcisionWidth / 4.0;
    detail::ArgumentTrace tr;
    detail::trace_argument(p, 0.0, half - cut, detail::base_samples(p, n_base) / 2, tr);
    const Complex q_zero(-p.a - p.b, 0.0);
    tr.min_modulus = std::min(tr.min_modulus, std::abs(q_zero));
    tr.samples += 1;
    if (std::abs(q_zero) > 0.0) {
        tr.total += detail::chord_step(contour_Q(half - cut, p), q_zero);
    } else {
        tr.unresolved = true;
    }
    return detail::finish_report(p, tr, 2.0 * tr.total / (2.0 * std::numbers::pi));
}

enum class Classification { DecaysToZero, UnstableForSomeHistory, BoundaryCase };

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::DecaysToZero: return "DecaysToZero";
        case Classification::UnstableForSomeHistory: return "UnstableForSomeHistory";
        case Classification::BoundaryCase: return "BoundaryCase";
    }
    return "BoundaryCase";
}

struct ClassifyResult {
    Classification classification;
    RootReport roots;
};

/// Long-time behaviour of the scheme from the root count.
inline ClassifyResult classify_with_roots(const ModelParams& p, std::size_t n_base = 1024) {
    p.validate_solvable();
    RootReport r = count_roots_in_disk(p, n_base);
    // a + b = 0 with k = 1: the constant mode y_n = y_0 sits on the boundary
    if (p.k == 1 && p.a + p.b == 0.0) return {Classification::BoundaryCase, r};
    if (r.boundary_root_suspected) return {Classification::BoundaryCase, r};
    return {r.winding == 0 ? Classification::DecaysToZero : Classification::UnstableForSomeHistory, r};
}

inline Classification classify(const ModelParams& p) { return classify_with_roots(p).classification; }

}  // namespace fracdde
