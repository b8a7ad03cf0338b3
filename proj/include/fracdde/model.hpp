#pragma once

// Problem configuration for D^alpha y(t) = a y(t) + b y(t - tau), y = phi on [-tau, 0].

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracdde/errors.hpp"

namespace fracdde {

struct ModelParams {
    double alpha = 0.5;
    double a = 0.0;
    double b = 0.0;
    double tau = 1.0;
    int k = 1;  ///< steps per delay

    double step() const noexcept { return tau / static_cast<double>(k); }
    /// h^{-alpha}; the value of a for which the implicit step is singular.
    double singular_a() const noexcept { return std::pow(step(), -alpha); }

    /// Throws DomainError for alpha, tau or k outside their ranges.
    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
        if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
        if (k < 1) throw DomainError("k must be a positive integer");
        if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("a and b must be finite");
    }

    /// Also rejects a == h^{-alpha}.
    void validate_solvable() const {
        validate();
        if (1.0 - std::pow(step(), alpha) * a == 0.0) {
            throw SolvabilityError("a equals h^{-alpha}; the implicit step is singular");
        }
    }

    /// Same problem with unit delay: (alpha, a tau^alpha, b tau^alpha, 1, k).
    ModelParams unit_delay() const {
        const double s = std::pow(tau, alpha);
        return ModelParams{alpha, a * s, b * s, 1.0, k};
    }
};

namespace phi {

struct Constant {
    double c;
};
/// p t + q
struct Linear {
    double p;
    double q;
};
/// amplitude * sin(omega t)
struct Sinusoid {
    double amplitude;
    double omega;
};
/// Piecewise-linear interpolation of (t, y) nodes sorted by t.
struct Sampled {
    std::vector<std::pair<double, double>> nodes;
};

}  // namespace phi

using InitialFunction = std::variant<phi::Constant, phi::Linear, phi::Sinusoid, phi::Sampled>;

/// Sampled tables must cover [-tau, 0]; checked with a relative slack of 1e-12.
inline void check_coverage(const InitialFunction& f, double tau) {
    if (const auto* s = std::get_if<phi::Sampled>(&f)) {
        if (s->nodes.empty()) throw DomainError("sampled initial function has no nodes");
        const double slack = 1e-12 * std::max(1.0, tau);
        if (s->nodes.front().first > -tau + slack || s->nodes.back().first < -slack) {
            throw DomainError("sampled initial function does not cover [-tau, 0]");
        }
    }
}

inline double evaluate(const InitialFunction& f, double t) {
    struct Visitor {
        double t;
        double operator()(const phi::Constant& c) const { return c.c; }
        double operator()(const phi::Linear& l) const { return l.p * t + l.q; }
        double operator()(const phi::Sinusoid& s) const { return s.amplitude * std::sin(s.omega * t); }
        double operator()(const phi::Sampled& s) const {
            const auto& n = s.nodes;
            if (n.size() == 1 || t <= n.front().first) return n.front().second;
            if (t >= n.back().first) return n.back().second;
            auto hi = std::upper_bound(n.begin(), n.end(), t,
                                       [](double v, const auto& node) { return v < node.first; });
            auto lo = hi - 1;
            const double span = hi->first - lo->first;
            if (span <= 0.0) return lo->second;
            const double w = (t - lo->first) / span;
            return (1.0 - w) * lo->second + w * hi->second;
        }
    };
    return std::visit(Visitor{t}, f);
}

/// phi(tau s) as a function of s on [-1, 0]; the initial function of the unit-delay problem.
inline InitialFunction rescale_time(const InitialFunction& f, double tau) {
    struct Visitor {
        double tau;
        InitialFunction operator()(const phi::Constant& c) const { return c; }
        InitialFunction operator()(const phi::Linear& l) const { return phi::Linear{l.p * tau, l.q}; }
        InitialFunction operator()(const phi::Sinusoid& s) const {
            return phi::Sinusoid{s.amplitude, s.omega * tau};
        }
        InitialFunction operator()(const phi::Sampled& s) const {
            phi::Sampled out = s;
            for (auto& node : out.nodes) node.first /= tau;
            return out;
        }
    };
    return std::visit(Visitor{tau}, f);
}

}  // namespace fracdde
