#pragma once

// Three-way cross-check over a rectangular (a, b) grid: geometric membership
// in S_k, the root-count classification, and the empirical behaviour of
// trajectories started from random histories.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fracdde/characteristic.hpp"
#include "fracdde/decay.hpp"
#include "fracdde/errors.hpp"
#include "fracdde/model.hpp"
#include "fracdde/regions.hpp"
#include "fracdde/solver.hpp"

namespace fracdde {

struct GridAxis {
    double lo = -4.0;
    double hi = 1.0;
    int count = 21;

    double at(int i) const {
        if (count == 1) return lo;
        // exact endpoints, evenly spread interior
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

struct SweepConfig {
    double alpha = 0.5;
    int k = 5;
    double tau = 1.0;
    GridAxis a_axis;
    GridAxis b_axis;
    std::size_t steps = 2000;
    int trials = 8;
    std::uint64_t seed = 20210401;
    double boundary_band = 1e-6;
    std::size_t n_base = 1024;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct SweepPoint {
    double a = 0.0;
    double b = 0.0;
    MembershipVerdict geometric{};
    bool solvable = true;
    RootReport roots{};
    Classification classification = Classification::BoundaryCase;
    EmpiricalVerdict empirical = EmpiricalVerdict::Bounded;
    int trials_run = 0;
    int trials_diverged = 0;
    int trials_decayed = 0;
    bool excluded = false;  ///< within the boundary band, a = h^{-alpha}, or a root on the circle
    bool agree = true;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepPoint> points;  ///< row-major, b outer, a inner
    int mismatches = 0;
    int excluded = 0;
};

/// Histories uniform in [-1, 1] at the k + 1 nodes, keyed by (seed, point, trial).
inline std::vector<double> random_history(std::uint64_t seed, std::size_t point, int trial, int k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> h(static_cast<std::size_t>(k) + 1);
    for (double& v : h) v = dist(rng);
    return h;
}

/// Within `band` of the upper line or of the lower curve.
inline bool near_boundary(const MembershipVerdict& v, double band) {
    if (v.on_boundary()) return true;
    if (!(std::fabs(v.upper_margin) > band)) return true;
    return !(std::fabs(v.lower_margin) > band);
}

/// Evaluate one grid point. Trials stop at the first divergence.
inline SweepPoint evaluate_sweep_point(const SweepConfig& cfg, std::size_t index, double a, double b,
                                       const WeightTable& weights) {
    SweepPoint pt;
    pt.a = a;
    pt.b = b;
    pt.geometric = numerical_membership(cfg.alpha, cfg.k, a, b, cfg.tau, kBoundaryTolerance);
    const ModelParams params{cfg.alpha, a, b, cfg.tau, cfg.k};
    pt.excluded = near_boundary(pt.geometric, cfg.boundary_band);
    try {
        params.validate_solvable();
    } catch (const SolvabilityError&) {
        pt.solvable = false;
        pt.excluded = true;
        pt.agree = true;
        return pt;
    }
    const auto cls = classify_with_roots(params, cfg.n_base);
    pt.classification = cls.classification;
    pt.roots = cls.roots;
    // Q vanishes on the circle: the point lies on the boundary locus itself
    if (pt.roots.min_modulus_on_circle < kBoundaryRootThreshold * pt.roots.scale) pt.excluded = true;

    for (int t = 0; t < cfg.trials; ++t) {
        const Trajectory traj =
            solve_from_history(params, random_history(cfg.seed, index, t, cfg.k), cfg.steps, &weights);
        const EmpiricalVerdict v = empirical_verdict(traj);
        ++pt.trials_run;
        if (v == EmpiricalVerdict::Diverges) {
            ++pt.trials_diverged;
            break;
        }
        if (v == EmpiricalVerdict::Decays) ++pt.trials_decayed;
    }
    if (pt.trials_diverged > 0) {
        pt.empirical = EmpiricalVerdict::Diverges;
    } else if (pt.trials_decayed == pt.trials_run) {
        pt.empirical = EmpiricalVerdict::Decays;
    } else {
        pt.empirical = EmpiricalVerdict::Bounded;
    }

    if (!pt.excluded) {
        const bool geo_stable = pt.geometric.stable();
        const bool roots_stable = pt.classification == Classification::DecaysToZero;
        const bool roots_unstable = pt.classification == Classification::UnstableForSomeHistory;
        const bool emp_unstable = pt.empirical == EmpiricalVerdict::Diverges;
        pt.agree = geo_stable ? (roots_stable && !emp_unstable) : (roots_unstable && emp_unstable);
    }
    return pt;
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.a_axis.count < 1 || cfg.b_axis.count < 1) throw DomainError("sweep: empty grid");
    if (cfg.trials < 1) throw DomainError("sweep: need at least one trial");
    ModelParams{cfg.alpha, 0.0, 0.0, cfg.tau, cfg.k}.validate();
    const WeightTable weights(cfg.alpha, cfg.steps);

    const std::size_t na = static_cast<std::size_t>(cfg.a_axis.count);
    const std::size_t total = na * static_cast<std::size_t>(cfg.b_axis.count);
    SweepResult result{cfg, std::vector<SweepPoint>(total), 0, 0};

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const double a = cfg.a_axis.at(static_cast<int>(i % na));
            const double b = cfg.b_axis.at(static_cast<int>(i / na));
            result.points[i] = evaluate_sweep_point(cfg, i, a, b, weights);
        }
    };
    unsigned n_threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& p : result.points) {
        if (p.excluded) ++result.excluded;
        if (!p.excluded && !p.agree) ++result.mismatches;
    }
    return result;
}

}  // namespace fracdde
