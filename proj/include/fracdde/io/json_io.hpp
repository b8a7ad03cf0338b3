#pragma once

// JSON views of the library types. Non-finite numbers become null.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracdde/characteristic.hpp"
#include "fracdde/decay.hpp"
#include "fracdde/errors.hpp"
#include "fracdde/model.hpp"
#include "fracdde/regions.hpp"
#include "fracdde/solver.hpp"
#include "fracdde/sweep.hpp"

namespace fracdde::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json document() {
    Json j;
    j["schema_version"] = kSchemaVersion;
    return j;
}

inline Json to_json(const ModelParams& p) {
    return Json{{"alpha", p.alpha}, {"a", p.a}, {"b", p.b}, {"tau", p.tau}, {"k", p.k}, {"h", p.step()}};
}

inline ModelParams params_from_json(const Json& j) {
    try {
        ModelParams p{j.at("alpha").get<double>(), j.at("a").get<double>(), j.at("b").get<double>(),
                      j.at("tau").get<double>(), j.at("k").get<int>()};
        p.validate();
        return p;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
}

inline Json to_json(const Trajectory& t) {
    Json j = document();
    j["params"] = to_json(t.params());
    j["history"] = Json::array();
    for (double v : t.history()) j["history"].push_back(v);
    j["values"] = Json::array();
    for (double v : t.values()) j["values"].push_back(v);
    j["diverged"] = t.diverged();
    return j;
}

inline Trajectory trajectory_from_json(const Json& j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw ConfigError("trajectory: unsupported schema_version");
        }
        const ModelParams p = params_from_json(j.at("params"));
        auto history = j.at("history").get<std::vector<double>>();
        if (history.size() != static_cast<std::size_t>(p.k) + 1) {
            throw ConfigError("trajectory: history must hold k + 1 values");
        }
        return Trajectory(p, std::move(history), j.at("values").get<std::vector<double>>(),
                          j.value("diverged", false));
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("trajectory: ") + e.what());
    }
}

inline Json to_json(const MembershipVerdict& v) {
    return Json{{"status", to_string(v.status)},
                {"binding", to_string(v.binding)},
                {"lower_kind", to_string(v.lower_kind)},
                {"margin", number(v.margin)},
                {"upper_margin", number(v.upper_margin)},
                {"lower_margin", number(v.lower_margin)},
                {"band", v.band}};
}

inline Json to_json(const RootReport& r) {
    return Json{{"winding", r.winding},
                {"min_modulus_on_circle", number(r.min_modulus_on_circle)},
                {"boundary_root_suspected", r.boundary_root_suspected},
                {"samples_used", r.samples_used},
                {"scale", r.scale}};
}

inline Json to_json(const RegionCurve& c) {
    Json j{{"kind", to_string(c.kind)}, {"alpha", c.alpha}};
    if (c.kind != CurveKind::GammaContinuous) j["k"] = c.k;
    if (c.kind == CurveKind::GammaM) j["m"] = c.m;
    j["theta_lo"] = c.theta_lo;
    j["theta_hi"] = c.theta_hi;
    j["samples"] = c.samples.size();
    return j;
}

inline Json to_json(const DecayReport& r) {
    Json series = Json::array();
    for (const auto& [t, p] : r.index_series) series.push_back(Json{{"t", t}, {"p", p}});
    return Json{{"index_series", series},
                {"ml_constant_estimate", number(r.ml_constant_estimate)},
                {"ml_constant_predicted", number(r.ml_constant_predicted)},
                {"empirical_verdict", to_string(r.empirical_verdict)}};
}

inline Json to_json(const SweepPoint& p) {
    return Json{{"a", p.a},
                {"b", p.b},
                {"geometric", to_json(p.geometric)},
                {"solvable", p.solvable},
                {"roots", to_json(p.roots)},
                {"classification", to_string(p.classification)},
                {"empirical", to_string(p.empirical)},
                {"trials_run", p.trials_run},
                {"trials_diverged", p.trials_diverged},
                {"excluded", p.excluded},
                {"agree", p.agree}};
}

inline Json sweep_summary(const SweepResult& r) {
    const auto& c = r.config;
    return Json{{"alpha", c.alpha},
                {"k", c.k},
                {"tau", c.tau},
                {"grid_a", Json{{"lo", c.a_axis.lo}, {"hi", c.a_axis.hi}, {"count", c.a_axis.count}}},
                {"grid_b", Json{{"lo", c.b_axis.lo}, {"hi", c.b_axis.hi}, {"count", c.b_axis.count}}},
                {"steps", c.steps},
                {"trials", c.trials},
                {"seed", c.seed},
                {"boundary_band", c.boundary_band},
                {"points", r.points.size()},
                {"excluded", r.excluded},
                {"mismatches", r.mismatches}};
}

}  // namespace fracdde::io
