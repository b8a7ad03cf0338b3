// fracdde: command-line driver for the GL scheme of D^alpha y = a y(t) + b y(t - tau).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracdde/characteristic.hpp"
#include "fracdde/decay.hpp"
#include "fracdde/errors.hpp"
#include "fracdde/io/format.hpp"
#include "fracdde/io/json_io.hpp"
#include "fracdde/io/phi_spec.hpp"
#include "fracdde/model.hpp"
#include "fracdde/regions.hpp"
#include "fracdde/solver.hpp"
#include "fracdde/sweep.hpp"

namespace {

using namespace fracdde;
using io::Json;

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kSolvability = 3, kMismatch = 4 };

struct Options {
    double alpha = 0.5;
    double a = 0.0;
    double b = 0.0;
    double tau = 1.0;
    std::string k = "1";
    std::optional<std::size_t> steps;
    std::string phi = "const:1";
    std::string output = "-";
    std::string format = "csv";
    std::uint64_t seed = 1;

    // per-command
    std::string curves = "gamma,gamma0";
    std::size_t samples = kCurveSamples;
    std::string grid_a;
    std::string grid_b;
    std::string times = "100,200,300,400,500";
    bool table1 = false;
    std::string preset;
    int trials = 8;
    double band = 1e-6;
    unsigned threads = 0;
};

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> out;
    for (auto part : io::split(text, ',')) {
        const double v = io::parse_number(part, "--k");
        if (v != static_cast<double>(static_cast<int>(v)) || v < 1) {
            throw ConfigError("--k: expected positive integers, got '" + std::string(part) + "'");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

int single_k(const Options& o) {
    const auto ks = parse_k_list(o.k);
    if (ks.size() != 1) throw ConfigError("--k: this command takes a single value");
    return ks.front();
}

ModelParams model_params(const Options& o) {
    ModelParams p{o.alpha, o.a, o.b, o.tau, single_k(o)};
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("--alpha/--tau/--k/--a/--b: ") + e.what());
    }
    return p;
}

GridAxis parse_axis(const std::string& text, const char* flag) {
    const auto parts = io::split(text, ':');
    if (parts.size() != 3) throw ConfigError(std::string(flag) + ": expected lo:hi:count");
    GridAxis g;
    g.lo = io::parse_number(parts[0], flag);
    g.hi = io::parse_number(parts[1], flag);
    const double n = io::parse_number(parts[2], flag);
    if (n < 1 || n != static_cast<double>(static_cast<int>(n))) {
        throw ConfigError(std::string(flag) + ": count must be a positive integer");
    }
    g.count = static_cast<int>(n);
    if (g.count > 1 && !(g.lo < g.hi)) throw ConfigError(std::string(flag) + ": need lo < hi");
    return g;
}

bool json_format(const Options& o) {
    if (o.format == "json") return true;
    if (o.format == "csv") return false;
    throw ConfigError("--format: expected csv or json");
}

/// stdout for "-", otherwise a file opened for writing.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ConfigError("--output: cannot write '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) throw ConfigError("--output: write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_json(const std::string& path, const Json& j) {
    Sink sink(path);
    sink.stream() << j.dump(2) << '\n';
    sink.finish();
}

// ---------------------------------------------------------------------------

int cmd_solve(const Options& o) {
    const ModelParams p = model_params(o);
    const bool as_json = json_format(o);
    const InitialFunction f = io::parse_phi(o.phi);
    check_coverage(f, p.tau);
    p.validate_solvable();
    const Trajectory traj = solve(p, f, o.steps.value_or(1000));
    if (as_json) {
        write_json(o.output, io::to_json(traj));
        return kOk;
    }
    Sink sink(o.output);
    io::CsvWriter csv(sink.stream(), {"n", "t", "y"});
    const long last = static_cast<long>(traj.last_index());
    for (long n = -p.k; n <= last; ++n) csv.row(n, traj.time(n), traj.y(n));
    sink.finish();
    return kOk;
}

struct NamedCurve {
    std::string name;
    RegionCurve curve;
    double asymptote_level;
    double vertex;  // NaN for the line
};

std::vector<NamedCurve> build_curves(const Options& o) {
    detail::check_alpha(o.alpha);
    const auto ks = parse_k_list(o.k);
    std::vector<NamedCurve> out;
    const double nan = std::nan("");
    bool gamma_done = false;
    for (auto spec : io::split(o.curves, ',')) {
        if (spec == "gamma") {
            if (gamma_done) continue;
            gamma_done = true;
            out.push_back({"gamma", sample_gamma(o.alpha, o.samples), continuous_asymptote_level(o.alpha),
                           continuous_vertex(o.alpha)});
            continue;
        }
        int m = -1;
        bool line = false;
        if (spec == "gamma0") {
            m = 0;
        } else if (spec.substr(0, 7) == "gammam:") {
            const double v = io::parse_number(spec.substr(7), "--curves gammam");
            if (v < 0 || v != static_cast<double>(static_cast<int>(v))) {
                throw ConfigError("--curves: gammam index must be a non-negative integer");
            }
            m = static_cast<int>(v);
        } else if (spec == "line") {
            line = true;
        } else {
            throw ConfigError("--curves: unknown curve '" + std::string(spec) +
                              "' (gamma, gamma0, gammam:<m>, line)");
        }
        for (int k : ks) {
            if (line) {
                const LineLevel lv = case1_line_level(o.alpha, k);
                out.push_back({"line_k" + std::to_string(k), sample_case1_line(o.alpha, k, o.samples),
                               lv.level, nan});
                continue;
            }
            if (2 * m + 1 >= k) {
                throw ConfigError("--curves: gammam:" + std::to_string(m) + " needs k > " +
                                  std::to_string(2 * m + 1));
            }
            const std::string stem = m == 0 ? std::string("gamma0") : "gammam" + std::to_string(m);
            out.push_back({stem + "_k" + std::to_string(k), sample_gamma_m(o.alpha, k, m, o.samples), gamma_m_asymptote_level(o.alpha, k, m),
                           vertex_a_m(o.alpha, k, m)});
        }
    }
    if (out.empty()) throw ConfigError("--curves: nothing to export");
    return out;
}

Json curve_header(const NamedCurve& c) {
    Json j = io::to_json(c.curve);
    j["name"] = c.name;
    j["asymptote_level"] = c.asymptote_level;
    j["vertex_a"] = io::number(c.vertex);
    if (c.curve.kind == CurveKind::CaseILine) j["sign"] = case1_line_level(c.curve.alpha, c.curve.k).sign;
    return j;
}

void write_curve_csv(std::ostream& os, const RegionCurve& c) {
    io::CsvWriter csv(os, {"theta", "a", "b"});
    for (const auto& pt : c.samples) csv.row(pt.theta, pt.a, pt.b);
}

int cmd_region(const Options& o) {
    const bool as_json = json_format(o);
    if (o.samples < 2) throw ConfigError("--samples: need at least 2");
    const auto curves = build_curves(o);
    Json doc = io::document();
    doc["alpha"] = o.alpha;
    doc["curves"] = Json::array();
    if (as_json) {
        for (const auto& c : curves) {
            Json h = curve_header(c);
            Json pts = Json::array();
            for (const auto& pt : c.curve.samples) pts.push_back(Json{pt.theta, pt.a, pt.b});
            h["points"] = std::move(pts);
            doc["curves"].push_back(std::move(h));
        }
        write_json(o.output, doc);
        return kOk;
    }
    if (o.output == "-") {
        if (curves.size() != 1) throw ConfigError("--output: several curves need a file prefix");
        write_curve_csv(std::cout, curves.front().curve);
        return kOk;
    }
    for (const auto& c : curves) {
        Json h = curve_header(c);
        h["file"] = o.output + "_" + c.name + ".csv";
        Sink sink(h["file"].get<std::string>());
        write_curve_csv(sink.stream(), c.curve);
        sink.finish();
        doc["curves"].push_back(std::move(h));
    }
    write_json(o.output + ".json", doc);
    return kOk;
}

struct ClassifyRow {
    double a;
    double b;
    MembershipVerdict geometric;
    MembershipVerdict continuous;
    std::optional<ClassifyResult> result;  // empty when a = h^{-alpha}
    bool tau0_counterexample;
};

ClassifyRow classify_point(const ModelParams& p) {
    ClassifyRow r{p.a, p.b, numerical_membership(p.alpha, p.k, p.a, p.b, p.tau, kBoundaryTolerance),
                  continuous_membership(p.alpha, p.a, p.b, p.tau, kBoundaryTolerance), std::nullopt, false};
    r.tau0_counterexample = r.continuous.stable() && r.geometric.status == MembershipStatus::Unstable;
    try {
        r.result = classify_with_roots(p);
    } catch (const SolvabilityError&) {
    }
    return r;
}

Json to_json(const ClassifyRow& r, bool with_params, const ModelParams& p) {
    Json j = with_params ? io::document() : Json::object();
    if (with_params) j["params"] = io::to_json(p);
    j["a"] = r.a;
    j["b"] = r.b;
    j["geometric"] = io::to_json(r.geometric);
    j["continuous"] = io::to_json(r.continuous);
    if (r.result) {
        j["roots"] = io::to_json(r.result->roots);
        j["classification"] = to_string(r.result->classification);
    } else {
        j["roots"] = nullptr;
        j["classification"] = "Unsolvable";
    }
    j["tau0_counterexample"] = r.tau0_counterexample;
    return j;
}

int cmd_classify(const Options& o) {
    const ModelParams base = model_params(o);
    const bool as_json = json_format(o);
    const bool grid = !o.grid_a.empty() || !o.grid_b.empty();
    std::vector<ClassifyRow> rows;
    if (grid) {
        const GridAxis ga = parse_axis(o.grid_a.empty() ? "-4:1:21" : o.grid_a, "--grid-a");
        const GridAxis gb = parse_axis(o.grid_b.empty() ? "-4:1:21" : o.grid_b, "--grid-b");
        for (int j = 0; j < gb.count; ++j) {
            for (int i = 0; i < ga.count; ++i) {
                ModelParams p = base;
                p.a = ga.at(i);
                p.b = gb.at(j);
                rows.push_back(classify_point(p));
            }
        }
    } else {
        base.validate_solvable();
        rows.push_back(classify_point(base));
    }
    if (as_json) {
        if (!grid) {
            write_json(o.output, to_json(rows.front(), true, base));
            return kOk;
        }
        Json doc = io::document();
        doc["params"] = io::to_json(base);
        doc["points"] = Json::array();
        for (const auto& r : rows) doc["points"].push_back(to_json(r, false, base));
        write_json(o.output, doc);
        return kOk;
    }
    Sink sink(o.output);
    io::CsvWriter csv(sink.stream(), {"a", "b", "geometric", "margin", "winding", "classification",
                                      "continuous", "tau0_counterexample"});
    for (const auto& r : rows) {
        csv.row(r.a, r.b, to_string(r.geometric.status), r.geometric.margin,
                r.result ? r.result->roots.winding : 0,
                r.result ? to_string(r.result->classification) : std::string("Unsolvable"),
                to_string(r.continuous.status), r.tau0_counterexample);
    }
    sink.finish();
    return kOk;
}

struct DecayRun {
    ModelParams params;
    InitialFunction phi;
    std::size_t steps;
};

std::vector<double> parse_times(const std::string& text) {
    std::vector<double> out;
    for (auto part : io::split(text, ',')) out.push_back(io::parse_number(part, "--times"));
    return out;
}

int cmd_decay(const Options& o) {
    const bool as_json = json_format(o);
    std::vector<DecayRun> runs;
    std::string preset = o.preset;
    if (o.table1) {
        if (!preset.empty() && preset != "table1") throw ConfigError("--table1 conflicts with --preset");
        preset = "table1";
    }
    if (preset == "table1") {
        for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            runs.push_back({ModelParams{alpha, -3.0, 1.0, 1.0, 10}, phi::Constant{0.4}, 5000});
        }
    } else if (preset == "boundary") {
        runs.push_back({ModelParams{0.5, -1.0, 1.0, 1.0, 1}, phi::Constant{1.0}, 2000});
    } else if (preset == "ml") {
        runs.push_back({ModelParams{0.5, -3.0, 1.0, 1.0, 10}, phi::Constant{0.4}, 10000});
    } else if (preset.empty()) {
        const InitialFunction f = io::parse_phi(o.phi);
        runs.push_back({model_params(o), f, o.steps.value_or(5000)});
    } else {
        throw ConfigError("--preset: expected table1, boundary or ml");
    }
    const auto times = parse_times(o.times);

    Json doc = io::document();
    if (!preset.empty()) doc["preset"] = preset;
    doc["runs"] = Json::array();
    std::ostringstream rows;
    io::CsvWriter csv(rows, {"alpha", "t", "p"});
    for (const auto& run : runs) {
        check_coverage(run.phi, run.params.tau);
        run.params.validate_solvable();
        const Trajectory traj = solve(run.params, run.phi, run.steps);
        const DecayReport rep = analyze_decay(traj, times);
        for (const auto& [t, p] : rep.index_series) csv.row(run.params.alpha, t, p);
        Json r{{"params", io::to_json(run.params)}, {"steps", run.steps}};
        r["report"] = io::to_json(rep);
        doc["runs"].push_back(std::move(r));
    }
    if (as_json) {
        write_json(o.output, doc);
        return kOk;
    }
    Sink sink(o.output);
    sink.stream() << rows.str();
    sink.finish();
    for (const auto& r : doc["runs"]) {
        const auto& rep = r["report"];
        std::cerr << "alpha=" << r["params"]["alpha"] << " verdict=" << rep["empirical_verdict"].get<std::string>()
                  << " ml_estimate=" << rep["ml_constant_estimate"] << " ml_predicted=" << rep["ml_constant_predicted"]
                  << '\n';
    }
    return kOk;
}

int cmd_sweep(const Options& o) {
    const bool as_json = json_format(o);
    SweepConfig cfg;
    cfg.alpha = o.alpha;
    cfg.k = single_k(o);
    cfg.tau = o.tau;
    cfg.a_axis = parse_axis(o.grid_a.empty() ? "-4:1:21" : o.grid_a, "--grid-a");
    cfg.b_axis = parse_axis(o.grid_b.empty() ? "-4:1:21" : o.grid_b, "--grid-b");
    cfg.steps = o.steps.value_or(2000);
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.boundary_band = o.band;
    cfg.threads = o.threads;
    if (cfg.trials < 1) throw ConfigError("--trials: need at least 1");
    if (!(cfg.boundary_band >= 0.0)) throw ConfigError("--band: must be non-negative");
    if (cfg.steps < 256 || cfg.steps < 4 * static_cast<std::size_t>(cfg.k)) {
        throw ConfigError("--steps: the sweep needs at least 256 steps and 4k");
    }
    try {
        ModelParams{cfg.alpha, 0.0, 0.0, cfg.tau, cfg.k}.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("--alpha/--tau/--k: ") + e.what());
    }
    const SweepResult res = run_sweep(cfg);
    const Json summary = io::sweep_summary(res);
    if (as_json) {
        Json doc = io::document();
        doc["summary"] = summary;
        doc["points"] = Json::array();
        for (const auto& p : res.points) doc["points"].push_back(io::to_json(p));
        write_json(o.output, doc);
    } else {
        Sink sink(o.output);
        io::CsvWriter csv(sink.stream(), {"a", "b", "geometric", "margin", "winding", "classification",
                                          "empirical", "trials_diverged", "excluded", "agree"});
        for (const auto& p : res.points) {
            csv.row(p.a, p.b, to_string(p.geometric.status), p.geometric.margin, p.roots.winding,
                    p.solvable ? to_string(p.classification) : std::string("Unsolvable"),
                    to_string(p.empirical), p.trials_diverged, p.excluded, p.agree);
        }
        sink.finish();
        if (o.output != "-") write_json(o.output + ".summary.json", [&] {
                Json d = io::document();
                d["summary"] = summary;
                return d;
            }());
    }
    std::cerr << "sweep: " << summary.dump() << '\n';
    return res.mismatches == 0 ? kOk : kMismatch;
}

int cmd_critical(const Options& o) {
    const bool as_json = json_format(o);
    const CriticalAlphas c = critical_alphas();
    if (as_json) {
        Json doc = io::document();
        doc["alpha_star_low"] = c.alpha_star_low;
        doc["residual_low"] = c.residual_low;
        doc["alpha_star_high"] = c.alpha_star_high;
        doc["residual_high"] = c.residual_high;
        write_json(o.output, doc);
        return kOk;
    }
    Sink sink(o.output);
    io::CsvWriter csv(sink.stream(), {"name", "alpha", "residual"});
    csv.row("alpha_star_low", c.alpha_star_low, c.residual_low);
    csv.row("alpha_star_high", c.alpha_star_high, c.residual_high);
    sink.finish();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grunwald-Letnikov scheme for fractional delay equations", "fracdde"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--alpha", o.alpha, "fractional order in (0,1)");
    app.add_option("--a", o.a, "coefficient of y(t)");
    app.add_option("--b", o.b, "coefficient of y(t - tau)");
    app.add_option("--tau", o.tau, "delay");
    app.add_option("--k", o.k, "steps per delay (region accepts a comma list)");
    app.add_option("--steps", o.steps, "number of time steps N");
    app.add_option("--phi", o.phi, "initial function: const:c | lin:p,q | sin:A,w | file:path");
    app.add_option("--output", o.output, "output path, '-' for stdout");
    app.add_option("--format", o.format, "csv or json");
    app.add_option("--seed", o.seed, "seed for randomized sweep histories");

    auto* solve = app.add_subcommand("solve", "integrate the scheme and write (n, t, y)");
    auto* region = app.add_subcommand("region", "export stability region boundary curves");
    region->add_option("--curves", o.curves, "gamma, gamma0, gammam:<m>, line (comma list)");
    region->add_option("--samples", o.samples, "points per curve");
    auto* classify = app.add_subcommand("classify", "classify (a, b) or a grid of points");
    classify->add_option("--grid-a", o.grid_a, "lo:hi:count");
    classify->add_option("--grid-b", o.grid_b, "lo:hi:count");
    auto* decay = app.add_subcommand("decay", "decay index and Mittag-Leffler constant");
    decay->add_option("--times", o.times, "comma list of times for the decay index");
    decay->add_flag("--table1", o.table1, "a = -3, b = 1, h = 0.1, phi = 0.4 over five orders");
    decay->add_option("--preset", o.preset, "table1 | boundary | ml");
    auto* sweep = app.add_subcommand("sweep", "three-way consistency sweep over an (a, b) grid");
    sweep->add_option("--grid-a", o.grid_a, "lo:hi:count");
    sweep->add_option("--grid-b", o.grid_b, "lo:hi:count");
    sweep->add_option("--trials", o.trials, "random histories per point");
    sweep->add_option("--band", o.band, "boundary band excluded from the mismatch count");
    sweep->add_option("--threads", o.threads, "worker threads, 0 = all cores");
    auto* critical = app.add_subcommand("critical", "critical orders alpha_* and alpha^*");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*solve) return cmd_solve(o);
        if (*region) return cmd_region(o);
        if (*classify) return cmd_classify(o);
        if (*decay) return cmd_decay(o);
        if (*sweep) return cmd_sweep(o);
        if (*critical) return cmd_critical(o);
    } catch (const SolvabilityError& e) {
        std::cerr << "fracdde: " << e.what() << '\n';
        return kSolvability;
    } catch (const ConfigError& e) {
        std::cerr << "fracdde: " << e.what() << '\n';
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "fracdde: " << e.what() << '\n';
        return kConfig;
    } catch (const LengthError& e) {
        std::cerr << "fracdde: " << e.what() << '\n';
        return kConfig;
    } catch (const UndefinedError& e) {
        std::cerr << "fracdde: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "fracdde: internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kConfig;
}
