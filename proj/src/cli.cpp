#include "coldplasma/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "coldplasma/classify.hpp"
#include "coldplasma/euler_field.hpp"
#include "coldplasma/hill.hpp"
#include "coldplasma/nonrel.hpp"
#include "coldplasma/numerics.hpp"
#include "coldplasma/profile.hpp"
#include "coldplasma/rel.hpp"
#include "coldplasma/twave.hpp"

namespace coldplasma::cli {

using nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& key, const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("'" + key + "' expects a number, got '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& s) {
    const double v = parse_double(key, s);
    if (!(v >= 0.0) || v != std::floor(v)) throw std::invalid_argument("'" + key + "' expects a non-negative integer");
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument("'" + key + "' expects true or false");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

template <class T>
Setter num(T RunConfig::*field) {
    return [field](RunConfig& c, const std::string& k, const std::string& v) {
        if constexpr (std::is_same_v<T, double>) c.*field = parse_double(k, v);
        else if constexpr (std::is_same_v<T, std::optional<double>>) c.*field = parse_double(k, v);
        else c.*field = static_cast<T>(parse_count(k, v));
    };
}

Setter text(std::string RunConfig::*field) {
    return [field](RunConfig& c, const std::string&, const std::string& v) { c.*field = v; };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"command", text(&RunConfig::command)},
        {"model", text(&RunConfig::model)},
        {"profile", text(&RunConfig::profile)},
        {"a_star", [](RunConfig& c, const std::string& k, const std::string& v) {
             parse_double(k, v);
             c.profile_params["a_star"] = v;
         }},
        {"rho_star", [](RunConfig& c, const std::string& k, const std::string& v) {
             parse_double(k, v);
             c.profile_params["rho_star"] = v;
         }},
        {"rho0", num(&RunConfig::rho0)},
        {"P0", num(&RunConfig::P0)},
        {"E0", num(&RunConfig::E0)},
        {"p0", num(&RunConfig::p0)},
        {"e0", num(&RunConfig::e0)},
        {"I2", num(&RunConfig::I2)},
        {"w", num(&RunConfig::w)},
        {"rho_min", num(&RunConfig::rho_min)},
        {"rho_max", num(&RunConfig::rho_max)},
        {"samples", num(&RunConfig::samples)},
        {"theta_max", num(&RunConfig::theta_max)},
        {"horizon_periods", num(&RunConfig::horizon_periods)},
        {"rel_tol", num(&RunConfig::rel_tol)},
        {"abs_tol", num(&RunConfig::abs_tol)},
        {"output_interval", num(&RunConfig::output_interval)},
        {"periods", num(&RunConfig::periods)},
        {"samples_per_period", num(&RunConfig::samples_per_period)},
        {"scheme", text(&RunConfig::scheme)},
        {"boundary", text(&RunConfig::boundary)},
        {"grid", num(&RunConfig::grid)},
        {"half_width", num(&RunConfig::half_width)},
        {"cfl", num(&RunConfig::cfl)},
        {"record_interval", num(&RunConfig::record_interval)},
        {"N_threshold", num(&RunConfig::N_threshold)},
        {"snapshot_interval", num(&RunConfig::snapshot_interval)},
        {"parallel", [](RunConfig& c, const std::string& k, const std::string& v) { c.parallel = parse_bool(k, v); }},
        {"out", text(&RunConfig::out)},
        {"summary", text(&RunConfig::summary)},
        {"snapshots", text(&RunConfig::snapshots)},
    };
    return table;
}

std::string json_scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return format_number(v.get<double>());
    throw std::invalid_argument("config values must be strings, numbers or booleans");
}

}  // namespace

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument("unknown configuration key '" + key + "'");
    it->second(cfg, key, value);
}

void apply_json_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error("config file " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "profile_params") {
            if (!value.is_object()) throw std::invalid_argument("profile_params must be an object");
            for (const auto& [pk, pv] : value.items()) cfg.profile_params[pk] = json_scalar_text(pv);
        } else {
            set_field(cfg, key, json_scalar_text(value));
        }
    }
}

void validate(const RunConfig& cfg) {
    static const std::set<std::string> commands = {"classify", "char", "hill", "wave", "simulate"};
    if (!commands.count(cfg.command)) throw std::invalid_argument("exactly one command is required");
    euler::parse_model(cfg.model);
    euler::parse_scheme(cfg.scheme);
    euler::parse_boundary(cfg.boundary);
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(cfg.output_interval > 0.0) || !(cfg.record_interval > 0.0))
        throw std::invalid_argument("output intervals must be positive");
    if (!(cfg.horizon_periods > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (cfg.theta_max < 0.0) throw std::invalid_argument("theta_max must be positive");
    if (cfg.grid < 16) throw std::invalid_argument("grid needs at least 16 points");
    if (cfg.samples < 2) throw std::invalid_argument("samples must be at least 2");
    if (cfg.periods < 1 || cfg.samples_per_period < 4) throw std::invalid_argument("wave sampling too coarse");
    if (cfg.snapshot_interval < 0.0) throw std::invalid_argument("snapshot interval must be non-negative");
    if (cfg.rho_max < cfg.rho_min) throw std::invalid_argument("rho_max must not be below rho_min");
    if (cfg.profile != "gaussian" &&
        (cfg.profile_params.count("a_star") || cfg.profile_params.count("rho_star")))
        throw std::invalid_argument("--a-star/--rho-star conflict with profile '" + cfg.profile + "'");
    const bool explicit_point = cfg.P0 || cfg.E0 || cfg.p0 || cfg.e0;
    if (cfg.rho0 && explicit_point) throw std::invalid_argument("--rho0 conflicts with explicit point data");
    if (cfg.command == "wave" && cfg.I2 && (cfg.P0 || cfg.E0))
        throw std::invalid_argument("--I2 conflicts with --P0/--E0");
    if (cfg.command == "wave" && !cfg.w) throw std::invalid_argument("wave needs --w");
}

namespace {

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::runtime_error("cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void csv_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_number(v);
        first = false;
    }
    os << '\n';
}

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["criterion"] = v.criterion;
    j["verdict"] = std::string(to_string(v.kind));
    j["theta_star"] = optional_number(v.theta_star);
    ordered_json ev = ordered_json::object();
    for (const auto& [k, x] : v.evidence) ev[k] = std::isfinite(x) ? ordered_json(x) : ordered_json(format_number(x));
    j["evidence"] = ev;
    return j;
}

ordered_json profile_json(const profile::InitialProfile& prof) {
    ordered_json j;
    j["family"] = prof.name();
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : prof.parameters()) params[k] = v;
    j["parameters"] = params;
    return j;
}

void write_summary(const RunConfig& cfg, const ordered_json& body) {
    if (cfg.summary.empty()) return;
    std::ofstream out(cfg.summary);
    if (!out) throw std::runtime_error("cannot write " + cfg.summary);
    out << body.dump(2) << '\n';
}

std::unique_ptr<profile::InitialProfile> build_profile(const RunConfig& cfg) {
    return profile::make_profile(cfg.profile, cfg.profile_params);
}

struct PointData {
    profile::Sample s;
    std::optional<double> rho0;
};

PointData resolve_point(const RunConfig& cfg) {
    if (cfg.P0 || cfg.E0 || cfg.p0 || cfg.e0)
        return {{cfg.P0.value_or(0.0), cfg.E0.value_or(0.0), cfg.p0.value_or(0.0), cfg.e0.value_or(0.0)}, {}};
    const double rho = cfg.rho0.value_or(0.0);
    return {build_profile(cfg)->at(rho), rho};
}

ordered_json point_json(const PointData& pt) {
    ordered_json j;
    j["rho0"] = optional_number(pt.rho0);
    j["P0"] = pt.s.P;
    j["E0"] = pt.s.E;
    j["p0"] = pt.s.dP;
    j["e0"] = pt.s.dE;
    return j;
}

ordered_json header(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["model"] = cfg.model;
    return j;
}

int run_classify(const RunConfig& cfg, std::ostream& log) {
    const auto prof = build_profile(cfg);
    const euler::Model model = euler::parse_model(cfg.model);
    classify::SweepOptions opts;
    opts.rho_min = cfg.rho_min;
    opts.rho_max = cfg.rho_max;
    opts.samples = cfg.samples;
    opts.horizon_periods = cfg.horizon_periods;
    opts.parallel = cfg.parallel;
    const auto result = classify::classify_profile(*prof, model, opts);

    Output out(cfg.out);
    std::ostream& os = out.stream();
    os << "rho,verdict,delta,c2,theta_star\n";
    for (const auto& s : result.samples) {
        const auto& v = s.verdict;
        std::optional<double> delta = v.evidence_value("delta");
        if (!delta && s.secondary) delta = s.secondary->evidence_value("delta");
        const auto c2 = v.evidence_value("C2");
        os << format_number(s.rho) << ',' << to_string(v.kind) << ','
           << (delta ? format_number(*delta) : "") << ',' << (c2 ? format_number(*c2) : "") << ','
           << (v.theta_star ? format_number(*v.theta_star) : "") << '\n';
    }

    ordered_json j = header(cfg);
    j["profile"] = profile_json(*prof);
    j["criterion"] = result.route;
    j["global_verdict"] = std::string(to_string(result.global));
    j["aggregation"] = "sampled";
    j["samples"] = result.samples.size();
    j["rho_range"] = {result.samples.front().rho, result.samples.back().rho};
    j["C1_spread"] = result.C1_spread;
    j["earliest_theta_star"] = optional_number(result.earliest_theta_star);
    j["earliest_rho"] = optional_number(result.earliest_rho);
    ordered_json per = ordered_json::array();
    for (const auto& s : result.samples) {
        ordered_json e = verdict_json(s.verdict);
        e["rho"] = s.rho;
        e["inputs"] = {{"P0", s.data.P}, {"E0", s.data.E}, {"p0", s.data.dP}, {"e0", s.data.dE}};
        if (s.secondary) e["secondary"] = verdict_json(*s.secondary);
        per.push_back(std::move(e));
    }
    j["verdicts"] = std::move(per);
    write_summary(cfg, j);
    log << "classify: " << to_string(result.global) << " (sampled, " << result.samples.size()
        << " points, " << result.route << ")\n";
    return result.global == VerdictKind::breaks ? 2 : 0;
}

int run_char(const RunConfig& cfg, std::ostream& log) {
    const PointData pt = resolve_point(cfg);
    const bool rel = euler::parse_model(cfg.model) == euler::Model::rel;
    const double rho_start = pt.rho0.value_or(0.0);
    const double theta_end = cfg.theta_max > 0.0 ? cfg.theta_max : 4.0 * M_PI;
    numerics::IntegratorOptions opts;
    opts.rel_tol = cfg.rel_tol;
    opts.abs_tol = cfg.abs_tol;
    const numerics::Trajectory tr =
        rel ? rel::integrate_characteristic_rel({rho_start, pt.s.P, pt.s.E, pt.s.dP, pt.s.dE}, theta_end, opts)
            : nonrel::integrate_characteristic_nr({rho_start, pt.s.P, pt.s.E, pt.s.dP, pt.s.dE}, theta_end, opts);
    const bool blowup = tr.reason == numerics::StopReason::blowup_guard;

    Output out(cfg.out);
    std::ostream& os = out.stream();
    os << "theta,rho," << (rel ? "P" : "V") << ",E," << (rel ? "p" : "v") << ",e\n";
    auto emit = [&](double t, const numerics::State& y) {
        os << format_number(t);
        for (double x : y) os << ',' << format_number(x);
        os << '\n';
    };
    const double t_end = tr.t_end();
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * cfg.output_interval;
        if (t >= t_end) break;
        emit(t, tr.at(t));
    }
    emit(t_end, tr.states.back());

    ordered_json j = header(cfg);
    j["inputs"] = point_json(pt);
    j["theta_end"] = t_end;
    j["blowup"] = blowup;
    if (rel) {
        j["C1"] = rel::first_integral_C1(pt.s.P, pt.s.E);
        j["verdict"] = verdict_json(rel::criterion_theorem3(pt.s.P, pt.s.E, pt.s.dP, pt.s.dE));
    } else {
        j["verdict"] = verdict_json(nonrel::criterion_theorem1(pt.s.dP, pt.s.dE));
    }
    write_summary(cfg, j);
    log << "char: " << (blowup ? "blow-up" : "bounded") << " at theta = " << format_number(t_end) << '\n';
    return blowup ? 2 : 0;
}

int run_hill(const RunConfig& cfg, std::ostream& log) {
    const PointData pt = resolve_point(cfg);
    const bool rel = euler::parse_model(cfg.model) == euler::Model::rel;
    const hill::PeriodicCoefficient K =
        rel ? hill::build_K(pt.s.P, pt.s.E) : hill::PeriodicCoefficient::constant(1.0, 2.0 * M_PI);
    const double horizon = cfg.theta_max > 0.0 ? cfg.theta_max : cfg.horizon_periods * K.period();
    const auto problem = hill::HillProblem::from_derivatives(K, pt.s.dP, pt.s.dE, horizon);
    hill::HillOptions opts;
    opts.keep_trajectory = true;
    const hill::HillResult res = hill::solve_theorem4(problem, opts);

    Output out(cfg.out);
    std::ostream& os = out.stream();
    os << "theta,z,z_prime\n";
    const auto& tr = res.trajectory;
    if (!tr.times.empty()) {
        for (std::size_t k = 0;; ++k) {
            const double t = static_cast<double>(k) * cfg.output_interval;
            if (t >= tr.t_end()) break;
            const auto y = tr.at(t);
            csv_row(os, {t, y[0], y[1]});
        }
        csv_row(os, {tr.t_end(), tr.states.back()[0], tr.states.back()[1]});
    }

    ordered_json j = header(cfg);
    j["inputs"] = point_json(pt);
    j["horizon"] = horizon;
    j["verdict"] = verdict_json(res.verdict);
    j["floquet"] = {{"period", res.floquet.period},
                    {"discriminant", res.floquet.discriminant},
                    {"mu", res.floquet.mu},
                    {"wronskian", res.floquet.wronskian},
                    {"max_wronskian_drift", res.floquet.max_wronskian_drift}};
    write_summary(cfg, j);
    log << "hill: " << to_string(res.verdict.kind) << '\n';
    return predicts_breaking(res.verdict.kind) ? 2 : 0;
}

// Phase offset placing (P0, E0) at xi = 0 on the anchored relativistic wave.
double wave_offset(const twave::RelativisticWave& wave, double P0, double E0) {
    if (P0 == 0.0 && E0 >= 0.0) return 0.0;
    const int n = 4096;
    const double X = wave.X();
    double best = 0.0, best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double xi = X * i / n;
        const auto s = wave.state(xi);
        const double d = std::hypot(s[0] - P0, s[1] - E0);
        if (d < best_d) best_d = d, best = xi;
    }
    const double lo = best - X / n, hi = best + X / n;
    auto g = [&](double xi) { return wave.state(xi)[0] - P0; };
    if (g(lo) * g(hi) < 0.0) return numerics::find_root(g, lo, hi, 1e-14);
    return best;
}

int run_wave(const RunConfig& cfg, std::ostream& log) {
    const bool rel = euler::parse_model(cfg.model) == euler::Model::rel;
    const double w = *cfg.w;
    const double P0 = cfg.P0.value_or(0.0);
    const double E0 = cfg.E0.value_or(cfg.I2 ? 0.0 : 1.0);
    twave::WaveProfile wp;
    ordered_json j = header(cfg);
    if (rel) {
        const double I2 = cfg.I2 ? *cfg.I2 : twave::wave_invariant(P0, E0);
        const twave::RelativisticWave anchored(I2, w);
        const double offset = cfg.I2 ? 0.0 : wave_offset(anchored, P0, E0);
        const twave::RelativisticWave wave(I2, w, offset);
        wp = wave.sample(cfg.periods, cfg.samples_per_period);
        j["w_crit"] = twave::critical_speed(I2);
        j["phase_offset"] = offset;
    } else {
        const double I0 = cfg.I2 ? std::sqrt(*cfg.I2) : std::hypot(P0, E0);
        if (E0 < 0.0) throw std::invalid_argument("nonrelativistic wave is anchored with E0 >= 0");
        wp = twave::wave_profile_nonrel(I0, w, cfg.I2 ? 0.0 : P0, cfg.periods, cfg.samples_per_period);
    }

    Output out(cfg.out);
    std::ostream& os = out.stream();
    os << "xi," << (rel ? "P" : "V") << ",E\n";
    for (std::size_t i = 0; i < wp.xi.size(); ++i) csv_row(os, {wp.xi[i], wp.P[i], wp.E[i]});

    j["w"] = wp.w;
    j["I2"] = wp.I2;
    j["X"] = wp.X;
    j["P_plus"] = wp.P_plus;
    j["P_minus"] = wp.P_minus;
    j["samples"] = wp.xi.size();
    write_summary(cfg, j);
    log << "wave: X = " << format_number(wp.X) << '\n';
    return 0;
}

int run_simulate(const RunConfig& cfg, std::ostream& log) {
    euler::RunConfig rc;
    rc.model = euler::parse_model(cfg.model);
    rc.scheme = euler::parse_scheme(cfg.scheme);
    rc.boundary = euler::parse_boundary(cfg.boundary);
    rc.grid_points = cfg.grid;
    rc.half_width = cfg.half_width;
    rc.theta_max = cfg.theta_max > 0.0 ? cfg.theta_max : 60.0;
    rc.record_interval = cfg.record_interval;
    rc.cfl = cfg.cfl;
    rc.N_threshold = cfg.N_threshold;
    rc.parallel = cfg.parallel;
    rc.snapshot_interval = cfg.snapshots.empty() ? 0.0 : cfg.snapshot_interval;

    const auto prof = build_profile(cfg);
    if (cfg.profile == "gaussian" && rc.boundary == euler::Boundary::equilibrium) {
        const auto params = prof->parameters();
        rc.a_star = params.at("a_star");
        rc.rho_star = params.at("rho_star");
    } else {
        double lo = cfg.rho_min, hi = cfg.rho_max;
        if (lo == hi) std::tie(lo, hi) = prof->default_range();
        const euler::Grid grid =
            rc.boundary == euler::Boundary::periodic
                ? euler::Grid::periodic_domain(cfg.grid, hi - lo, lo)
                : euler::Grid::symmetric(cfg.grid, cfg.half_width > 0.0 ? cfg.half_width
                                                                        : std::max(std::abs(lo), std::abs(hi)));
        rc.initial = euler::init_from_profile(*prof, grid);
    }

    std::unique_ptr<Output> snap;
    if (rc.snapshot_interval > 0.0) {
        snap = std::make_unique<Output>(cfg.snapshots);
        snap->stream() << "theta,rho,P,E,N\n";
    }
    euler::SnapshotSink sink;
    if (snap) {
        sink = [&](const euler::FieldState& s, const std::vector<double>& N) {
            std::ostream& os = snap->stream();
            for (std::size_t i = 0; i < s.grid.n; ++i) csv_row(os, {s.theta, s.grid.x(i), s.P[i], s.E[i], N[i]});
        };
    }
    const euler::RunDiagnostics diag = euler::run(rc, sink);

    Output out(cfg.out);
    std::ostream& os = out.stream();
    os << "theta,N_max,N_origin,rho_of_max\n";
    for (const auto& r : diag.series) csv_row(os, {r.theta, r.N_max, r.N_origin, r.rho_of_max});

    ordered_json j = header(cfg);
    j["profile"] = profile_json(*prof);
    j["scheme"] = std::string(euler::to_string(rc.scheme));
    j["boundary"] = cfg.boundary;
    j["grid"] = cfg.grid;
    j["steps"] = diag.steps;
    j["theta_end"] = diag.final_state.theta;
    if (diag.breaking) {
        j["breaking"] = {{"theta", diag.breaking->theta},
                         {"rho", diag.breaking->rho},
                         {"reason", diag.breaking->reason}};
    } else {
        j["breaking"] = nullptr;
    }
    ordered_json events = ordered_json::array();
    for (const auto& e : euler::off_axis_maxima(diag))
        events.push_back({{"theta", e.theta}, {"N_max", e.N_max}, {"rho", e.rho}, {"N_origin", e.N_origin}});
    j["off_axis_maxima"] = std::move(events);
    write_summary(cfg, j);
    if (diag.breaking)
        log << "simulate: breaking (" << diag.breaking->reason << ") at theta = "
            << format_number(diag.breaking->theta) << '\n';
    else
        log << "simulate: completed to theta = " << format_number(diag.final_state.theta) << '\n';
    return diag.breaking ? 2 : 0;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    if (cfg.command == "classify") return run_classify(cfg, log);
    if (cfg.command == "char") return run_char(cfg, log);
    if (cfg.command == "hill") return run_hill(cfg, log);
    if (cfg.command == "wave") return run_wave(cfg, log);
    return run_simulate(cfg, log);
}

namespace {

struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
};

// Flags shared by every subcommand, mapped onto config keys.
constexpr FlagSpec kFlags[] = {
    {"--model", "model", "rel or nonrel"},
    {"--rho0", "rho0", "sample the profile at this rho0"},
    {"--P0", "P0", "initial P (or V)"},
    {"--E0", "E0", "initial E"},
    {"--p0", "p0", "initial dP/drho"},
    {"--e0", "e0", "initial dE/drho"},
    {"--I2", "I2", "wave invariant"},
    {"--w", "w", "wave speed"},
    {"--a-star", "a_star", "gaussian amplitude"},
    {"--rho-star", "rho_star", "gaussian width"},
    {"--rho-min", "rho_min", "lower end of the rho range"},
    {"--rho-max", "rho_max", "upper end of the rho range"},
    {"--samples", "samples", "number of rho samples"},
    {"--theta-max", "theta_max", "end time"},
    {"--horizon-periods", "horizon_periods", "Hill horizon in periods of K"},
    {"--rel-tol", "rel_tol", "integrator relative tolerance"},
    {"--abs-tol", "abs_tol", "integrator absolute tolerance"},
    {"--output-interval", "output_interval", "CSV sampling interval in theta"},
    {"--periods", "periods", "wave periods to sample"},
    {"--samples-per-period", "samples_per_period", "wave samples per period"},
    {"--scheme", "scheme", "jet or predictor_corrector"},
    {"--boundary", "boundary", "equilibrium or periodic"},
    {"--grid", "grid", "grid points"},
    {"--half-width", "half_width", "half width of the domain"},
    {"--cfl", "cfl", "time step over grid spacing"},
    {"--record-interval", "record_interval", "diagnostics interval"},
    {"--N-threshold", "N_threshold", "density that counts as breaking"},
    {"--snapshot-interval", "snapshot_interval", "snapshot interval"},
    {"--out", "out", "primary CSV output ('-' for stdout)"},
    {"--summary", "summary", "JSON summary output"},
    {"--snapshots", "snapshots", "snapshot CSV output"},
};

}  // namespace

int run_main(int argc, char** argv) {
    CLI::App app{"Breaking analysis for one-dimensional cold plasma oscillations"};
    app.require_subcommand(1);
    std::string config_path;
    bool serial = false;
    app.add_option("--config", config_path, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    app.add_flag("--serial", serial, "disable OpenMP fan-out");

    std::map<std::string, std::string> given;
    std::vector<std::string> profile_tokens;
    for (const char* name : {"classify", "char", "hill", "wave", "simulate"}) {
        CLI::App* sub = app.add_subcommand(name);
        for (const auto& f : kFlags) sub->add_option(f.flag, given[f.key], f.help);
        sub->add_option("--profile", profile_tokens, "family followed by key=value parameters")
            ->expected(1, -1);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_json_file(cfg, config_path);
        cfg.command = app.get_subcommands().front()->get_name();
        const CLI::App* sub = app.get_subcommands().front();
        if (!profile_tokens.empty()) {
            // Parameters from the config file belong to its own family.
            if (profile_tokens.front() != cfg.profile) cfg.profile_params.clear();
            cfg.profile = profile_tokens.front();
            for (std::size_t i = 1; i < profile_tokens.size(); ++i) {
                const auto& tok = profile_tokens[i];
                const auto eq = tok.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw std::invalid_argument("profile parameter '" + tok + "' is not key=value");
                cfg.profile_params[tok.substr(0, eq)] = tok.substr(eq + 1);
            }
        }
        for (const auto& f : kFlags)
            if (sub->get_option(f.flag)->count() > 0) set_field(cfg, f.key, given[f.key]);
        if (serial) cfg.parallel = false;
        return dispatch(cfg, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace coldplasma::cli
