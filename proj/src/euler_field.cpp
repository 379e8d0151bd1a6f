#include "coldplasma/euler_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coldplasma/profile.hpp"
#include "coldplasma/twave.hpp"

namespace coldplasma::euler {

Grid Grid::symmetric(std::size_t n, double half_width) {
    if (n < 3) throw std::invalid_argument("grid needs at least three nodes");
    if (!(half_width > 0.0)) throw std::invalid_argument("grid half-width must be positive");
    Grid g;
    g.n = n;
    g.h = 2.0 * half_width / static_cast<double>(n - 1);
    g.x0 = -half_width;
    g.periodic = false;
    return g;
}

Grid Grid::periodic_domain(std::size_t n, double length, double x0) {
    if (n < 3) throw std::invalid_argument("grid needs at least three nodes");
    if (!(length > 0.0)) throw std::invalid_argument("periodic length must be positive");
    Grid g;
    g.n = n;
    g.h = length / static_cast<double>(n);
    g.x0 = x0;
    g.periodic = true;
    return g;
}

std::vector<double> FieldState::density() const {
    if (has_gradients) {
        std::vector<double> N(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) N[i] = 1.0 - e[i];
        return N;
    }
    return density_from_E(E, grid);
}

double gaussian_E_max(double a_star, double rho_star) {
    return profile::GaussianProfile(a_star, rho_star).E_max();
}

FieldState init_from_profile(const profile::InitialProfile& prof, const Grid& grid) {
    FieldState s;
    s.grid = grid;
    s.P.resize(grid.n);
    s.E.resize(grid.n);
    s.p.resize(grid.n);
    s.e.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const auto q = prof.at(grid.x(i));
        s.P[i] = q.P;
        s.E[i] = q.E;
        s.p[i] = q.dP;
        s.e[i] = q.dE;
    }
    s.has_gradients = true;
    return s;
}

FieldState init_gaussian(double a_star, double rho_star, const Grid& grid) {
    const profile::GaussianProfile prof(a_star, rho_star);
    const double E_max = prof.E_max();
    const double tail = std::max(std::abs(prof.at(grid.lower()).E), std::abs(prof.at(grid.upper()).E));
    if (!grid.periodic && tail > 1e-12 * E_max)
        throw std::invalid_argument("grid too narrow: Gaussian tail exceeds 1e-12 E_max at the boundary");
    return init_from_profile(prof, grid);
}

FieldState init_from_wave(const twave::RelativisticWave& wave, const Grid& grid) {
    FieldState s;
    s.grid = grid;
    s.P.resize(grid.n);
    s.E.resize(grid.n);
    s.p.resize(grid.n);
    s.e.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const auto [P, E] = wave.state(grid.x(i));
        const auto [dP, dE] = wave.slope(grid.x(i));
        s.P[i] = P;
        s.E[i] = E;
        s.p[i] = dP;
        s.e[i] = dE;
    }
    s.has_gradients = true;
    return s;
}

std::vector<double> density_from_E(std::span<const double> E, const Grid& grid) {
    const std::size_t n = E.size();
    if (n < 3) throw std::invalid_argument("density needs at least three grid points");
    std::vector<double> N(n);
    const double h = grid.h;
    if (grid.periodic) {
        const double c = 1.0 / (12.0 * h);
        for (std::size_t i = 0; i < n; ++i) {
            const auto at = [&](long k) { return E[static_cast<std::size_t>((k + 2 * static_cast<long>(n)) % static_cast<long>(n))]; };
            const long j = static_cast<long>(i);
            N[i] = 1.0 - c * (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2));
        }
        return N;
    }
    const auto d = profile::derivative_uniform(std::vector<double>(E.begin(), E.end()), h);
    for (std::size_t i = 0; i < n; ++i) N[i] = 1.0 - d[i];
    return N;
}

namespace {

struct Jet {
    double P, E, p, e;
};

inline double velocity(double P, bool relativistic) {
    return relativistic ? P / std::sqrt(1.0 + P * P) : P;
}

// Extended characteristic system in (P, E, p, e, rho, J) with J = d rho / d rho_foot.
inline void extended_rhs(const double* y, double* dy, bool relativistic) {
    double V, K;
    if (relativistic) {
        const double g = std::sqrt(1.0 + y[0] * y[0]);
        V = y[0] / g;
        K = 1.0 / (g * g * g);
    } else {
        V = y[0];
        K = 1.0;
    }
    dy[0] = -y[1];
    dy[1] = V;
    dy[2] = -y[3] - K * y[2] * y[2];
    dy[3] = (1.0 - y[3]) * y[2] * K;
    dy[4] = V;
    dy[5] = K * y[2] * y[5];
}

inline void rk4(double* y, double dt, int substeps, bool relativistic) {
    const double d = dt / substeps;
    double k1[6], k2[6], k3[6], k4[6], tmp[6];
    for (int s = 0; s < substeps; ++s) {
        extended_rhs(y, k1, relativistic);
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * d * k1[i];
        extended_rhs(tmp, k2, relativistic);
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * d * k2[i];
        extended_rhs(tmp, k3, relativistic);
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + d * k3[i];
        extended_rhs(tmp, k4, relativistic);
        for (int i = 0; i < 6; ++i) y[i] += d / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

// Cubic Hermite interpolation of (P, E) with slopes (p, e); derivatives of the cubic give
// the foot values of p and e.
inline Jet hermite_at(const FieldState& s, double xf) {
    const Grid& g = s.grid;
    const std::size_t n = g.n;
    std::size_t i0, i1;
    double t;
    if (g.periodic) {
        double u = (xf - g.x0) / g.h;
        const double nn = static_cast<double>(n);
        u -= nn * std::floor(u / nn);
        if (u >= nn) u = 0.0;
        i0 = static_cast<std::size_t>(u);
        if (i0 >= n) i0 = n - 1;
        i1 = (i0 + 1) % n;
        t = u - static_cast<double>(i0);
    } else {
        const double u = std::clamp((xf - g.lower()) / g.h, 0.0, static_cast<double>(n - 1));
        i0 = std::min(static_cast<std::size_t>(u), n - 2);
        i1 = i0 + 1;
        t = u - static_cast<double>(i0);
    }
    const double h = g.h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2,
                 h11 = t3 - t2;
    const double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1, d01 = (-6 * t2 + 6 * t) / h,
                 d11 = 3 * t2 - 2 * t;
    Jet j;
    j.P = h00 * s.P[i0] + h10 * h * s.p[i0] + h01 * s.P[i1] + h11 * h * s.p[i1];
    j.E = h00 * s.E[i0] + h10 * h * s.e[i0] + h01 * s.E[i1] + h11 * h * s.e[i1];
    j.p = d00 * s.P[i0] + d10 * s.p[i0] + d01 * s.P[i1] + d11 * s.p[i1];
    j.e = d00 * s.E[i0] + d10 * s.e[i0] + d01 * s.E[i1] + d11 * s.e[i1];
    return j;
}

struct NodeResult {
    double P, E, p, e, J;
    int iterations;
};

inline NodeResult jet_node(const FieldState& in, std::size_t j, double dt, int substeps,
                           bool relativistic) {
    const double xj = in.grid.x(j);
    const double tol = 1e-12 * std::max(1.0, std::abs(xj));
    double xf = xj - dt * velocity(in.P[j], relativistic);
    double y[6];
    int it = 0;
    constexpr int max_iter = 12;
    for (;; ++it) {
        const Jet a = hermite_at(in, xf);
        y[0] = a.P;
        y[1] = a.E;
        y[2] = a.p;
        y[3] = a.e;
        y[4] = xf;
        y[5] = 1.0;
        rk4(y, dt, substeps, relativistic);
        const double res = y[4] - xj;
        if (std::abs(res) <= tol || it >= max_iter) break;
        xf -= res / std::max(y[5], 1e-3);
        if (!in.grid.periodic) xf = std::clamp(xf, in.grid.lower(), in.grid.upper());
    }
    return {y[0], y[1], y[2], y[3], y[5], it};
}

void resize_like(const FieldState& in, FieldState& out) {
    out.grid = in.grid;
    out.P.resize(in.grid.n);
    out.E.resize(in.grid.n);
    out.p.resize(in.grid.n);
    out.e.resize(in.grid.n);
}

void jet_step(const FieldState& in, FieldState& out, double dt, const StepOptions& opts,
              StepReport* report) {
    if (!in.has_gradients) throw std::invalid_argument("jet scheme needs carried gradients");
    resize_like(in, out);
    const bool rel = opts.model == Model::rel;
    const long n = static_cast<long>(in.grid.n);
    double min_j = std::numeric_limits<double>::infinity();
    int max_it = 0;
    const int sub = std::max(1, opts.rk_substeps);
    if (opts.parallel) {
#pragma omp parallel for schedule(static) reduction(min : min_j) reduction(max : max_it)
        for (long j = 0; j < n; ++j) {
            const NodeResult r = jet_node(in, static_cast<std::size_t>(j), dt, sub, rel);
            out.P[j] = r.P;
            out.E[j] = r.E;
            out.p[j] = r.p;
            out.e[j] = r.e;
            min_j = std::min(min_j, r.J);
            max_it = std::max(max_it, r.iterations);
        }
    } else {
        for (long j = 0; j < n; ++j) {
            const NodeResult r = jet_node(in, static_cast<std::size_t>(j), dt, sub, rel);
            out.P[j] = r.P;
            out.E[j] = r.E;
            out.p[j] = r.p;
            out.e[j] = r.e;
            min_j = std::min(min_j, r.J);
            max_it = std::max(max_it, r.iterations);
        }
    }
    if (opts.boundary == Boundary::equilibrium) {
        for (std::size_t b : {std::size_t{0}, in.grid.n - 1}) out.P[b] = out.E[b] = out.p[b] = out.e[b] = 0.0;
    }
    out.has_gradients = true;
    if (report) {
        report->min_jacobian = min_j;
        report->max_newton_iterations = max_it;
    }
}

// Two-step Lax-Wendroff: half-step values at cell midpoints, then a centred full step.
void pc_step(const FieldState& in, FieldState& out, double dt, const StepOptions& opts) {
    resize_like(in, out);
    const bool rel = opts.model == Model::rel;
    const bool periodic = in.grid.periodic;
    const std::size_t n = in.grid.n;
    const std::size_t m = periodic ? n : n - 1;
    const double h = in.grid.h;
    std::vector<double> Ph(m), Eh(m);
    const double* P = in.P.data();
    const double* E = in.E.data();

    auto half = [&](long k) {
        const std::size_t a = static_cast<std::size_t>(k), b = (a + 1) % n;
        const double Pm = 0.5 * (P[a] + P[b]), Em = 0.5 * (E[a] + E[b]);
        const double v = velocity(Pm, rel);
        Ph[a] = Pm - 0.5 * dt * (v * (P[b] - P[a]) / h + Em);
        Eh[a] = Em - 0.5 * dt * (v * (E[b] - E[a]) / h - v);
    };
    auto full = [&](long jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        const std::size_t l = (j + m - 1) % m, r = j % m;
        const double vc = velocity(0.5 * (Ph[l] + Ph[r]), rel);
        const double Ec = 0.5 * (Eh[l] + Eh[r]);
        out.P[j] = P[j] - dt * (vc * (Ph[r] - Ph[l]) / h + Ec);
        out.E[j] = E[j] - dt * (vc * (Eh[r] - Eh[l]) / h - vc);
    };
    const long lo = periodic ? 0 : 1;
    const long hi = periodic ? static_cast<long>(n) : static_cast<long>(n) - 1;
    if (opts.parallel) {
#pragma omp parallel
        {
#pragma omp for schedule(static)
            for (long k = 0; k < static_cast<long>(m); ++k) half(k);
#pragma omp for schedule(static)
            for (long j = lo; j < hi; ++j) full(j);
        }
    } else {
        for (long k = 0; k < static_cast<long>(m); ++k) half(k);
        for (long j = lo; j < hi; ++j) full(j);
    }
    if (!periodic) {
        out.P[0] = out.E[0] = out.P[n - 1] = out.E[n - 1] = 0.0;
    }
    std::fill(out.p.begin(), out.p.end(), 0.0);
    std::fill(out.e.begin(), out.e.end(), 0.0);
    out.has_gradients = false;
}

bool finite_all(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void step_into(const FieldState& in, FieldState& out, double dt, const StepOptions& opts,
               StepReport* report) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if ((opts.boundary == Boundary::periodic) != in.grid.periodic)
        throw std::invalid_argument("boundary option does not match the grid layout");
    if (opts.scheme == Scheme::jet) {
        jet_step(in, out, dt, opts, report);
    } else {
        pc_step(in, out, dt, opts);
        if (report) *report = StepReport{};
    }
    out.theta = in.theta + dt;
    if (!finite_all(out.P) || !finite_all(out.E) ||
        (out.has_gradients && (!finite_all(out.p) || !finite_all(out.e))))
        throw NonFiniteField("non-finite field values after step");
}

FieldState step(const FieldState& in, double dt, const StepOptions& opts, StepReport* report) {
    FieldState out;
    step_into(in, out, dt, opts, report);
    return out;
}

double stable_dt(const FieldState& s, Model model, double cfl) {
    double vmax = 0.0;
    for (double P : s.P) vmax = std::max(vmax, std::abs(velocity(P, model == Model::rel)));
    return cfl * s.grid.h / std::max(1.0, vmax);
}

DiagnosticRecord measure(const FieldState& s, const std::vector<double>& N) {
    const Grid& g = s.grid;
    const std::size_t n = N.size();
    std::size_t j = 0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(N[i])) finite = false;
        if (N[i] > N[j]) j = i;
    }
    DiagnosticRecord r{s.theta, N[j], 0.0, g.x(j)};
    if (!finite) r.N_max = std::numeric_limits<double>::infinity();
    const bool interior = g.periodic || (j > 0 && j + 1 < n);
    if (finite && interior) {
        const double a = N[(j + n - 1) % n], b = N[j], c = N[(j + 1) % n];
        const double curv = a - 2.0 * b + c;
        if (curv < 0.0) {
            const double delta = 0.5 * (a - c) / curv;
            r.N_max = b - 0.25 * (a - c) * delta;
            r.rho_of_max = g.x(j) + delta * g.h;
        }
    }
    // N at rho = 0 by linear interpolation between the neighbouring nodes.
    if (g.lower() <= 0.0 && 0.0 <= g.upper()) {
        const double u = (0.0 - g.lower()) / g.h;
        const std::size_t i = std::min(static_cast<std::size_t>(u), n - 2);
        const double t = u - static_cast<double>(i);
        r.N_origin = (1.0 - t) * N[i] + t * N[i + 1];
    } else {
        r.N_origin = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

RunDiagnostics run(const RunConfig& cfg, const SnapshotSink& on_snapshot) {
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.5)) throw std::invalid_argument("CFL number must lie in (0, 0.5]");
    if (cfg.grid_points < 16) throw std::invalid_argument("grid needs at least 16 points");
    if (!(cfg.theta_max > 0.0)) throw std::invalid_argument("theta_max must be positive");
    if (!(cfg.record_interval > 0.0)) throw std::invalid_argument("record interval must be positive");
    if (!(cfg.N_threshold > 1.0)) throw std::invalid_argument("N threshold must exceed 1");

    FieldState state;
    if (cfg.initial) {
        state = *cfg.initial;
    } else {
        const double L = cfg.half_width > 0.0 ? cfg.half_width : 4.5 * cfg.rho_star;
        state = init_gaussian(cfg.a_star, cfg.rho_star, Grid::symmetric(cfg.grid_points, L));
    }
    if (cfg.scheme == Scheme::predictor_corrector) state.has_gradients = false;

    const StepOptions opts{cfg.model, cfg.scheme, cfg.boundary, cfg.rk_substeps, cfg.parallel};
    RunDiagnostics diag;
    std::vector<double> N = state.density();
    diag.series.push_back(measure(state, N));
    if (on_snapshot && cfg.snapshot_interval > 0.0) on_snapshot(state, N);

    const double eps = 1e-9 * cfg.record_interval;
    double next_record = cfg.record_interval;
    double next_snapshot = cfg.snapshot_interval;
    FieldState next;
    StepReport report;
    while (state.theta < cfg.theta_max - 1e-12) {
        double dt = cfg.model == Model::rel ? cfg.cfl * state.grid.h : stable_dt(state, cfg.model, cfg.cfl);
        dt = std::min(dt, cfg.theta_max - state.theta);
        try {
            step_into(state, next, dt, opts, &report);
        } catch (const NonFiniteField&) {
            const DiagnosticRecord last = diag.series.back();
            diag.breaking = BreakingEvent{state.theta + dt, last.rho_of_max, "non_finite"};
            diag.series.push_back(
                {state.theta + dt, std::numeric_limits<double>::infinity(), last.N_origin, last.rho_of_max});
            break;
        }
        std::swap(state, next);
        ++diag.steps;
        N = state.density();
        const DiagnosticRecord rec = measure(state, N);
        std::string reason;
        if (!std::isfinite(rec.N_max)) reason = "non_finite";
        else if (rec.N_max > cfg.N_threshold) reason = "density_threshold";
        else if (cfg.scheme == Scheme::jet && !(report.min_jacobian > 0.0)) reason = "characteristic_crossing";
        if (!reason.empty()) {
            diag.series.push_back(rec);
            diag.breaking = BreakingEvent{rec.theta, rec.rho_of_max, reason};
            break;
        }
        if (state.theta >= next_record - eps) {
            diag.series.push_back(rec);
            next_record += cfg.record_interval;
        }
        if (on_snapshot && cfg.snapshot_interval > 0.0 && state.theta >= next_snapshot - eps) {
            on_snapshot(state, N);
            next_snapshot += cfg.snapshot_interval;
        }
    }
    if (!diag.breaking && diag.series.back().theta < state.theta) diag.series.push_back(measure(state, N));
    diag.final_state = std::move(state);
    return diag;
}

std::vector<OffAxisEvent> off_axis_maxima(const RunDiagnostics& diag, double window,
                                          double min_offset, double ratio) {
    std::vector<OffAxisEvent> out;
    const auto& s = diag.series;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        while (s[lo].theta < s[i].theta - window) ++lo;
        while (hi + 1 < s.size() && s[hi + 1].theta <= s[i].theta + window) ++hi;
        // Only complete windows qualify.
        if (s[i].theta - window < s.front().theta || s[i].theta + window > s.back().theta) continue;
        bool is_max = true;
        for (std::size_t k = lo; k <= hi && is_max; ++k) {
            if (s[k].N_max > s[i].N_max) is_max = false;
            if (k < i && s[k].N_max == s[i].N_max) is_max = false;
        }
        if (!is_max) continue;
        if (std::abs(s[i].rho_of_max) <= min_offset) continue;
        if (!(s[i].N_max > ratio * s[i].N_origin)) continue;
        out.push_back({s[i].theta, s[i].N_max, s[i].rho_of_max, s[i].N_origin});
    }
    return out;
}

std::string_view to_string(Model m) { return m == Model::rel ? "rel" : "nonrel"; }
std::string_view to_string(Scheme s) { return s == Scheme::jet ? "jet" : "predictor_corrector"; }

Model parse_model(std::string_view s) {
    if (s == "rel") return Model::rel;
    if (s == "nonrel") return Model::nonrel;
    throw std::invalid_argument("unknown model: " + std::string(s));
}

Scheme parse_scheme(std::string_view s) {
    if (s == "jet") return Scheme::jet;
    if (s == "predictor_corrector" || s == "pc") return Scheme::predictor_corrector;
    throw std::invalid_argument("unknown scheme: " + std::string(s));
}

Boundary parse_boundary(std::string_view s) {
    if (s == "equilibrium") return Boundary::equilibrium;
    if (s == "periodic") return Boundary::periodic;
    throw std::invalid_argument("unknown boundary: " + std::string(s));
}

}  // namespace coldplasma::euler
