#include "coldplasma/hill.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coldplasma/rel.hpp"

namespace coldplasma::hill {

PeriodicCoefficient PeriodicCoefficient::constant(double value, double period) {
    if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
    PeriodicCoefficient k;
    k.period_ = period;
    k.k_min_ = k.k_max_ = k.value_ = value;
    k.constant_ = true;
    return k;
}

PeriodicCoefficient PeriodicCoefficient::from_function(std::function<double(double)> fn,
                                                       double period, double k_min, double k_max) {
    if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
    PeriodicCoefficient k;
    k.fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
    k.period_ = period;
    k.k_min_ = k_min;
    k.k_max_ = k_max;
    return k;
}

double PeriodicCoefficient::operator()(double theta) const {
    if (constant_) return value_;
    double t = std::fmod(theta, period_);
    if (t < 0.0) t += period_;
    return (*fn_)(t);
}

PeriodicCoefficient build_K(double P0, double E0, double rel_tol) {
    const double C1 = rel::first_integral_C1(P0, E0);
    if (P0 == 0.0 && E0 == 0.0) return PeriodicCoefficient::constant(1.0, 2.0 * std::numbers::pi);
    const double T = rel::period_T(C1);
    numerics::IntegratorOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-2 * rel_tol;
    opts.max_step = T / 256.0;
    auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = -y[1];
        dy[1] = y[0] / rel::lorentz_gamma(y[0]);
    };
    auto traj = std::make_shared<const numerics::Trajectory>(
        numerics::integrate_adaptive(rhs, {P0, E0}, 0.0, T, opts));
    auto k = [traj, T](double t) {
        const double P = traj->component_at(std::min(t, T), 0);
        const double g2 = 1.0 + P * P;
        return 1.0 / (g2 * std::sqrt(g2));
    };
    return PeriodicCoefficient::from_function(k, T, 8.0 / (C1 * C1 * C1), 1.0);
}

MathieuCoefficients mathieu_coefficients(double epsilon) {
    const double e2 = epsilon * epsilon;
    return {1.0 - 0.75 * e2, -0.375 * e2};
}

PeriodicCoefficient mathieu_K(double epsilon) {
    const auto [a, b] = mathieu_coefficients(epsilon);
    auto k = [a, b](double t) { return a - 2.0 * b * std::cos(2.0 * t); };
    return PeriodicCoefficient::from_function(k, std::numbers::pi, a - 2.0 * std::abs(b),
                                              a + 2.0 * std::abs(b));
}

double mathieu_asymptotic(double epsilon) {
    const double pi = std::numbers::pi;
    return -1.0 - (27.0 / 2048.0) * pi * pi * std::pow(epsilon, 6);
}

FloquetData floquet_discriminant(const PeriodicCoefficient& K, double rel_tol) {
    const double T = K.period();
    auto rhs = [&K](double t, std::span<const double> y, std::span<double> dy) {
        const double k = K(t);
        dy[0] = y[1];
        dy[1] = -k * y[0];
        dy[2] = y[3];
        dy[3] = -k * y[2];
    };
    numerics::IntegratorOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-2 * rel_tol;
    opts.dense_output = false;
    const auto traj = numerics::integrate_adaptive(rhs, {1.0, 0.0, 0.0, 1.0}, 0.0, T, opts);
    for (const auto& s : traj.states)
        for (double v : s)
            if (!std::isfinite(v)) throw std::domain_error("non-finite Hill coefficient samples");
    double drift = 0.0;
    for (const auto& s : traj.states)
        drift = std::max(drift, std::abs(s[0] * s[3] - s[2] * s[1] - 1.0));
    const auto& end = traj.states.back();
    FloquetData out{};
    out.period = T;
    out.monodromy = {end[0], end[1], end[2], end[3]};
    out.discriminant = 0.5 * (end[0] + end[3]);
    out.wronskian = end[0] * end[3] - end[2] * end[1];
    out.max_wronskian_drift = drift;
    const double ad = std::abs(out.discriminant);
    out.mu = ad > 1.0 ? std::acosh(ad) / T : 0.0;
    return out;
}

HillProblem HillProblem::from_u_lambda(PeriodicCoefficient K, double u0, double lambda0,
                                       double horizon) {
    HillProblem p{std::move(K), u0, lambda0, horizon};
    p.y0 = 1.0;
    p.yp0 = -u0;
    p.target = lambda0;
    return p;
}

HillProblem HillProblem::from_derivatives(PeriodicCoefficient K, double p0, double e0,
                                          double horizon) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    HillProblem p{std::move(K), p0 != 0.0 ? e0 / p0 : nan, p0 != 0.0 ? (1.0 - e0) / p0 : nan,
                  horizon};
    p.y0 = p0;
    p.yp0 = -e0;
    p.target = 1.0 - e0;
    return p;
}

HillResult solve_theorem4(const HillProblem& problem, const HillOptions& opts) {
    if (!(problem.horizon > 0.0)) throw std::invalid_argument("Hill horizon must be positive");
    const PeriodicCoefficient& K = problem.K;
    auto rhs = [&K](double t, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -K(t) * y[0];
    };
    const double target = problem.target;
    const numerics::EventSpec crossing{
        "crossing", [target](double, std::span<const double> y) { return y[1] - target; }, 0,
        true};
    numerics::IntegratorOptions iopts;
    iopts.rel_tol = opts.rel_tol;
    iopts.abs_tol = 1e-2 * opts.rel_tol;
    iopts.dense_output = opts.keep_trajectory;
    iopts.max_step = 0.125 * K.period();

    HillResult out;
    out.trajectory = numerics::integrate_adaptive(rhs, {problem.y0, problem.yp0}, 0.0,
                                                  problem.horizon, iopts, std::span(&crossing, 1));
    out.floquet = floquet_discriminant(K, std::min(opts.rel_tol, 1e-11));

    double max_deriv = 0.0;
    for (const auto& s : out.trajectory.states) max_deriv = std::max(max_deriv, std::abs(s[1]));

    Verdict& v = out.verdict;
    v.criterion = "theorem4";
    v.with("discriminant", out.floquet.discriminant)
        .with("mu", out.floquet.mu)
        .with("horizon", problem.horizon)
        .with("max_abs_derivative", max_deriv)
        .with("target", target);
    if (!out.trajectory.events.empty()) {
        v.kind = VerdictKind::breaks;
        v.theta_star = out.trajectory.events.front().theta;
        return out;
    }
    if (K.is_constant()) {
        // y' oscillates harmonically with a fixed amplitude that never reaches the target.
        const double k = K.min();
        const double amplitude = std::sqrt(problem.yp0 * problem.yp0 + k * problem.y0 * problem.y0);
        v.with("amplitude", amplitude);
        v.kind = problem.horizon >= 2.0 * std::numbers::pi / std::sqrt(k)
                     ? VerdictKind::smooth
                     : VerdictKind::no_crossing_within_horizon;
        return out;
    }
    const double excess = std::abs(out.floquet.discriminant) - 1.0;
    if (excess > opts.discriminant_tol)
        v.kind = VerdictKind::crossing_guaranteed;
    else if (excess >= -opts.discriminant_tol)
        v.kind = VerdictKind::indeterminate;
    else
        v.kind = VerdictKind::no_crossing_within_horizon;
    return out;
}

Verdict classify_theorem4(const HillProblem& problem, const HillOptions& opts) {
    return solve_theorem4(problem, opts).verdict;
}

}  // namespace coldplasma::hill
