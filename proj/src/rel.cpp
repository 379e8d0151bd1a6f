#include "coldplasma/rel.hpp"

#include <numbers>
#include <stdexcept>

namespace coldplasma::rel {

using numerics::EndpointPoint;
using numerics::SingularEnds;

std::array<double, 5> rhs_extended_rel(const CharStateR& s) {
    const double g = s.gamma();
    const double g3 = g * g * g;
    return {s.P / g, -s.E, s.P / g, -s.e - s.p * s.p / g3, (1.0 - s.e) * s.p / g3};
}

numerics::Rhs rhs_function_rel() {
    return [](double, std::span<const double> y, std::span<double> dy) {
        const double g = lorentz_gamma(y[1]);
        const double g3 = g * g * g;
        dy[0] = y[1] / g;
        dy[1] = -y[2];
        dy[2] = y[1] / g;
        dy[3] = -y[4] - y[3] * y[3] / g3;
        dy[4] = (1.0 - y[4]) * y[3] / g3;
    };
}

double first_integral_C1(double P, double E) { return 2.0 * lorentz_gamma(P) + E * E; }

double momentum_amplitude(double C1) {
    if (!(C1 >= 2.0)) throw std::domain_error("first integral C1 must be at least 2");
    const double half = 0.5 * C1;
    return std::sqrt((half - 1.0) * (half + 1.0));
}

double period_T(double C1, double abs_tol) {
    const double P_plus = momentum_amplitude(C1);
    if (P_plus == 0.0) return 2.0 * std::numbers::pi;
    const double g_plus = 0.5 * C1;
    // C1 - 2 gamma = 2 (P+ - P)(P + P+) / (gamma+ + gamma).
    auto f = [&](const EndpointPoint& q) {
        const double radicand = 2.0 * q.from_a * q.to_b / (g_plus + lorentz_gamma(q.x));
        return 1.0 / std::sqrt(radicand);
    };
    return 2.0 * numerics::quad_singular(f, -P_plus, P_plus, SingularEnds{true, true}, abs_tol);
}

SpecialCaseData special_case_data(double P0, double E0, double P0p) {
    const double C1 = first_integral_C1(P0, E0);
    const double M_star = 2.0 * momentum_amplitude(C1) / C1;
    const double C2 = E0 / P0p + P0 / lorentz_gamma(P0);
    return {C1, C2, M_star};
}

Verdict criterion_theorem2(double P0, double E0, double P0p) {
    Verdict out;
    out.criterion = "theorem2";
    const double C1 = first_integral_C1(P0, E0);
    const double M_star = 2.0 * momentum_amplitude(C1) / C1;
    out.with("C1", C1).with("M_star", M_star);
    if (P0p == 0.0) {
        out.kind = VerdictKind::indeterminate;
        return out;
    }
    const double C2 = E0 / P0p + P0 / lorentz_gamma(P0);
    out.with("C2", C2);
    if (std::abs(C2) > M_star) {
        out.kind = VerdictKind::smooth;
        return out;
    }
    out.kind = VerdictKind::breaks;
    // p is infinite where the orbit reaches P / gamma = C2.
    const double T = period_T(C1);
    const numerics::EventSpec hit{
        "denominator", [C2](double, std::span<const double> y) {
            return C2 * lorentz_gamma(y[1]) - y[1];
        },
        0, true};
    numerics::IntegratorOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-14;
    const auto traj = integrate_characteristic_rel({0.0, P0, E0, 0.0, 0.0}, 1.05 * T, opts,
                                                   std::span(&hit, 1));
    if (!traj.events.empty()) out.theta_star = traj.events.front().theta;
    return out;
}

double p_closed_form(double P, double C1, double C2, int branch_sign) {
    const double g = lorentz_gamma(P);
    double radicand = C1 - 2.0 * g;
    if (radicand < 0.0) {
        if (radicand < -1e-12 * C1) throw std::domain_error("momentum outside the orbit range");
        radicand = 0.0;
    }
    const double denom = C2 * g - P;
    if (denom == 0.0) throw std::domain_error("zero denominator: breaking locus");
    const double E = (branch_sign >= 0 ? 1.0 : -1.0) * std::sqrt(radicand);
    return E * g / denom;
}

double constant_C1_e0(double P0, double E0, double p0) {
    if (E0 == 0.0) throw std::domain_error("E0 = 0 does not determine e0");
    return -P0 * p0 / (lorentz_gamma(P0) * E0);
}

Verdict criterion_theorem3(double P0, double E0, double p0, double e0) {
    Verdict out;
    out.criterion = "theorem3";
    const double C1 = first_integral_C1(P0, E0);
    const double K_minus = 8.0 / (C1 * C1 * C1);
    const double delta_K = K_minus * p0 * p0 + 2.0 * e0 - 1.0;
    const double delta = p0 * p0 + 2.0 * e0 - 1.0;
    out.with("C1", C1).with("K_minus", K_minus).with("delta_K", delta_K).with("delta", delta);
    if (delta_K >= 0.0)
        out.kind = VerdictKind::breaks_within_period;
    else if (delta < 0.0 && p0 < 0.0)
        out.kind = VerdictKind::smooth_through_period;
    else
        out.kind = VerdictKind::indeterminate;
    return out;
}

BracketBounds BracketBounds::from_derivatives(double p0, double e0, double C1) {
    if (p0 == 0.0) throw std::domain_error("bracketing variables need p0 != 0");
    return {e0 / p0, (1.0 - e0) / p0, 8.0 / (C1 * C1 * C1)};
}

double BracketBounds::psi_minus_limit() const {
    const double k = std::sqrt(K_minus);
    return (0.5 * std::numbers::pi - std::atan(u0 / k)) / k;
}

double BracketBounds::psi_plus_limit() const { return 0.5 * std::numbers::pi - std::atan(u0); }

std::pair<double, double> psi_bounds(double theta, double u0, double lambda0, double K_minus) {
    if (!(K_minus > 0.0 && K_minus <= 1.0)) throw std::domain_error("K_minus must lie in (0, 1]");
    const double k = std::sqrt(K_minus);
    const double arg_minus = k * theta + std::atan(u0 / k);
    const double arg_plus = theta + std::atan(u0);
    const double half_pi = 0.5 * std::numbers::pi;
    if (arg_minus >= half_pi || arg_plus >= half_pi || arg_minus <= -half_pi || arg_plus <= -half_pi)
        throw std::domain_error("psi bound evaluated past its tangent singularity");
    const double tm = std::tan(arg_minus);
    const double tp = std::tan(arg_plus);
    const double psi_minus =
        k * tm + lambda0 * std::sqrt(1.0 + tm * tm) / std::sqrt(u0 * u0 / K_minus + 1.0);
    const double psi_plus = tp + lambda0 * std::sqrt(1.0 + tp * tp) / std::sqrt(u0 * u0 + 1.0);
    return {psi_minus, psi_plus};
}

numerics::Trajectory integrate_characteristic_rel(const CharStateR& start, double theta_end,
                                                  const numerics::IntegratorOptions& opts,
                                                  std::span<const numerics::EventSpec> events) {
    return numerics::integrate_adaptive(rhs_function_rel(), start.to_vector(), 0.0, theta_end,
                                        opts, events);
}

}  // namespace coldplasma::rel
