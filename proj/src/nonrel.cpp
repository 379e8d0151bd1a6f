#include "coldplasma/nonrel.hpp"

#include <numbers>
#include <stdexcept>

namespace coldplasma::nonrel {

using numerics::EndpointPoint;
using numerics::SingularEnds;

std::array<double, 5> rhs_extended_nr(const CharStateNR& s) {
    return {s.V, -s.E, s.V, -s.v * s.v - s.e, (1.0 - s.e) * s.v};
}

numerics::Rhs rhs_function_nr() {
    return [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -y[2];
        dy[2] = y[1];
        dy[3] = -y[3] * y[3] - y[4];
        dy[4] = (1.0 - y[4]) * y[3];
    };
}

double discriminant(double v0, double e0) { return v0 * v0 + 2.0 * e0 - 1.0; }

double phase_constant(double v, double e) {
    const double x = e - 1.0;
    return discriminant(v, e) / (x * x);
}

Verdict criterion_theorem1(double v0, double e0) {
    const double delta = discriminant(v0, e0);
    Verdict out;
    out.criterion = "theorem1";
    out.kind = delta < 0.0 ? VerdictKind::smooth : VerdictKind::breaks;
    out.with("delta", delta);
    if (out.kind == VerdictKind::breaks) out.theta_star = blowup_time_nr(e0, v0);
    return out;
}

double blowup_time_nr(double e_start, double v_start, double abs_tol) {
    const double delta = discriminant(v_start, e_start);
    if (!(delta >= 0.0)) throw std::domain_error("blowup_time_nr: data lies in the smooth regime");
    if (e_start == 1.0) return std::atan(v_start) + 0.5 * std::numbers::pi;

    // With t = (e_start - 1)/(e - 1) the first integral gives (dt/dtheta)^2 = F(t),
    // F(t) = delta - 2 x0 t - t^2 = (t_r - t)(t - t_l), and blow-up is t -> 0.
    const double x0 = e_start - 1.0;
    const double root = std::sqrt(x0 * x0 + delta);
    const double t_r = x0 >= 0.0 ? delta / (x0 + root) : root - x0;
    const double t_l = -x0 - root;
    // F(1) = v^2 = (t_r - 1)(1 - t_l) yields t_r - 1 without cancellation.
    const double t_r_minus_1 = v_start * v_start / (1.0 - t_l);

    // Piece t in [0, t_r].
    auto outer = [&](const EndpointPoint& p) {
        return 1.0 / std::sqrt(p.to_b * (p.from_a - t_l));
    };
    if (v_start <= 0.0) {
        // Monotone descent from t = 1 to t = 0.
        auto descent = [&](const EndpointPoint& p) {
            return 1.0 / std::sqrt((t_r_minus_1 + p.to_b) * (p.from_a - t_l));
        };
        return numerics::quad_singular(descent, 0.0, 1.0, SingularEnds{true, true}, abs_tol);
    }
    // Rise from t = 1 to t_r, then descent from t_r to 0.
    auto rise = [&](const EndpointPoint& p) {
        return 1.0 / std::sqrt(p.to_b * ((1.0 - t_l) + p.from_a));
    };
    double total = numerics::quad_singular(outer, 0.0, t_r, SingularEnds{true, true}, abs_tol);
    if (t_r > 1.0)
        total += numerics::quad_singular(rise, 1.0, t_r, SingularEnds{false, true}, abs_tol);
    return total;
}

TurningPoints turning_points_nr(double e0, double v0) {
    const double delta = discriminant(v0, e0);
    if (!(delta < 0.0)) throw std::domain_error("turning points exist only for smooth orbits");
    const double C = phase_constant(v0, e0);
    const double r = std::sqrt(std::max(0.0, 1.0 + C));
    // Roots of C x^2 - 2x - 1 in x = e - 1.
    const double x_hi = -1.0 / (1.0 + r);
    const double x_lo = (1.0 + r) / C;
    return {C, 1.0 + x_lo, 1.0 + x_hi};
}

double closed_orbit_period_nr(double e0, double v0) {
    if (!(discriminant(v0, e0) < 0.0))
        throw std::domain_error("closed_orbit_period_nr: orbit is not closed");
    return 2.0 * std::numbers::pi;
}

double closed_orbit_period_quadrature_nr(double e0, double v0, double abs_tol) {
    const TurningPoints tp = turning_points_nr(e0, v0);
    const double x_lo = tp.e_minus - 1.0, x_hi = tp.e_plus - 1.0;
    const double absC = -tp.C;
    if (x_hi - x_lo <= 1e-14 * std::abs(x_lo)) {
        // Degenerate centre: small-oscillation limit of the integral below.
        return 2.0 * std::numbers::pi / (std::sqrt(absC) * std::abs(x_lo));
    }
    // dtheta = de / (|e - 1| sqrt(R)), R = |C| (x - x_lo)(x_hi - x).
    auto f = [&](const EndpointPoint& p) {
        return 1.0 / (std::abs(p.x) * std::sqrt(absC * p.from_a * p.to_b));
    };
    return 2.0 * numerics::quad_singular(f, x_lo, x_hi, SingularEnds{true, true}, abs_tol);
}

numerics::Trajectory integrate_characteristic_nr(const CharStateNR& start, double theta_end,
                                                 const numerics::IntegratorOptions& opts,
                                                 std::span<const numerics::EventSpec> events) {
    return numerics::integrate_adaptive(rhs_function_nr(), start.to_vector(), 0.0, theta_end, opts,
                                        events);
}

LinearSolutionCoeffs::LinearSolutionCoeffs(double alpha, double beta)
    : alpha_(alpha), beta_(beta), s_(0.0), theta0_(0.0) {
    if (alpha == 1.0) throw std::domain_error("linear solution undefined for alpha = 1");
    const double r = std::hypot(alpha, beta);
    s_ = r / (1.0 - alpha);
    theta0_ = r > 0.0 ? std::atan2(alpha, beta) : 0.0;
}

double LinearSolutionCoeffs::W(double theta) const {
    const double phi = theta + theta0_;
    return s_ * std::cos(phi) / (1.0 + s_ * std::sin(phi));
}

double LinearSolutionCoeffs::D(double theta) const {
    const double phi = theta + theta0_;
    return s_ * std::sin(phi) / (1.0 + s_ * std::sin(phi));
}

std::array<double, 2> linear_solution(double alpha, double beta, double theta) {
    const LinearSolutionCoeffs c(alpha, beta);
    return {c.W(theta), c.D(theta)};
}

}  // namespace coldplasma::nonrel
