#include "coldplasma/twave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coldplasma::twave {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double gamma_of(double P) { return std::sqrt(1.0 + P * P); }

void require_supercritical(double I2, double w) {
    const double wc = critical_speed(I2);
    if (!(w * w > wc * wc))
        throw std::domain_error("wave speed at or below the critical speed: no smooth wave");
}

// dxi/dphi along P = P_+ sin(phi), E = P_+ cos(phi) sqrt(2 / (gamma_+ + gamma)).
double dxi_dphi(double phi, double w, double P_plus, double g_plus) {
    const double P = P_plus * std::sin(phi);
    const double g = gamma_of(P);
    return (w - P / g) * std::sqrt(0.5 * (g_plus + g));
}

}  // namespace

double critical_speed(double I2) {
    if (!(I2 >= 0.0)) throw std::domain_error("wave invariant must be non-negative");
    const double d = I2 + 2.0;
    return std::sqrt(1.0 - 4.0 / (d * d));
}

double nonrel_speed_threshold(double I0) { return std::abs(I0); }

double wave_invariant(double P, double E) {
    // gamma - 1 written as P^2 / (gamma + 1) to keep small amplitudes accurate.
    return 2.0 * P * P / (gamma_of(P) + 1.0) + E * E;
}

double turning_momentum(double I2) {
    const double h = 0.5 * I2;
    return std::sqrt(h * (h + 2.0));
}

double wave_period_X(double I2, double w, double abs_tol) {
    require_supercritical(I2, w);
    if (I2 == 0.0) return two_pi * std::abs(w);
    const double P_plus = turning_momentum(I2);
    const double g_plus = 1.0 + 0.5 * I2;
    const double sw = w > 0.0 ? 1.0 : -1.0;
    auto f = [&](const numerics::EndpointPoint& q) {
        const double g = gamma_of(q.x);
        const double radicand = 2.0 * q.from_a * q.to_b / (g_plus + g);
        return (-w + q.x / g) / std::sqrt(radicand);
    };
    const double integral =
        numerics::quad_singular(f, -P_plus, P_plus, numerics::SingularEnds{true, true}, abs_tol);
    return std::abs(2.0 * sw * integral);
}

RelativisticWave::RelativisticWave(double I2, double w, double phase_offset, double rel_tol)
    : I2_(I2), w_(w), offset_(phase_offset), X_(0.0), P_plus_(0.0) {
    if (!(I2 > 0.0)) throw std::domain_error("relativistic wave needs I2 > 0");
    require_supercritical(I2, w);
    X_ = wave_period_X(I2, w);
    P_plus_ = turning_momentum(I2);
    auto rhs = [w](double, std::span<const double> y, std::span<double> dy) {
        const double V = y[0] / gamma_of(y[0]);
        const double denom = w - V;
        dy[0] = y[1] / denom;
        dy[1] = -V / denom;
    };
    numerics::IntegratorOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-2 * rel_tol;
    opts.max_step = X_ / 64.0;
    period_ = std::make_shared<const numerics::Trajectory>(
        numerics::integrate_adaptive(rhs, {0.0, std::sqrt(I2)}, 0.0, X_, opts));
}

std::array<double, 2> RelativisticWave::state(double xi) const {
    double s = std::fmod(xi + offset_, X_);
    if (s < 0.0) s += X_;
    const auto y = period_->at(s);
    return {y[0], y[1]};
}

std::array<double, 2> RelativisticWave::slope(double xi) const {
    const auto [P, E] = state(xi);
    const double V = P / gamma_of(P);
    const double denom = w_ - V;
    return {E / denom, -V / denom};
}

WaveProfile RelativisticWave::sample(int n_periods, int samples_per_period) const {
    if (n_periods < 1 || samples_per_period < 2)
        throw std::invalid_argument("need at least one period and two samples per period");
    WaveProfile out;
    out.w = w_;
    out.I2 = I2_;
    out.X = X_;
    out.P_plus = P_plus_;
    out.P_minus = -P_plus_;
    const std::size_t n = static_cast<std::size_t>(n_periods) * samples_per_period + 1;
    out.xi.resize(n);
    out.P.resize(n);
    out.E.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = X_ * static_cast<double>(k) / samples_per_period;
        const auto [P, E] = state(xi);
        out.xi[k] = xi;
        out.P[k] = P;
        out.E[k] = E;
    }
    return out;
}

WaveProfile wave_profile_rel(double I2, double w, int n_periods, int samples_per_period,
                             double phase_offset) {
    return RelativisticWave(I2, w, phase_offset).sample(n_periods, samples_per_period);
}

WaveProfile wave_profile_nonrel(double I0, double w, double V_at_0, int n_periods,
                                int samples_per_period) {
    if (!(I0 > 0.0)) throw std::domain_error("nonrelativistic wave needs I0 > 0");
    if (!(w * w > I0 * I0)) throw std::domain_error("wave speed must satisfy w^2 > I0^2");
    if (std::abs(V_at_0) > I0) throw std::domain_error("|V(0)| exceeds the wave amplitude I0");
    if (n_periods < 1 || samples_per_period < 2)
        throw std::invalid_argument("need at least one period and two samples per period");

    // V = I0 sin(phi), E = I0 cos(phi) with xi + c = w phi + I0 cos(phi), phi unwrapped
    // continuously across arcsin sheets.
    const double phi0 = std::asin(V_at_0 / I0);
    const double c = w * phi0 + I0 * std::cos(phi0);
    WaveProfile out;
    out.w = w;
    out.I2 = I0 * I0;
    out.X = two_pi * std::abs(w);
    out.P_plus = I0;
    out.P_minus = -I0;
    const std::size_t n = static_cast<std::size_t>(n_periods) * samples_per_period + 1;
    out.xi.resize(n);
    out.P.resize(n);
    out.E.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = out.X * static_cast<double>(k) / samples_per_period;
        const double rhs = xi + c;
        auto g = [&](double phi) { return w * phi + I0 * std::cos(phi) - rhs; };
        double lo = (rhs - I0) / w, hi = (rhs + I0) / w;
        if (lo > hi) std::swap(lo, hi);
        const double phi = numerics::find_root(g, lo, hi, 1e-15);
        out.xi[k] = xi;
        out.P[k] = I0 * std::sin(phi);
        out.E[k] = I0 * std::cos(phi);
    }
    return out;
}

std::array<double, 2> max_profile_slopes(double I2, double w) {
    require_supercritical(I2, w);
    const double P_plus = turning_momentum(I2);
    const double g_plus = 1.0 + 0.5 * I2;
    double max_P = 0.0, max_E = 0.0;
    auto visit = [&](double phi) {
        const double P = P_plus * std::sin(phi);
        const double g = gamma_of(P);
        const double E = P_plus * std::cos(phi) * std::sqrt(2.0 / (g_plus + g));
        const double V = P / g;
        const double denom = w - V;
        max_P = std::max(max_P, std::abs(E / denom));
        max_E = std::max(max_E, std::abs(V / denom));
    };
    constexpr int n = 400000;
    for (int k = 0; k < n; ++k) visit(two_pi * k / n);
    visit(0.5 * std::numbers::pi);
    visit(1.5 * std::numbers::pi);
    return {max_P, max_E};
}

BranchData wave_branches(double I2, double w, int samples) {
    if (!(I2 > 0.0)) throw std::domain_error("wave branches need I2 > 0");
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    const double P_plus = turning_momentum(I2);
    const double g_plus = 1.0 + 0.5 * I2;
    BranchData out;
    out.phi.resize(samples + 1);
    out.xi.resize(samples + 1);
    out.P.resize(samples + 1);
    out.E.resize(samples + 1);
    double xi = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double phi = two_pi * k / samples;
        if (k > 0) {
            const double prev = two_pi * (k - 1) / samples;
            xi += numerics::quad_adaptive(
                [&](double s) { return dxi_dphi(s, w, P_plus, g_plus); }, prev, phi, 1e-13);
        }
        const double P = P_plus * std::sin(phi);
        const double g = gamma_of(P);
        out.phi[k] = phi;
        out.xi[k] = xi;
        out.P[k] = P;
        out.E[k] = P_plus * std::cos(phi) * std::sqrt(2.0 / (g_plus + g));
        if (dxi_dphi(phi, w, P_plus, g_plus) * (w > 0.0 ? 1.0 : -1.0) < 0.0) out.multivalued = true;
    }
    return out;
}

}  // namespace coldplasma::twave
