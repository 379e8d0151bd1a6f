#pragma once

// Reference computations for the tests. Nothing here calls into the library, so the
// numbers they produce are independent checks on it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Seeded generator with a few draw helpers. Fixed seeds keep every test reproducible.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
    bool coin() { return integer(0, 1) == 1; }

private:
    std::mt19937_64 eng_;
};

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
using Field = std::function<Vec<N>(const Vec<N>&)>;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double a, const Vec<N>& k) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + a * k[i];
    return r;
}

template <std::size_t N>
Vec<N> rk4_step(const Field<N>& f, const Vec<N>& y, double h) {
    const Vec<N> k1 = f(y);
    const Vec<N> k2 = f(axpy(y, 0.5 * h, k1));
    const Vec<N> k3 = f(axpy(y, 0.5 * h, k2));
    const Vec<N> k4 = f(axpy(y, h, k3));
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
}

template <std::size_t N>
double max_abs(const Vec<N>& y) {
    double m = 0.0;
    for (double v : y) m = std::max(m, std::abs(v));
    return m;
}

template <std::size_t N>
struct Run {
    bool blew_up = false;
    double theta = 0.0;  // end time, or the time the guard tripped
    Vec<N> state{};
    std::vector<double> times;
    std::vector<Vec<N>> states;
};

// Classical RK4 with steps shrinking like 1/|y| so a finite-time blow-up is approached
// without overshooting. `watch` limits the guard to the listed components.
template <std::size_t N>
Run<N> rk4_until(const Field<N>& f, Vec<N> y, double t_end, double h0 = 1e-3, double guard = 1e8,
                 bool record = false, std::vector<std::size_t> watch = {}) {
    Run<N> run;
    double t = 0.0;
    auto size = [&](const Vec<N>& v) {
        if (watch.empty()) return max_abs(v);
        double m = 0.0;
        for (auto i : watch) m = std::max(m, std::abs(v[i]));
        return m;
    };
    if (record) run.times.push_back(t), run.states.push_back(y);
    while (t < t_end) {
        const double scale = 1.0 + size(y);
        double h = std::min(h0 / scale, t_end - t);
        y = rk4_step(f, y, h);
        t += h;
        if (record) run.times.push_back(t), run.states.push_back(y);
        if (!(size(y) < guard)) {
            run.blew_up = true;
            break;
        }
    }
    run.theta = t;
    run.state = y;
    return run;
}

// (v, e) along a nonrelativistic characteristic.
inline Field<2> char2d_nr() {
    return [](const Vec<2>& y) { return Vec<2>{-y[0] * y[0] - y[1], (1.0 - y[1]) * y[0]}; };
}

// (P, E, p, e) along a relativistic characteristic; rho decouples.
inline Field<4> char_rel() {
    return [](const Vec<4>& y) {
        const double g = std::sqrt(1.0 + y[0] * y[0]);
        const double g3 = g * g * g;
        return Vec<4>{-y[1], y[0] / g, -y[3] - y[2] * y[2] / g3, (1.0 - y[3]) * y[2] / g3};
    };
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Period of the (P, E) orbit through (P0, E0), measured from successive upward crossings
// of P = 0 with a fine RK4 and linear interpolation between steps.
inline double measured_rel_period(double P0, double E0, int periods = 10, double h = 1e-3) {
    const Field<2> f = [](const Vec<2>& y) { return Vec<2>{-y[1], y[0] / std::sqrt(1.0 + y[0] * y[0])}; };
    Vec<2> y{P0, E0};
    double t = 0.0;
    std::vector<double> crossings;
    while (crossings.size() < static_cast<std::size_t>(periods + 1)) {
        const Vec<2> next = rk4_step(f, y, h);
        if (y[0] < 0.0 && next[0] >= 0.0) crossings.push_back(t + h * (-y[0]) / (next[0] - y[0]));
        y = next;
        t += h;
    }
    return (crossings.back() - crossings.front()) / periods;
}

// Spatial period of the relativistic traveling wave: first return of P to 0 from below,
// starting at P = 0, E = sqrt(I2), with a cubic Hermite root between RK4 steps.
inline double measured_wave_period(double I2, double w, double h = 1e-3) {
    const Field<2> f = [w](const Vec<2>& y) {
        const double V = y[0] / std::sqrt(1.0 + y[0] * y[0]);
        return Vec<2>{y[1] / (w - V), -V / (w - V)};
    };
    Vec<2> y{0.0, std::sqrt(I2)};
    double xi = 0.0;
    bool left = false;
    for (;;) {
        const Vec<2> next = rk4_step(f, y, h);
        if (next[0] > 0.0) left = true;
        if (left && y[0] < 0.0 && next[0] >= 0.0) {
            const double d0 = f(y)[0] * h, d1 = f(next)[0] * h;
            auto H = [&](double s) {
                const double s2 = s * s, s3 = s2 * s;
                return (2 * s3 - 3 * s2 + 1) * y[0] + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * next[0] + (s3 - s2) * d1;
            };
            double lo = 0.0, hi = 1.0;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (H(mid) < 0.0 ? lo : hi) = mid;
            }
            return xi + h * 0.5 * (lo + hi);
        }
        y = next;
        xi += h;
    }
}

}  // namespace oracle
