#include "coldplasma/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

namespace coldplasma::numerics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension coefficients (Hairer, Norsett & Wanner, DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool crossed(double g_prev, double g_new, int direction) {
    const bool rising = g_prev < 0.0 && g_new >= 0.0;
    const bool falling = g_prev > 0.0 && g_new <= 0.0;
    if (direction > 0) return rising;
    if (direction < 0) return falling;
    return rising || falling;
}

// Brent's method with caller-supplied endpoint values.
double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
             double x_tol, int max_iter) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

}  // namespace

std::size_t Trajectory::segment_for(double t) const {
    if (dense_.empty()) throw std::logic_error("trajectory was integrated without dense output");
    if (t < times.front() || t > times.back())
        throw std::out_of_range("dense output requested outside the integrated span");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t idx = static_cast<std::size_t>(std::distance(times.begin(), it));
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, dense_.size() - 1);
}

State Trajectory::at(double t) const {
    const std::size_t n = dimension();
    const auto& c = dense_[segment_for(t)];
    const double s = (t - c[0]) / c[1];
    const double s1 = 1.0 - s;
    State y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = &c[2 + i];
        y[i] = r[0] + s * (r[n] + s1 * (r[2 * n] + s * (r[3 * n] + s1 * r[4 * n])));
    }
    return y;
}

double Trajectory::component_at(double t, std::size_t i) const {
    const std::size_t n = dimension();
    const auto& c = dense_[segment_for(t)];
    const double s = (t - c[0]) / c[1];
    const double s1 = 1.0 - s;
    const double* r = &c[2 + i];
    return r[0] + s * (r[n] + s1 * (r[2 * n] + s * (r[3 * n] + s1 * r[4 * n])));
}

Trajectory integrate_adaptive(const Rhs& rhs, State y0, double t_begin, double t_end,
                              const IntegratorOptions& opts, std::span<const EventSpec> events) {
    if (!(t_end >= t_begin)) throw std::invalid_argument("integration span must be increasing");
    if (y0.empty()) throw std::invalid_argument("empty initial state");
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol >= 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!all_finite(y0)) throw IntegrationError("non-finite initial state", t_begin);

    const std::size_t n = y0.size();
    Trajectory traj;
    traj.times.push_back(t_begin);
    traj.states.push_back(y0);
    if (t_end == t_begin) return traj;

    std::array<std::vector<double>, 7> k;
    for (auto& v : k) v.assign(n, 0.0);
    std::vector<double> ytmp(n), ynew(n), yerr(n);

    double t = t_begin;
    std::vector<double> y = std::move(y0);
    rhs(t, y, k[0]);
    if (!all_finite(k[0])) throw IntegrationError("non-finite right-hand side", t);

    auto scale = [&](double a, double b) {
        return opts.abs_tol + opts.rel_tol * std::max(std::abs(a), std::abs(b));
    };

    double h = opts.initial_step;
    if (!(h > 0.0)) {
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = scale(y[i], y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1n += (k[0][i] / sc) * (k[0][i] / sc);
        }
        d0 = std::sqrt(d0 / n);
        d1n = std::sqrt(d1n / n);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, t_end - t_begin);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h0 * k[0][i];
        rhs(t + h0, ytmp, k[1]);
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = scale(y[i], y[i]);
            const double q = (k[1][i] - k[0][i]) / sc;
            d2 += q * q;
        }
        d2 = std::isfinite(d2) ? std::sqrt(d2 / n) / h0 : 1e300;
        const double dm = std::max(d1n, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min({h, opts.max_step, t_end - t_begin});

    std::vector<double> g_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].fn(t, y);

    const double eps = std::numeric_limits<double>::epsilon();
    bool last_rejected = false;
    std::size_t steps = 0;

    while (t < t_end) {
        if (++steps > opts.max_steps) throw IntegrationError("maximum step count exceeded", t);
        if (h < 16.0 * eps * std::max(1.0, std::abs(t)))
            throw IntegrationError("step size underflow", t);
        bool final_step = false;
        if (t + h >= t_end || t + 1.01 * h >= t_end) {
            h = t_end - t;
            final_step = true;
        }

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k[0][i];
        rhs(t + c2 * h, ytmp, k[1]);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
        rhs(t + c3 * h, ytmp, k[2]);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
        rhs(t + c4 * h, ytmp, k[3]);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
        rhs(t + c5 * h, ytmp, k[4]);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                                  a65 * k[4][i]);
        const double t_new = final_step ? t_end : t + h;
        rhs(t_new, ytmp, k[5]);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] +
                                  a76 * k[5][i]);
        rhs(t_new, ynew, k[6]);

        bool finite = all_finite(ynew) && all_finite(k[6]);
        double err = 0.0;
        if (finite) {
            for (std::size_t i = 0; i < n; ++i) {
                yerr[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                               e6 * k[5][i] + e7 * k[6][i]);
                const double q = yerr[i] / scale(y[i], ynew[i]);
                err += q * q;
            }
            err = std::sqrt(err / n);
            finite = std::isfinite(err);
        }
        if (!finite) {
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
            continue;
        }

        if (opts.dense_output || !events.empty()) {
            std::vector<double> coeffs(2 + 5 * n);
            coeffs[0] = t;
            coeffs[1] = h;
            for (std::size_t i = 0; i < n; ++i) {
                const double dy = ynew[i] - y[i];
                const double bspl = h * k[0][i] - dy;
                coeffs[2 + i] = y[i];
                coeffs[2 + n + i] = dy;
                coeffs[2 + 2 * n + i] = bspl;
                coeffs[2 + 3 * n + i] = dy - h * k[6][i] - bspl;
                coeffs[2 + 4 * n + i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] +
                                             d5 * k[4][i] + d6 * k[5][i] + d7 * k[6][i]);
            }
            traj.push_dense(std::move(coeffs));
        }
        traj.times.push_back(t_new);
        traj.states.push_back(ynew);

        bool stop_terminal = false;
        if (!events.empty()) {
            std::vector<EventHit> hits;
            std::size_t first_terminal = events.size();
            double t_terminal = t_new;
            for (std::size_t e = 0; e < events.size(); ++e) {
                const double g_new = events[e].fn(t_new, ynew);
                if (crossed(g_prev[e], g_new, events[e].direction)) {
                    auto g_of_t = [&](double s) { return events[e].fn(s, traj.at(s)); };
                    const double x_tol = 4.0 * eps * std::max(1.0, std::abs(t_new));
                    const double root = brent(g_of_t, t, t_new, g_prev[e], g_new, x_tol, 200);
                    hits.push_back({root, events[e].label, traj.at(root)});
                    if (events[e].terminal && root <= t_terminal) {
                        t_terminal = root;
                        first_terminal = e;
                    }
                }
                g_prev[e] = g_new;
            }
            std::sort(hits.begin(), hits.end(),
                      [](const EventHit& a, const EventHit& b) { return a.theta < b.theta; });
            for (auto& hit : hits) {
                if (first_terminal < events.size() && hit.theta > t_terminal) break;
                traj.events.push_back(std::move(hit));
            }
            if (first_terminal < events.size()) {
                State y_stop = traj.at(t_terminal);
                traj.times.back() = t_terminal;
                traj.states.back() = std::move(y_stop);
                traj.reason = StopReason::terminal_event;
                stop_terminal = true;
            }
        }
        if (stop_terminal) break;

        t = t_new;
        std::swap(y, ynew);
        std::swap(k[0], k[6]);

        if (max_abs(y) > opts.blowup_guard) {
            traj.reason = StopReason::blowup_guard;
            break;
        }

        double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 10.0);
        if (last_rejected) fac = std::min(fac, 1.0);
        last_rejected = false;
        h = std::min(h * fac, opts.max_step);
    }
    return traj;
}

namespace {

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082,
                                      0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975,
                                      0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * wgk[7];
    double g = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * xgk[j];
        const double sum = f(c - dx) + f(c + dx);
        k += wgk[j] * sum;
        if (j % 2 == 1) g += wg[j / 2] * sum;
    }
    k *= hl;
    g *= hl;
    if (!std::isfinite(k)) throw QuadratureError("non-finite integrand value");
    return {a, b, k, std::abs(k - g), depth};
}

}  // namespace

double quad_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     int max_depth) {
    if (a == b) return 0.0;
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    std::priority_queue<Segment> heap;
    heap.push(gk15(f, a, b, 0));
    double total = heap.top().value, err = heap.top().error;
    constexpr std::size_t max_segments = 4000;
    std::size_t segments = 1;
    while (err > std::max(abs_tol, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(total))) {
        Segment worst = heap.top();
        if (worst.depth >= max_depth || segments >= max_segments)
            throw QuadratureError("adaptive quadrature did not reach the requested tolerance");
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid, worst.depth + 1);
        Segment right = gk15(f, mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    // Re-sum to avoid drift from incremental updates.
    double sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

double quad_singular(const std::function<double(const EndpointPoint&)>& f, double a, double b,
                     SingularEnds ends, double abs_tol, int max_depth) {
    if (!(b > a)) throw std::invalid_argument("quad_singular requires a < b");
    const double w = b - a;
    if (!ends.lower && !ends.upper) {
        return quad_adaptive([&](double x) { return f({x, x - a, b - x}); }, a, b, abs_tol,
                             max_depth);
    }
    if (ends.lower && ends.upper) {
        auto g = [&](double phi) {
            const double s = std::sin(phi), c = std::cos(phi);
            const double from_a = w * s * s, to_b = w * c * c;
            const double x = from_a <= to_b ? a + from_a : b - to_b;
            return f({x, from_a, to_b}) * 2.0 * w * s * c;
        };
        return quad_adaptive(g, 0.0, 0.5 * std::numbers::pi, abs_tol, max_depth);
    }
    if (ends.lower) {
        auto g = [&](double u) {
            const double from_a = w * u * u, to_b = w * (1.0 - u) * (1.0 + u);
            return f({a + from_a, from_a, to_b}) * 2.0 * w * u;
        };
        return quad_adaptive(g, 0.0, 1.0, abs_tol, max_depth);
    }
    auto g = [&](double u) {
        const double to_b = w * u * u, from_a = w * (1.0 - u) * (1.0 + u);
        return f({b - to_b, from_a, to_b}) * 2.0 * w * u;
    };
    return quad_adaptive(g, 0.0, 1.0, abs_tol, max_depth);
}

double quad_singular(const std::function<double(double)>& f, double a, double b,
                     SingularEnds ends, double abs_tol, int max_depth) {
    return quad_singular([&](const EndpointPoint& p) { return f(p.x); }, a, b, ends, abs_tol,
                         max_depth);
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double x_tol,
                 int max_iter) {
    const double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw std::invalid_argument("find_root: non-finite bracket value");
    if ((flo > 0.0) == (fhi > 0.0) && flo != 0.0 && fhi != 0.0)
        throw std::invalid_argument("find_root: bracket does not contain a sign change");
    return brent(f, lo, hi, flo, fhi, x_tol, max_iter);
}

}  // namespace coldplasma::numerics
