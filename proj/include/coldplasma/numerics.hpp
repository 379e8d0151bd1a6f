#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coldplasma::numerics {

using State = std::vector<double>;
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double theta)
        : std::runtime_error(what), theta_(theta) {}
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    // Integration stops (without error) once any component exceeds this magnitude.
    double blowup_guard = 1e12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0 selects a step automatically
    std::size_t max_steps = 5'000'000;
    bool dense_output = true;
};

// A scalar function g(t, y). Zero crossings are located and refined; `direction`
// restricts to rising (+1), falling (-1) or both (0) crossings.
struct EventSpec {
    std::string label;
    std::function<double(double, std::span<const double>)> fn;
    int direction = 0;
    bool terminal = false;
};

struct EventHit {
    double theta;
    std::string label;
    State state;
};

enum class StopReason { completed, blowup_guard, terminal_event };

class Trajectory {
public:
    std::vector<double> times;
    std::vector<State> states;
    std::vector<EventHit> events;
    StopReason reason = StopReason::completed;

    bool terminated_early() const noexcept { return reason != StopReason::completed; }
    std::size_t dimension() const noexcept { return states.empty() ? 0 : states.front().size(); }
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }

    // Dense interpolation inside [t_begin, t_end]. Requires dense_output.
    State at(double t) const;
    double component_at(double t, std::size_t i) const;
    bool has_dense() const noexcept { return !dense_.empty(); }

    // Internal: five coefficient vectors per accepted step.
    void push_dense(std::vector<double> coeffs) { dense_.push_back(std::move(coeffs)); }

private:
    std::vector<std::vector<double>> dense_;
    std::size_t segment_for(double t) const;
};

// Adaptive Dormand-Prince 5(4) with continuous extension and event location.
Trajectory integrate_adaptive(const Rhs& rhs, State y0, double t_begin, double t_end,
                              const IntegratorOptions& opts = {},
                              std::span<const EventSpec> events = {});

struct SingularEnds {
    bool lower = false;
    bool upper = false;
};

// Abscissa with exact offsets from both ends, free of cancellation near either end.
struct EndpointPoint {
    double x;
    double from_a;  // x - a
    double to_b;    // b - x
};

// Adaptive Gauss-Kronrod (7,15). Flagged ends are handled with x = a + (b-a) sin^2(phi),
// which removes inverse square-root endpoint behaviour.
double quad_singular(const std::function<double(double)>& f, double a, double b,
                     SingularEnds ends, double abs_tol = 1e-12, int max_depth = 60);
double quad_singular(const std::function<double(const EndpointPoint&)>& f, double a, double b,
                     SingularEnds ends, double abs_tol = 1e-12, int max_depth = 60);

// Plain adaptive Gauss-Kronrod on a smooth integrand.
double quad_adaptive(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, int max_depth = 60);

// Bracketed scalar root (Brent). Throws std::invalid_argument without a sign change.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol = 1e-14, int max_iter = 200);

}  // namespace coldplasma::numerics
