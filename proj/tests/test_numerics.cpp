#include <doctest.h>

#include <cmath>

#include "coldplasma/numerics.hpp"
#include "support/oracles.hpp"

using namespace coldplasma::numerics;

namespace {

Rhs exponential() {
    return [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
}
Rhs tangent() {
    return [](double, std::span<const double> y, std::span<double> dy) { dy[0] = 1.0 + y[0] * y[0]; };
}
Rhs circle() {
    return [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = -y[1];
        dy[1] = y[0];
    };
}

double run_error(const Rhs& f, State y0, double t1, double tol, const std::function<double(double)>& exact) {
    IntegratorOptions o;
    o.rel_tol = tol;
    o.abs_tol = tol;
    const auto tr = integrate_adaptive(f, std::move(y0), 0.0, t1, o);
    return std::abs(tr.states.back()[0] - exact(t1));
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("analytic solutions converge as the tolerance shrinks") {
    struct Case {
        Rhs f;
        State y0;
        double t1;
        std::function<double(double)> exact;
    };
    const Case cases[] = {
        {exponential(), {1.0}, 3.0, [](double t) { return std::exp(t); }},
        {tangent(), {0.0}, 1.4, [](double t) { return std::tan(t); }},
        {circle(), {1.0, 0.0}, 20.0, [](double t) { return std::cos(t); }},
    };
    for (const auto& c : cases) {
        double prev = std::numeric_limits<double>::infinity();
        for (double tol = 1e-6; tol >= 1e-11; tol /= 2.0) {
            const double err = run_error(c.f, c.y0, c.t1, tol, c.exact);
            // A factor of 2 of slack absorbs the step-size controller's discrete choices.
            CHECK(err <= 2.0 * prev + 1e-13);
            prev = std::min(prev, err);
        }
        CHECK(prev < 1e-8 * std::max(1.0, std::abs(c.exact(c.t1))));
    }
}

TEST_CASE("dense output interpolates between steps") {
    IntegratorOptions o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-12;
    const auto tr = integrate_adaptive(circle(), {1.0, 0.0}, 0.0, 10.0, o);
    for (double t = 0.05; t < 10.0; t += 0.37) {
        CHECK(tr.component_at(t, 0) == doctest::Approx(std::cos(t)).epsilon(1e-8));
        CHECK(tr.component_at(t, 1) == doctest::Approx(std::sin(t)).epsilon(1e-8));
    }
}

TEST_CASE("event roots satisfy the event function") {
    const double tol = 1e-10;
    IntegratorOptions o;
    o.rel_tol = tol;
    EventSpec ev{"y0 = 0.3", [](double, std::span<const double> y) { return y[0] - 0.3; }, 0, false};
    const auto tr = integrate_adaptive(circle(), {1.0, 0.0}, 0.0, 30.0, o, std::span(&ev, 1));
    REQUIRE(tr.events.size() >= 8);
    for (const auto& hit : tr.events) {
        CHECK(std::abs(hit.state[0] - 0.3) < 10.0 * tol);
        CHECK(std::abs(std::cos(hit.theta) - 0.3) < 1e-8);
    }
}

TEST_CASE("directional and terminal events") {
    EventSpec rising{"up", [](double, std::span<const double> y) { return y[1]; }, +1, true};
    const auto tr = integrate_adaptive(circle(), {1.0, 0.0}, 0.5, 20.0, {}, std::span(&rising, 1));
    REQUIRE(tr.events.size() == 1);
    CHECK(tr.events[0].theta == doctest::Approx(0.5 + 2.0 * oracle::pi).epsilon(1e-9));
    CHECK(tr.reason == StopReason::terminal_event);
    CHECK(tr.t_end() == doctest::Approx(tr.events[0].theta));
}

TEST_CASE("blow-up guard stops a finite-time singularity") {
    const auto tr = integrate_adaptive(tangent(), {0.0}, 0.0, 3.0);
    CHECK(tr.reason == StopReason::blowup_guard);
    CHECK(tr.terminated_early());
    CHECK(tr.t_end() == doctest::Approx(oracle::pi / 2).epsilon(1e-9));
}

TEST_CASE("inverted interval and empty state are rejected") {
    CHECK_THROWS(integrate_adaptive(circle(), {1.0, 0.0}, 1.0, 0.0));
    CHECK_THROWS(integrate_adaptive(circle(), {}, 0.0, 1.0));
}

TEST_CASE("singular quadrature agrees with plain quadrature on smooth integrands") {
    oracle::Gen g(11);
    for (int i = 0; i < 20; ++i) {
        const double a = g.uniform(-2, 0), b = g.uniform(0.5, 3), k = g.uniform(0.2, 3);
        auto f = [k](double x) { return std::cos(k * x) + x * x; };
        const double plain = quad_adaptive(f, a, b, 1e-12);
        for (SingularEnds ends : {SingularEnds{true, false}, SingularEnds{false, true}, SingularEnds{true, true}})
            CHECK(std::abs(quad_singular(f, a, b, ends, 1e-12) - plain) < 1e-11);
        CHECK(std::abs(plain - oracle::simpson(f, a, b)) < 1e-10);
    }
}

TEST_CASE("inverse square-root endpoints") {
    // Integral of 1/sqrt(1 - x^2) over [-1, 1] is pi; endpoint offsets avoid cancellation.
    const double v = quad_singular(
        [](const EndpointPoint& p) { return 1.0 / std::sqrt(p.from_a * p.to_b); }, -1.0, 1.0, {true, true});
    CHECK(v == doctest::Approx(oracle::pi).epsilon(1e-12));
    const double half = quad_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, {true, false});
    CHECK(half == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Brent root finding") {
    CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0) ==
          doctest::Approx(0.7390851332151607).epsilon(1e-14));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::invalid_argument);
}

}
