#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "coldplasma/profile.hpp"
#include "support/oracles.hpp"

using namespace coldplasma::profile;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/coldplasma_test_" + name;
    std::ofstream(path) << body;
    return path;
}

void check_closed_form_derivatives(const InitialProfile& prof) {
    const auto [lo, hi] = prof.default_range();
    const double h = 1e-5;
    for (int i = 1; i < 20; ++i) {
        const double r = lo + (hi - lo) * i / 20.0;
        const auto s = prof.at(r), a = prof.at(r - h), b = prof.at(r + h);
        CHECK(s.dP == doctest::Approx((b.P - a.P) / (2 * h)).epsilon(1e-7).scale(1.0));
        CHECK(s.dE == doctest::Approx((b.E - a.E) / (2 * h)).epsilon(1e-7).scale(1.0));
    }
}

}  // namespace

TEST_SUITE("profile") {

TEST_CASE("gaussian closed forms") {
    const GaussianProfile g(2.07, 3.0);
    CHECK(g.at(0.0).E == 0.0);
    CHECK(g.at(0.0).P == 0.0);
    CHECK(g.at(0.0).dE == doctest::Approx(2.07 * 2.07 / 9.0));
    CHECK(g.at(-1.2).E == doctest::Approx(-g.at(1.2).E));
    // The peak sits at rho = r / 2.
    CHECK(g.at(1.5).dE == doctest::Approx(0.0).scale(1.0));
    CHECK(g.E_max() == doctest::Approx(g.at(1.5).E));
    check_closed_form_derivatives(g);
    CHECK_THROWS(GaussianProfile(1.0, 0.0));
}

TEST_CASE("sine and linear closed forms") {
    const SineProfile s(0.3, 2.0);
    CHECK(s.at(0.25 * oracle::pi).E == doctest::Approx(0.3));
    check_closed_form_derivatives(s);
    const LinearProfile l(0.2, -0.4);
    CHECK(l.at(2.0).E == doctest::Approx(0.4));
    CHECK(l.at(2.0).P == doctest::Approx(-0.8));
    CHECK(l.at(-7.0).dE == 0.2);
    CHECK(l.at(-7.0).dP == -0.4);
}

TEST_CASE("fourth-order differences converge at fourth order") {
    double prev = 0.0;
    for (int n : {41, 81, 161}) {
        const double h = 2.0 / (n - 1);
        std::vector<double> f(n);
        for (int i = 0; i < n; ++i) f[i] = std::sin(1.3 * (-1.0 + i * h));
        const auto d = derivative_uniform(f, h);
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - 1.3 * std::cos(1.3 * (-1.0 + i * h))));
        if (prev > 0.0) CHECK(prev / err > 12.0);
        prev = err;
    }
    CHECK_THROWS(derivative_uniform({1.0, 2.0}, 0.1));
}

TEST_CASE("table profile reproduces the sampled family") {
    const GaussianProfile g(1.0, 2.0);
    std::string body = "rho,P,E\n";
    for (int i = 0; i <= 400; ++i) {
        const double r = -4.0 + 0.02 * i;
        const auto s = g.at(r);
        body += std::to_string(r) + "," + std::to_string(s.P) + "," + std::to_string(s.E) + "\n";
    }
    const auto path = write_temp("table.csv", body);
    const auto t = TableProfile::load_csv(path);
    CHECK_FALSE(t.analytic_derivatives());
    for (double r : {-3.0, -0.51, 0.0, 0.77, 2.9}) {
        CHECK(t.at(r).E == doctest::Approx(g.at(r).E).epsilon(1e-5).scale(1.0));
        CHECK(t.at(r).dE == doctest::Approx(g.at(r).dE).epsilon(1e-4).scale(1.0));
    }
    CHECK_THROWS_AS(t.at(5.0), std::out_of_range);
    const auto [lo, hi] = t.default_range();
    CHECK(lo == doctest::Approx(-4.0));
    CHECK(hi == doctest::Approx(4.0));
}

TEST_CASE("table files with a V column or errors") {
    const auto ok = write_temp("v.csv", "rho,V,E\n0,0,0\n0.1,0,0.1\n0.2,0,0.2\n0.3,0,0.3\n0.4,0,0.4\n0.5,0,0.5\n");
    CHECK(TableProfile::load_csv(ok).at(0.25).dE == doctest::Approx(1.0));
    CHECK_THROWS(TableProfile::load_csv("/nonexistent/table.csv"));
    CHECK_THROWS(TableProfile::load_csv(write_temp("nocol.csv", "rho,E\n0,0\n")));
    CHECK_THROWS(TableProfile::load_csv(write_temp("bad.csv", "rho,P,E\n0,0,x\n")));
    CHECK_THROWS(TableProfile::load_csv(write_temp("uneven.csv", "rho,P,E\n0,0,0\n0.1,0,0\n0.3,0,0\n0.4,0,0\n0.5,0,0\n")));
}

TEST_CASE("make_profile") {
    CHECK(make_profile("gaussian", {})->name() == "gaussian");
    CHECK(make_profile("sine", {{"amplitude", "0.5"}})->parameters().at("amplitude") == 0.5);
    CHECK(make_profile("linear", {{"alpha", "0.1"}, {"beta", "0.2"}})->at(1.0).P == doctest::Approx(0.2));
    CHECK_THROWS_AS(make_profile("square", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_profile("sine", {{"amp", "1"}}), std::invalid_argument);
    CHECK_THROWS_AS(make_profile("sine", {{"amplitude", "abc"}}), std::invalid_argument);
    CHECK_THROWS(make_profile("table", {}));
    CHECK_THROWS(make_profile("table", {{"path", "/nonexistent.csv"}}));
}

}
