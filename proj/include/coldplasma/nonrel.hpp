#pragma once

#include <array>
#include <cmath>

#include "coldplasma/numerics.hpp"
#include "coldplasma/verdict.hpp"

namespace coldplasma::nonrel {

// State carried along a characteristic of the nonrelativistic model.
struct CharStateNR {
    double rho = 0.0;
    double V = 0.0;
    double E = 0.0;
    double v = 0.0;  // V_rho
    double e = 0.0;  // E_rho

    numerics::State to_vector() const { return {rho, V, E, v, e}; }
    static CharStateNR from_vector(std::span<const double> y) { return {y[0], y[1], y[2], y[3], y[4]}; }
};

std::array<double, 5> rhs_extended_nr(const CharStateNR& s);
numerics::Rhs rhs_function_nr();

// Delta = v0^2 + 2 e0 - 1; the orbit through (v0, e0) blows up iff Delta >= 0.
double discriminant(double v0, double e0);
// C = (v^2 + 2e - 1) / (e - 1)^2. Infinite on the line e = 1.
double phase_constant(double v, double e);

Verdict criterion_theorem1(double v0, double e0);

// Time for (v, e) to reach infinity starting from (v_start, e_start). Throws
// std::domain_error in the smooth regime.
double blowup_time_nr(double e_start, double v_start, double abs_tol = 1e-12);

struct TurningPoints {
    double C;
    double e_minus;
    double e_plus;
};
TurningPoints turning_points_nr(double e0, double v0);

// Period of the closed (v, e) orbit, which is 2*pi for every smooth orbit.
double closed_orbit_period_nr(double e0, double v0);
// The same period evaluated from the defining integral between e_- and e_+.
double closed_orbit_period_quadrature_nr(double e0, double v0, double abs_tol = 1e-12);

numerics::Trajectory integrate_characteristic_nr(const CharStateNR& start, double theta_end,
                                                 const numerics::IntegratorOptions& opts = {},
                                                 std::span<const numerics::EventSpec> events = {});

// Globally smooth (W, D) coefficient pair with W(0) = beta, D(0) = alpha.
class LinearSolutionCoeffs {
public:
    LinearSolutionCoeffs(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double s() const noexcept { return s_; }
    double theta0() const noexcept { return theta0_; }
    // |s| >= 1: the denominator vanishes somewhere and the pair blows up.
    bool breaking_regime() const noexcept { return std::abs(s_) >= 1.0; }

    double W(double theta) const;
    double D(double theta) const;

private:
    double alpha_, beta_, s_, theta0_;
};

std::array<double, 2> linear_solution(double alpha, double beta, double theta);

}  // namespace coldplasma::nonrel
