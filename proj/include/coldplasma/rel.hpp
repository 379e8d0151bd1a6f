#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "coldplasma/numerics.hpp"
#include "coldplasma/verdict.hpp"

namespace coldplasma::rel {

inline double lorentz_gamma(double P) { return std::sqrt(1.0 + P * P); }

// State carried along a characteristic of the relativistic model.
struct CharStateR {
    double rho = 0.0;
    double P = 0.0;
    double E = 0.0;
    double p = 0.0;  // P_rho
    double e = 0.0;  // E_rho

    double gamma() const { return lorentz_gamma(P); }
    numerics::State to_vector() const { return {rho, P, E, p, e}; }
    static CharStateR from_vector(std::span<const double> y) { return {y[0], y[1], y[2], y[3], y[4]}; }
};

std::array<double, 5> rhs_extended_rel(const CharStateR& s);
numerics::Rhs rhs_function_rel();

// C1 = 2 sqrt(1 + P^2) + E^2, conserved along characteristics.
double first_integral_C1(double P, double E);

// Extreme momenta of the orbit with first integral C1: P_max = sqrt(C1^2/4 - 1).
double momentum_amplitude(double C1);

// Oscillation period of a characteristic with first integral C1 (2*pi at C1 = 2).
double period_T(double C1, double abs_tol = 1e-12);

struct SpecialCaseData {
    double C1;
    double C2;
    double M_star;
};

// Only meaningful when C1 is the same for every rho0 of the profile.
SpecialCaseData special_case_data(double P0, double E0, double P0p);
Verdict criterion_theorem2(double P0, double E0, double P0p);

// p along the orbit in closed form; branch_sign is the sign of E.
double p_closed_form(double P, double C1, double C2, int branch_sign);

// e0 making E0/P0' + P0/gamma0 = C2 consistent with the constant-C1 constraint,
// i.e. the value of E0' implied by differentiating 2 gamma0 + E0^2 = C1.
double constant_C1_e0(double P0, double E0, double p0);

Verdict criterion_theorem3(double P0, double E0, double p0, double e0);

struct BracketBounds {
    double u0;
    double lambda0;
    double K_minus;

    static BracketBounds from_derivatives(double p0, double e0, double C1);
    // First theta at which the tangent argument of each bound reaches pi/2.
    double psi_minus_limit() const;
    double psi_plus_limit() const;
};

// Comparison bounds for 1/p built from K_minus <= K <= 1. They bracket 1/p when
// lambda0 = (1 - e0)/p0 > 0. Throws std::domain_error past a tangent singularity.
std::pair<double, double> psi_bounds(double theta, double u0, double lambda0, double K_minus);

numerics::Trajectory integrate_characteristic_rel(const CharStateR& start, double theta_end,
                                                  const numerics::IntegratorOptions& opts = {},
                                                  std::span<const numerics::EventSpec> events = {});

}  // namespace coldplasma::rel
