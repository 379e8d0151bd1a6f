#pragma once

#include <array>
#include <memory>
#include <vector>

#include "coldplasma/numerics.hpp"

namespace coldplasma::twave {

struct WaveProfile {
    double w = 0.0;
    double I2 = 0.0;  // for the nonrelativistic wave this holds I0^2
    double X = 0.0;
    double P_plus = 0.0;
    double P_minus = 0.0;
    std::vector<double> xi;
    std::vector<double> P;  // momentum, or velocity in the nonrelativistic model
    std::vector<double> E;
};

// w_crit = sqrt(1 - 4 / (I2 + 2)^2); smooth relativistic waves need w^2 > w_crit^2.
double critical_speed(double I2);
// Smooth nonrelativistic waves need w^2 > I0^2.
double nonrel_speed_threshold(double I0);

double wave_invariant(double P, double E);  // 2 (sqrt(1 + P^2) - 1) + E^2
double turning_momentum(double I2);         // P_+ = sqrt((I2/2 + 1)^2 - 1)

// Spatial period of the relativistic wave, from the quadrature between P_- and P_+.
double wave_period_X(double I2, double w, double abs_tol = 1e-12);

// Relativistic wave anchored at P(0) = 0, E(0) = +sqrt(I2), optionally shifted so that
// the profile value at xi is the anchored profile at xi + phase_offset.
class RelativisticWave {
public:
    RelativisticWave(double I2, double w, double phase_offset = 0.0, double rel_tol = 1e-12);

    double I2() const noexcept { return I2_; }
    double w() const noexcept { return w_; }
    double X() const noexcept { return X_; }
    double P_plus() const noexcept { return P_plus_; }

    // (P, E) at xi, extended periodically.
    std::array<double, 2> state(double xi) const;
    // (dP/dxi, dE/dxi) from the profile ODE.
    std::array<double, 2> slope(double xi) const;
    WaveProfile sample(int n_periods, int samples_per_period) const;

private:
    double I2_, w_, offset_, X_, P_plus_;
    std::shared_ptr<const numerics::Trajectory> period_;
};

WaveProfile wave_profile_rel(double I2, double w, int n_periods, int samples_per_period,
                             double phase_offset = 0.0);

// Nonrelativistic wave from the implicit representation; E(0) = +sqrt(I0^2 - V(0)^2).
WaveProfile wave_profile_nonrel(double I0, double w, double V_at_0, int n_periods,
                                int samples_per_period = 256);

// Largest |dP/dxi| and |dE/dxi| over a supercritical relativistic wave.
std::array<double, 2> max_profile_slopes(double I2, double w);

// Phase-parametrised orbit P = P_+ sin(phi) with xi(phi) accumulated along it. Valid for any
// w; for subcritical speeds xi(phi) is not monotone and the profile is multivalued.
struct BranchData {
    std::vector<double> phi;
    std::vector<double> xi;
    std::vector<double> P;
    std::vector<double> E;
    bool multivalued = false;
};
BranchData wave_branches(double I2, double w, int samples);

}  // namespace coldplasma::twave
