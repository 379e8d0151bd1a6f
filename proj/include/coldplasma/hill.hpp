#pragma once

#include <array>
#include <functional>
#include <memory>

#include "coldplasma/numerics.hpp"
#include "coldplasma/verdict.hpp"

namespace coldplasma::hill {

// Periodic coefficient K(theta) of the Hill equation z'' + K z = 0. Immutable and cheap to copy.
class PeriodicCoefficient {
public:
    static PeriodicCoefficient constant(double value, double period);
    static PeriodicCoefficient from_function(std::function<double(double)> k, double period,
                                             double k_min, double k_max);

    double operator()(double theta) const;
    double period() const noexcept { return period_; }
    bool is_constant() const noexcept { return constant_; }
    double min() const noexcept { return k_min_; }
    double max() const noexcept { return k_max_; }

private:
    std::shared_ptr<const std::function<double(double)>> fn_;
    double period_ = 0.0;
    double k_min_ = 0.0;
    double k_max_ = 0.0;
    double value_ = 0.0;
    bool constant_ = false;
};

// K(theta) = (1 + P(theta)^2)^(-3/2) along the characteristic through (P0, E0), periodic
// with the orbit period. Equilibrium data gives the constant K = 1 with period 2*pi.
PeriodicCoefficient build_K(double P0, double E0, double rel_tol = 1e-12);

struct MathieuCoefficients {
    double a;
    double b;
};
MathieuCoefficients mathieu_coefficients(double epsilon);
// K = a - 2 b cos(2 theta), period pi.
PeriodicCoefficient mathieu_K(double epsilon);
double mathieu_asymptotic(double epsilon);

struct FloquetData {
    double period;
    double discriminant;  // half-trace of the monodromy matrix
    double mu;            // real part of the characteristic exponent per unit theta
    std::array<double, 4> monodromy;  // z1(T), z1'(T), z2(T), z2'(T)
    double wronskian;                 // z1 z2' - z2 z1' at T
    double max_wronskian_drift;       // over accepted steps
};

FloquetData floquet_discriminant(const PeriodicCoefficient& K, double rel_tol = 1e-12);

// The Cauchy problem y'' + K y = 0, y(0) = y0, y'(0) = yp0, and the crossing y' = target.
// With y0 = 1 this is z(0) = 1, z'(0) = -u0, target lambda0. Scaling by p0 gives
// y(0) = p0, y'(0) = -e0, target 1 - e0, which stays meaningful when p0 = 0.
struct HillProblem {
    PeriodicCoefficient K;
    double u0 = 0.0;
    double lambda0 = 0.0;
    double horizon = 0.0;
    double y0 = 1.0;
    double yp0 = 0.0;
    double target = 0.0;

    static HillProblem from_u_lambda(PeriodicCoefficient K, double u0, double lambda0,
                                     double horizon);
    static HillProblem from_derivatives(PeriodicCoefficient K, double p0, double e0,
                                        double horizon);
};

struct HillOptions {
    double rel_tol = 1e-11;
    // |disc| within this distance of 1 is treated as the parabolic borderline.
    double discriminant_tol = 1e-8;
    bool keep_trajectory = false;
};

struct HillResult {
    Verdict verdict;
    FloquetData floquet;
    numerics::Trajectory trajectory;  // (y, y') when keep_trajectory is set
};

HillResult solve_theorem4(const HillProblem& problem, const HillOptions& opts = {});
Verdict classify_theorem4(const HillProblem& problem, const HillOptions& opts = {});

}  // namespace coldplasma::hill
