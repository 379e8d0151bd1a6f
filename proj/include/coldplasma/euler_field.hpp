#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coldplasma::profile {
class InitialProfile;
}
namespace coldplasma::twave {
class RelativisticWave;
}

namespace coldplasma::euler {

enum class Model { rel, nonrel };
// predictor_corrector: two-step Lax-Wendroff on (P, E).
// jet: semi-Lagrangian transport of (P, E) together with their rho-derivatives (p, e) under
// cubic Hermite interpolation, with feet found by Newton iteration on the characteristic.
enum class Scheme { predictor_corrector, jet };
enum class Boundary { equilibrium, periodic };

struct Grid {
    std::size_t n = 0;
    double x0 = 0.0;
    double h = 0.0;
    bool periodic = false;

    // Nodes x_i = (i - (n-1)/2) h on [-L, L], exactly mirror-symmetric about 0.
    static Grid symmetric(std::size_t n, double half_width);
    // n nodes x_i = x0 + i h with h = length / n; node n would coincide with node 0.
    static Grid periodic_domain(std::size_t n, double length, double x0 = 0.0);

    double x(std::size_t i) const {
        return periodic ? x0 + static_cast<double>(i) * h
                        : (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * h;
    }
    double length() const { return periodic ? h * n : h * (n - 1); }
    double lower() const { return x(0); }
    double upper() const { return x(n - 1); }
};

struct FieldState {
    Grid grid;
    std::vector<double> P;  // momentum, or velocity in the nonrelativistic model
    std::vector<double> E;
    std::vector<double> p;  // dP/drho, advanced only by the jet scheme
    std::vector<double> e;  // dE/drho, advanced only by the jet scheme
    double theta = 0.0;
    bool has_gradients = false;

    // Density 1 - dE/drho: from the carried gradient when available, else by differences.
    std::vector<double> density() const;
};

class NonFiniteField : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double gaussian_E_max(double a_star, double rho_star);
FieldState init_gaussian(double a_star, double rho_star, const Grid& grid);
FieldState init_from_profile(const profile::InitialProfile& prof, const Grid& grid);
FieldState init_from_wave(const twave::RelativisticWave& wave, const Grid& grid);

// N = 1 - dE/drho with fourth-order central differences (one-sided at the ends unless periodic).
std::vector<double> density_from_E(std::span<const double> E, const Grid& grid);

struct StepOptions {
    Model model = Model::rel;
    Scheme scheme = Scheme::jet;
    Boundary boundary = Boundary::equilibrium;
    int rk_substeps = 1;
    bool parallel = true;
};

struct StepReport {
    double min_jacobian = 1.0;  // smallest d(rho)/d(rho_foot) over the step (jet scheme)
    int max_newton_iterations = 0;
};

// Advance by dt into `out` (resized as needed). Throws NonFiniteField on overflow.
void step_into(const FieldState& in, FieldState& out, double dt, const StepOptions& opts,
               StepReport* report = nullptr);
FieldState step(const FieldState& in, double dt, const StepOptions& opts,
                StepReport* report = nullptr);

// Largest stable time step for the given state: cfl * h / max(1, max|V|).
double stable_dt(const FieldState& s, Model model, double cfl);

struct DiagnosticRecord {
    double theta;
    double N_max;
    double N_origin;
    double rho_of_max;
};

struct BreakingEvent {
    double theta;
    double rho;
    std::string reason;
};

struct RunDiagnostics {
    std::vector<DiagnosticRecord> series;
    std::optional<BreakingEvent> breaking;
    FieldState final_state;
    std::size_t steps = 0;
};

struct RunConfig {
    Model model = Model::rel;
    Scheme scheme = Scheme::jet;
    Boundary boundary = Boundary::equilibrium;
    double a_star = 2.07;
    double rho_star = 3.0;
    std::size_t grid_points = 4000;
    double half_width = 0.0;  // 0 selects 4.5 rho_star
    double theta_max = 60.0;
    double record_interval = 0.02;
    double cfl = 0.5;
    double N_threshold = 1e3;
    int rk_substeps = 1;
    bool parallel = true;
    double snapshot_interval = 0.0;  // 0 disables snapshots
    std::optional<FieldState> initial;  // replaces the Gaussian data when set
};

using SnapshotSink = std::function<void(const FieldState&, const std::vector<double>& density)>;

RunDiagnostics run(const RunConfig& config, const SnapshotSink& on_snapshot = {});

// Peak of N with sub-grid parabolic refinement, and N interpolated at rho = 0.
DiagnosticRecord measure(const FieldState& s, const std::vector<double>& density);

struct OffAxisEvent {
    double theta;
    double N_max;
    double rho;
    double N_origin;
};

// Local maxima of the N_max series (within +-window in theta) located away from the origin
// (|rho| > min_offset) and exceeding ratio * N_origin.
std::vector<OffAxisEvent> off_axis_maxima(const RunDiagnostics& diag, double window = 0.3,
                                          double min_offset = 0.05, double ratio = 1.5);

std::string_view to_string(Model m);
std::string_view to_string(Scheme s);
Model parse_model(std::string_view s);
Scheme parse_scheme(std::string_view s);
Boundary parse_boundary(std::string_view s);

}  // namespace coldplasma::euler
