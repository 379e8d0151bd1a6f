#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace coldplasma::cli {

struct RunConfig {
    std::string command;  // classify | char | hill | wave | simulate
    std::string model = "rel";

    std::string profile = "gaussian";
    std::map<std::string, std::string> profile_params;

    // Point data for char / hill / wave; unset values come from the profile at rho0.
    std::optional<double> rho0;
    std::optional<double> P0, E0, p0, e0;
    std::optional<double> I2;
    std::optional<double> w;

    double rho_min = 0.0;
    double rho_max = 0.0;
    std::size_t samples = 201;
    double theta_max = 0.0;  // 0 selects a per-command default
    double horizon_periods = 100.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double output_interval = 0.01;

    int periods = 2;
    int samples_per_period = 256;

    std::string scheme = "jet";
    std::string boundary = "equilibrium";
    std::size_t grid = 4000;
    double half_width = 0.0;
    double cfl = 0.5;
    double record_interval = 0.02;
    double N_threshold = 1e3;
    double snapshot_interval = 0.0;

    bool parallel = true;

    std::string out = "-";  // primary CSV; "-" is stdout
    std::string summary;    // JSON summary path; empty disables it
    std::string snapshots;  // simulate only
};

// Set one field by its config-file key. Unknown keys and malformed values throw
// std::invalid_argument.
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);
void apply_json_file(RunConfig& cfg, const std::string& path);

// Field checks shared by flags and config files (positive tolerances, grid >= 16, ...).
void validate(const RunConfig& cfg);

// Run the configured command. Returns 0 when completed, 2 when breaking was detected.
// Errors throw; `run_main` turns them into exit status 1.
int dispatch(const RunConfig& cfg, std::ostream& log);

// Flag parsing with CLI11, followed by dispatch.
int run_main(int argc, char** argv);

// Shortest round-trip decimal text for a double, so CSV output is reproducible.
std::string format_number(double v);

}  // namespace coldplasma::cli
