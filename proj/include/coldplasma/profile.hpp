#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace coldplasma::profile {

// Initial data (P0, E0) and their rho-derivatives at one point. In the nonrelativistic
// model P holds the velocity V.
struct Sample {
    double P = 0.0;
    double E = 0.0;
    double dP = 0.0;
    double dE = 0.0;
};

class InitialProfile {
public:
    virtual ~InitialProfile() = default;
    virtual Sample at(double rho) const = 0;
    virtual std::string name() const = 0;
    virtual std::map<std::string, double> parameters() const = 0;
    // True when derivatives come from closed forms rather than differences.
    virtual bool analytic_derivatives() const { return true; }
    // Natural sampling extent, used when the caller does not give one.
    virtual std::pair<double, double> default_range() const = 0;
};

// E0 = (a/r)^2 rho exp(-2 rho^2 / r^2), P0 = 0.
class GaussianProfile final : public InitialProfile {
public:
    GaussianProfile(double a_star, double rho_star);
    Sample at(double rho) const override;
    std::string name() const override { return "gaussian"; }
    std::map<std::string, double> parameters() const override;
    std::pair<double, double> default_range() const override;
    double E_max() const;

private:
    double a_, r_;
};

// E0 = A sin(k rho), P0 = 0.
class SineProfile final : public InitialProfile {
public:
    SineProfile(double amplitude, double wavenumber);
    Sample at(double rho) const override;
    std::string name() const override { return "sine"; }
    std::map<std::string, double> parameters() const override;
    std::pair<double, double> default_range() const override;

private:
    double A_, k_;
};

// E0 = alpha rho, P0 = beta rho.
class LinearProfile final : public InitialProfile {
public:
    LinearProfile(double alpha, double beta);
    Sample at(double rho) const override;
    std::string name() const override { return "linear"; }
    std::map<std::string, double> parameters() const override;
    std::pair<double, double> default_range() const override { return {-1.0, 1.0}; }

private:
    double alpha_, beta_;
};

// Uniformly spaced samples of (rho, P, E); derivatives by fourth-order differences and
// cubic Hermite interpolation between rows.
class TableProfile final : public InitialProfile {
public:
    TableProfile(std::vector<double> rho, std::vector<double> P, std::vector<double> E);
    static TableProfile load_csv(const std::string& path);

    Sample at(double rho) const override;
    std::string name() const override { return "table"; }
    std::map<std::string, double> parameters() const override;
    bool analytic_derivatives() const override { return false; }
    std::pair<double, double> default_range() const override;
    const std::vector<double>& nodes() const noexcept { return rho_; }

private:
    std::vector<double> rho_, P_, E_, dP_, dE_;
    double h_ = 0.0;
};

// Fourth-order first derivative on a uniform grid, one-sided near the ends.
std::vector<double> derivative_uniform(const std::vector<double>& f, double h);

// Build a profile from a family name and key=value parameters.
std::unique_ptr<InitialProfile> make_profile(const std::string& family,
                                             const std::map<std::string, std::string>& params);

}  // namespace coldplasma::profile
