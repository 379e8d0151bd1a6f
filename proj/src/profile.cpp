#include "coldplasma/profile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace coldplasma::profile {

GaussianProfile::GaussianProfile(double a_star, double rho_star) : a_(a_star), r_(rho_star) {
    if (!(a_star >= 0.0) || !(rho_star > 0.0))
        throw std::invalid_argument("gaussian profile needs a_star >= 0 and rho_star > 0");
}

Sample GaussianProfile::at(double rho) const {
    const double amp = (a_ / r_) * (a_ / r_);
    const double g = std::exp(-2.0 * rho * rho / (r_ * r_));
    return {0.0, amp * rho * g, 0.0, amp * g * (1.0 - 4.0 * rho * rho / (r_ * r_))};
}

std::map<std::string, double> GaussianProfile::parameters() const {
    return {{"a_star", a_}, {"rho_star", r_}};
}

std::pair<double, double> GaussianProfile::default_range() const {
    return {-4.5 * r_, 4.5 * r_};
}

double GaussianProfile::E_max() const { return a_ * a_ / (r_ * 2.0 * std::sqrt(std::numbers::e)); }

SineProfile::SineProfile(double amplitude, double wavenumber) : A_(amplitude), k_(wavenumber) {
    if (!(wavenumber > 0.0)) throw std::invalid_argument("sine profile needs wavenumber > 0");
}

Sample SineProfile::at(double rho) const {
    return {0.0, A_ * std::sin(k_ * rho), 0.0, A_ * k_ * std::cos(k_ * rho)};
}

std::map<std::string, double> SineProfile::parameters() const {
    return {{"amplitude", A_}, {"wavenumber", k_}};
}

std::pair<double, double> SineProfile::default_range() const {
    return {-std::numbers::pi / k_, std::numbers::pi / k_};
}

LinearProfile::LinearProfile(double alpha, double beta) : alpha_(alpha), beta_(beta) {}

Sample LinearProfile::at(double rho) const {
    return {beta_ * rho, alpha_ * rho, beta_, alpha_};
}

std::map<std::string, double> LinearProfile::parameters() const {
    return {{"alpha", alpha_}, {"beta", beta_}};
}

std::vector<double> derivative_uniform(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("derivative needs at least three points");
    std::vector<double> d(n);
    if (n < 5) {
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
        return d;
    }
    const double c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    const std::size_t m = n - 1;
    d[m - 1] = c * (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]);
    d[m] = c * (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]);
    return d;
}

TableProfile::TableProfile(std::vector<double> rho, std::vector<double> P, std::vector<double> E)
    : rho_(std::move(rho)), P_(std::move(P)), E_(std::move(E)) {
    const std::size_t n = rho_.size();
    if (n < 5 || P_.size() != n || E_.size() != n)
        throw std::invalid_argument("table profile needs at least five complete rows");
    h_ = (rho_.back() - rho_.front()) / static_cast<double>(n - 1);
    if (!(h_ > 0.0)) throw std::invalid_argument("table rho column must increase");
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((rho_[i] - rho_[i - 1]) - h_) > 1e-6 * h_)
            throw std::invalid_argument("table rho column must be uniformly spaced");
    dP_ = derivative_uniform(P_, h_);
    dE_ = derivative_uniform(E_, h_);
}

TableProfile TableProfile::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read table file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty table file: " + path);
    // Header names the columns; rho, P (or V) and E are required.
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            c.erase(std::remove_if(c.begin(), c.end(), [](unsigned char ch) { return std::isspace(ch); }),
                    c.end());
            cols.push_back(c);
        }
    }
    auto find = [&](std::initializer_list<const char*> names) -> std::size_t {
        for (const char* nm : names)
            for (std::size_t i = 0; i < cols.size(); ++i)
                if (cols[i] == nm) return i;
        throw std::runtime_error("table file lacks a required column in " + path);
    };
    const std::size_t ir = find({"rho"}), ip = find({"P", "V"}), ie = find({"E"});
    std::vector<double> rho, P, E;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            try {
                vals.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw std::runtime_error("malformed number in table file: " + path);
            }
        }
        if (vals.size() < cols.size()) throw std::runtime_error("short row in table file: " + path);
        rho.push_back(vals[ir]);
        P.push_back(vals[ip]);
        E.push_back(vals[ie]);
    }
    return TableProfile(std::move(rho), std::move(P), std::move(E));
}

Sample TableProfile::at(double rho) const {
    const std::size_t n = rho_.size();
    if (rho < rho_.front() - 1e-12 * h_ || rho > rho_.back() + 1e-12 * h_)
        throw std::out_of_range("rho outside the table range");
    const double s = std::clamp((rho - rho_.front()) / h_, 0.0, static_cast<double>(n - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(s), n - 2);
    const double t = s - static_cast<double>(i);
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2,
                 h11 = t3 - t2;
    auto value = [&](const std::vector<double>& f, const std::vector<double>& d) {
        return h00 * f[i] + h10 * h_ * d[i] + h01 * f[i + 1] + h11 * h_ * d[i + 1];
    };
    auto lerp = [&](const std::vector<double>& d) { return (1.0 - t) * d[i] + t * d[i + 1]; };
    return {value(P_, dP_), value(E_, dE_), lerp(dP_), lerp(dE_)};
}

std::map<std::string, double> TableProfile::parameters() const {
    return {{"rows", static_cast<double>(rho_.size())}, {"spacing", h_}};
}

std::pair<double, double> TableProfile::default_range() const { return {rho_.front(), rho_.back()}; }

namespace {

double get(const std::map<std::string, std::string>& params, const std::string& key,
           double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("profile parameter '" + key + "' is not a number");
    }
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    std::initializer_list<const char*> allowed, const std::string& family) {
    for (const auto& [k, v] : params) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                    [&](const char* a) { return k == a; });
        if (!ok) throw std::invalid_argument("unknown parameter '" + k + "' for profile " + family);
    }
}

}  // namespace

std::unique_ptr<InitialProfile> make_profile(const std::string& family,
                                             const std::map<std::string, std::string>& params) {
    if (family == "gaussian") {
        reject_unknown(params, {"a_star", "rho_star"}, family);
        return std::make_unique<GaussianProfile>(get(params, "a_star", 2.07),
                                                 get(params, "rho_star", 3.0));
    }
    if (family == "sine") {
        reject_unknown(params, {"amplitude", "wavenumber"}, family);
        return std::make_unique<SineProfile>(get(params, "amplitude", 0.3),
                                             get(params, "wavenumber", 1.0));
    }
    if (family == "linear") {
        reject_unknown(params, {"alpha", "beta"}, family);
        return std::make_unique<LinearProfile>(get(params, "alpha", 0.1), get(params, "beta", 0.0));
    }
    if (family == "table") {
        reject_unknown(params, {"path"}, family);
        const auto it = params.find("path");
        if (it == params.end()) throw std::invalid_argument("table profile needs path=<file>");
        return std::make_unique<TableProfile>(TableProfile::load_csv(it->second));
    }
    throw std::invalid_argument("unknown profile family: " + family);
}

}  // namespace coldplasma::profile
