#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coldplasma/euler_field.hpp"
#include "coldplasma/profile.hpp"
#include "coldplasma/verdict.hpp"

namespace coldplasma::classify {

struct SweepOptions {
    double rho_min = 0.0;
    double rho_max = 0.0;  // rho_min == rho_max selects the profile's default range
    std::size_t samples = 201;
    double horizon_periods = 100.0;
    double constancy_tol = 1e-10;  // relative spread of C1 that counts as constant
    bool parallel = true;
};

struct SampleVerdict {
    double rho = 0.0;
    profile::Sample data;
    Verdict verdict;
    std::optional<Verdict> secondary;  // Theorem 3 alongside Theorem 4 in the general case
};

struct SweepResult {
    std::string route;  // theorem1 | theorem2 | theorem4
    std::vector<SampleVerdict> samples;
    VerdictKind global = VerdictKind::indeterminate;
    std::optional<double> earliest_theta_star;
    std::optional<double> earliest_rho;
    double C1_spread = 0.0;
};

// Per-sample Theorem 1 (nonrel) or the Theorem 2 / 3+4 router (rel), then a global
// verdict over the finite sample set.
SweepResult classify_profile(const profile::InitialProfile& prof, euler::Model model,
                             const SweepOptions& opts = {});

Verdict classify_rel_sample(const profile::Sample& s, double horizon_periods,
                            std::optional<Verdict>* theorem3 = nullptr);

VerdictKind aggregate(const std::vector<SampleVerdict>& samples);

}  // namespace coldplasma::classify
