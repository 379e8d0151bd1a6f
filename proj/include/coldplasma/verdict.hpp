#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coldplasma {

enum class VerdictKind {
    smooth,
    breaks,
    breaks_within_period,
    smooth_through_period,
    no_crossing_within_horizon,
    crossing_guaranteed,
    indeterminate,
};

std::string_view to_string(VerdictKind kind);

// True for verdicts asserting that a singularity forms (now or eventually).
bool predicts_breaking(VerdictKind kind);

struct Verdict {
    std::string criterion;
    VerdictKind kind = VerdictKind::indeterminate;
    std::optional<double> theta_star;
    std::vector<std::pair<std::string, double>> evidence;

    Verdict& with(std::string key, double value) {
        evidence.emplace_back(std::move(key), value);
        return *this;
    }
    std::optional<double> evidence_value(std::string_view key) const;
};

}  // namespace coldplasma
