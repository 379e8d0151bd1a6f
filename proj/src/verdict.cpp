#include "coldplasma/verdict.hpp"

namespace coldplasma {

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::smooth: return "smooth";
        case VerdictKind::breaks: return "breaks";
        case VerdictKind::breaks_within_period: return "breaks_within_period";
        case VerdictKind::smooth_through_period: return "smooth_through_period";
        case VerdictKind::no_crossing_within_horizon: return "no_crossing_within_horizon";
        case VerdictKind::crossing_guaranteed: return "crossing_guaranteed";
        case VerdictKind::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

bool predicts_breaking(VerdictKind kind) {
    return kind == VerdictKind::breaks || kind == VerdictKind::breaks_within_period ||
           kind == VerdictKind::crossing_guaranteed;
}

std::optional<double> Verdict::evidence_value(std::string_view key) const {
    for (const auto& [k, v] : evidence)
        if (k == key) return v;
    return std::nullopt;
}

}  // namespace coldplasma
