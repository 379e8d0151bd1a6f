#include "coldplasma/classify.hpp"

#include <algorithm>
#include <cmath>

#include "coldplasma/hill.hpp"
#include "coldplasma/nonrel.hpp"
#include "coldplasma/rel.hpp"

namespace coldplasma::classify {

Verdict classify_rel_sample(const profile::Sample& s, double horizon_periods,
                            std::optional<Verdict>* theorem3) {
    if (theorem3) *theorem3 = rel::criterion_theorem3(s.P, s.E, s.dP, s.dE);
    const hill::PeriodicCoefficient K = hill::build_K(s.P, s.E);
    const auto problem =
        hill::HillProblem::from_derivatives(K, s.dP, s.dE, horizon_periods * K.period());
    return hill::classify_theorem4(problem);
}

VerdictKind aggregate(const std::vector<SampleVerdict>& samples) {
    bool all_smooth = !samples.empty();
    for (const auto& s : samples) {
        if (predicts_breaking(s.verdict.kind)) return VerdictKind::breaks;
        if (s.verdict.kind != VerdictKind::smooth) all_smooth = false;
    }
    return all_smooth ? VerdictKind::smooth : VerdictKind::indeterminate;
}

SweepResult classify_profile(const profile::InitialProfile& prof, euler::Model model,
                             const SweepOptions& opts) {
    if (opts.samples < 2) throw std::invalid_argument("classification needs at least two samples");
    double lo = opts.rho_min, hi = opts.rho_max;
    if (lo == hi) std::tie(lo, hi) = prof.default_range();
    if (!(hi > lo)) throw std::invalid_argument("empty sampling range");

    SweepResult out;
    out.samples.resize(opts.samples);
    for (std::size_t i = 0; i < opts.samples; ++i) {
        const double rho = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(opts.samples - 1);
        out.samples[i].rho = rho;
        out.samples[i].data = prof.at(rho);
    }

    if (model == euler::Model::nonrel) {
        out.route = "theorem1";
    } else {
        double cmin = std::numeric_limits<double>::infinity(), cmax = -cmin;
        for (const auto& s : out.samples) {
            const double c = rel::first_integral_C1(s.data.P, s.data.E);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        out.C1_spread = cmax - cmin;
        out.route = out.C1_spread < opts.constancy_tol * (1.0 + cmax) ? "theorem2" : "theorem4";
    }

    const long n = static_cast<long>(out.samples.size());
    auto work = [&](long i) {
        SampleVerdict& sv = out.samples[static_cast<std::size_t>(i)];
        const auto& d = sv.data;
        if (out.route == "theorem1") {
            sv.verdict = nonrel::criterion_theorem1(d.dP, d.dE);
        } else if (out.route == "theorem2") {
            sv.verdict = rel::criterion_theorem2(d.P, d.E, d.dP);
        } else {
            sv.verdict = classify_rel_sample(d, opts.horizon_periods, &sv.secondary);
        }
    };
    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < n; ++i) work(i);
    } else {
        for (long i = 0; i < n; ++i) work(i);
    }

    out.global = aggregate(out.samples);
    for (const auto& s : out.samples) {
        if (s.verdict.theta_star && predicts_breaking(s.verdict.kind) &&
            (!out.earliest_theta_star || *s.verdict.theta_star < *out.earliest_theta_star)) {
            out.earliest_theta_star = s.verdict.theta_star;
            out.earliest_rho = s.rho;
        }
    }
    return out;
}

}  // namespace coldplasma::classify
