#include "fpt/levy_model.hpp"

#include <algorithm>
#include <cmath>

namespace fpt {

LevyTriplet::LevyTriplet(double sigma, double m, JumpMeasure jumps)
    : sigma_(sigma), m_(m), jumps_(std::move(jumps)) {
    if (!(sigma_ >= 0.0)) throw InvalidInputError("sigma must be nonnegative");
    if (!std::isfinite(m_)) throw InvalidInputError("drift must be finite");
    validate(jumps_);
    if (sigma_ == 0.0 && !has_jumps(jumps_))
        throw InvalidInputError(
            "degenerate deterministic drift: sigma = 0 with no jumps");
}

namespace {

// Local power of nu_bar near 0, used as the probe exponent for tabulated tails.
double probe_exponent(const JumpMeasure& j) {
    if (const auto* s = std::get_if<StableTail>(&j)) return s->alpha;
    if (const auto* s = std::get_if<TemperedStableTail>(&j)) return s->alpha;
    if (std::holds_alternative<TabulatedTail>(j)) {
        const double t0 = tail_mass(j, 1e-7);
        const double t1 = tail_mass(j, 1e-6);
        const double p = std::log(t0 / t1) / std::log(10.0);
        return std::clamp(p, 0.1, 1.999);
    }
    return 1.0;  // probe is decisive only through its decay here
}

} // namespace

ModelDiagnostics diagnose(const LevyTriplet& t) {
    ModelDiagnostics d;
    const JumpMeasure& j = t.jumps();
    d.lambda_minus = lambda_minus(j);
    d.drift_positive = t.m() > 0.0;

    if (const auto* s = std::get_if<StableTail>(&j)) {
        d.regime = Regime::stable;
        d.alpha = s->alpha;
    } else if (const auto* tab = std::get_if<TabulatedTail>(&j);
               tab && tab->tail_index < 2.0) {
        d.regime = Regime::stable;
        d.alpha = tab->tail_index;
    } else {
        d.regime = Regime::gaussian;
        d.c_squared = t.sigma() * t.sigma() + second_moment(j);
    }

    d.probe_s = probe_exponent(j);
    for (int k = 1; k <= 6; ++k) {
        const double x = std::pow(10.0, -k);
        d.condition2_probe.emplace_back(
            x, std::pow(x, d.probe_s - 2.0) * truncated_second_moment(j, x));
    }

    if (t.sigma() > 0.0) {
        d.density_conditions_ok = true;
    } else {
        // sigma = 0: the liminf probe must stay bounded below
        double lo = d.condition2_probe.front().second;
        for (const auto& [x, v] : d.condition2_probe) lo = std::min(lo, v);
        d.density_conditions_ok = lo > 1e-6 * d.condition2_probe.front().second &&
                                  d.condition2_probe.front().second > 0.0;
    }
    return d;
}

} // namespace fpt
