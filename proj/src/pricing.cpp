#include "fpt/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "fpt/quad.hpp"

namespace fpt {

double MarketSpec::barrier() const {
    if (!(K > 0.0 && K < 1.0)) throw InvalidInputError("debt principal K must lie in (0,1)");
    return -std::log(K);
}

double risk_neutral_drift(double r, double sigma, const JumpMeasure& jumps) {
    if (!(r > 0.0)) throw InvalidInputError("interest rate must be positive");
    if (!(lambda_minus(jumps) < -1.0))
        throw HypothesisError(
            "martingale drift needs int e^{-z} nu(dz) finite (lambda_minus < -1)");
    // int (e^{-z} - 1 + z) nu(dz) is the jump cumulant at xi = -1
    const double jump_term = jump_psi(jumps, {-1.0, 0.0}).real();
    return -r + 0.5 * sigma * sigma + jump_term;
}

double urc_value(const FptModel& model, double r, double T, const QuadratureSpec& spec) {
    if (!(T > 0.0)) throw DomainError("maturity must be positive");
    if (!(r > 0.0)) throw InvalidInputError("interest rate must be positive");
    // drift consistency: the calibrated triplet satisfies Psi(-1) = r
    const double psi_m1 = model.cumulant().psi_real(-1.0);
    if (std::abs(psi_m1 - r) > 1e-8 * std::max(1.0, r))
        throw ConfigError("model drift is not the martingale drift for this rate");
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol, 1e-9);
    auto f = [&](double s) {
        return std::exp(-r * s) * fpt_density(model, s, inner).value;
    };
    QuadResult q = integrate_adaptive(f, 0.0, T, 1e-10, 1e-7, 600, T / 8.0);
    return std::clamp(q.value, 0.0, 1.0);
}

double laplace_fpt(const FptModel& model, double r) {
    if (r < 0.0) throw DomainError("rate must be nonnegative");
    return std::exp(-model.barrier() * model.cumulant().psi_inverse(r));
}

AsymptoteReport urc_gap_asymptote(const FptModel& model, double r,
                                  const EsscherSolution& sol) {
    if (!(r > 0.0)) throw InvalidInputError("interest rate must be positive");
    // r - Psi(lambda_*) > 0 always (Psi(lambda_*) < 0 < r)
    return tail_expectation_asymptote(model, r);
}

} // namespace fpt
