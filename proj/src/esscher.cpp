#include "fpt/esscher.hpp"

#include <cmath>

#include "fpt/fpt_engine.hpp"

namespace fpt {

EsscherSolution find_lambda_star(const Cumulant& cum) {
    const double lm = cum.lambda_minus();
    if (!(lm < 0.0))
        throw HypothesisError(
            "exponential moments absent below 0 (lambda_minus = 0): "
            "Esscher transform unavailable");
    const double m = cum.triplet().m();
    if (!(m > 0.0)) throw HypothesisError("Esscher transform requires m > 0");

    // left probe: just inside the strip when finite, far left otherwise
    const double left = std::isfinite(lm) ? lm * (1.0 - 1e-9) : -1e6;
    const double dp_left = cum.derivatives(left).psi_prime;
    if (!(dp_left < 0.0))
        throw HypothesisError("Psi'(lambda_minus) >= 0: no interior minimizer");

    double lo = left, hi = 0.0;  // Psi'(lo) < 0 < Psi'(hi) = m
    double lam = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const PsiDerivatives d = cum.derivatives(lam);
        if (std::abs(d.psi_prime) < 1e-13 * std::max(1.0, m)) break;
        if (d.psi_prime < 0.0) lo = lam; else hi = lam;
        double next = lam;
        if (d.psi_double_prime > 0.0) next = lam - d.psi_prime / d.psi_double_prime;
        lam = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    }

    const PsiDerivatives d = cum.derivatives(lam);
    LevyTriplet tilted(cum.triplet().sigma(), 0.0, tilt(cum.triplet().jumps(), lam));
    return EsscherSolution{lam, d.psi, d.psi_double_prime, std::move(tilted)};
}

TiltPair tilt_density_relation(const FptModel& model, const EsscherSolution& sol,
                               double t, const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("time must be positive");
    TiltPair out;
    out.lhs = fpt_density(model, t, spec);
    FptModel tilted(sol.tilted, model.barrier());
    DensityPoint q = fpt_density(tilted, t, spec);
    const double factor =
        std::exp(-sol.lambda_star * model.barrier() + sol.psi_at_star * t);
    out.rhs = {q.value * factor, q.error * factor, q.clamped};
    return out;
}

} // namespace fpt
