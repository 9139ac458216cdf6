#ifndef FPT_PRICING_HPP
#define FPT_PRICING_HPP

#include "fpt/esscher.hpp"
#include "fpt/fpt_engine.hpp"

namespace fpt {

// Unit-recovery-claim market: constant rate r, debt principal K in (0,1),
// maturity T; the default barrier is b = -log K.
struct MarketSpec {
    double r;
    double K;
    double T;

    double barrier() const;
};

// Martingale drift m = -r + sigma^2/2 + int (e^{-z} - 1 + z) nu(dz); requires
// lambda_minus < -1 so the integral converges.
double risk_neutral_drift(double r, double sigma, const JumpMeasure& jumps);

// U_T = E[e^{-r tau_b} ; tau_b <= T]; the model's drift must be the
// martingale drift for this r (checked via Psi(-1) = r).
double urc_value(const FptModel& model, double r, double T, const QuadratureSpec& spec);

// E[e^{-r tau_b}] = e^{-b Psi^{-1}(r)}.
double laplace_fpt(const FptModel& model, double r);

// Long-maturity gap e^{-b Psi^{-1}(r)} - U_T ~ eval(T).
AsymptoteReport urc_gap_asymptote(const FptModel& model, double r,
                                  const EsscherSolution& sol);

} // namespace fpt

#endif
