#ifndef FPT_FPT_ENGINE_HPP
#define FPT_FPT_ENGINE_HPP

#include <functional>
#include <optional>
#include <string>

#include "fpt/inversion.hpp"

namespace fpt {

struct EsscherSolution;  // esscher.hpp

// A barrier problem: tau_b = inf{ t > 0 : X_t > b }, b > 0.
class FptModel {
public:
    FptModel(LevyTriplet triplet, double b);

    const LevyTriplet& triplet() const { return cum_.triplet(); }
    const Cumulant& cumulant() const { return cum_; }
    const ModelDiagnostics& diagnostics() const { return diag_; }
    double barrier() const { return b_; }

private:
    Cumulant cum_;
    ModelDiagnostics diag_;
    double b_;
};

// First-passage density p_b(t) = (b/t) p(t,b).
DensityPoint fpt_density(const FptModel& model, double t, const QuadratureSpec& spec);

// P(tau_b <= t), by adaptive integration of fpt_density; clamped to [0,1].
double fpt_cdf(const FptModel& model, double t, const QuadratureSpec& spec);

// Space scaling g with 1/nu_bar(g(x)) = x (stable regime only).
double scaling_g(const FptModel& model, double x);

// K_alpha = sin(pi/alpha)/pi * Gamma(1+1/alpha) * ((alpha-1)/Gamma(2-alpha))^{1/alpha}.
double stable_constant(double alpha);

// Independent oracle for stable_constant: numeric integral of the limiting
// characteristic function phi_alpha over the line; equals 2*pi*K_alpha.
double lemma44_integral(double alpha);

enum class AsymptoteKind { stable, gaussian, esscher };

struct AsymptoteReport {
    AsymptoteKind kind;
    double constant;        // multiplicative prefactor
    double power;           // t-exponent of the algebraic factor
    double exp_rate;        // exponential rate (<= 0)
    bool hypotheses_verified = true;
    std::string note;
    // auxiliaries, populated per regime
    double alpha = 0.0;
    double c_squared = 0.0;
    double lambda_star = 0.0;
    double psi_at_star = 0.0;
    double d_squared = 0.0;
    std::function<double(double)> eval_fn;

    double eval(double t) const { return eval_fn(t); }
};

// The tail asymptote matching the model's regime: stable regime
// b K_alpha / (t g(t)); gaussian regime with m = 0: b/sqrt(2 pi c^2) t^{-3/2};
// gaussian regime with m > 0: tilted t^{-3/2} e^{-lambda_* b + Psi(lambda_*) t}.
AsymptoteReport asymptote(const FptModel& model);

// E[e^{-mu tau_b} ; tau_b >= t] tail asymptote (tilted regime hypotheses).
AsymptoteReport tail_expectation_asymptote(const FptModel& model, double mu);

} // namespace fpt

#endif
