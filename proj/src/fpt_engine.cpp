#include "fpt/fpt_engine.hpp"

#include <algorithm>
#include <cmath>

#include "fpt/esscher.hpp"
#include "fpt/quad.hpp"

namespace fpt {

namespace {

double scaling_g_jumps(const JumpMeasure& jumps, double x) {
    if (!(x > 0.0)) throw DomainError("scaling argument must be positive");
    if (const auto* s = std::get_if<StableTail>(&jumps))
        return std::pow(s->C * x / s->alpha, 1.0 / s->alpha);
    // tabulated tail: monotone bisection of nu_bar(g) = 1/x in log space
    double lo = 1e-12, hi = 1e12;
    const double target = 1.0 / x;
    if (tail_mass(jumps, lo) < target || tail_mass(jumps, hi) > target)
        throw ConvergenceError("scaling function out of bracket range");
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (tail_mass(jumps, mid) > target) lo = mid; else hi = mid;
        if (hi / lo < 1.0 + 1e-14) break;
    }
    return std::sqrt(lo * hi);
}

} // namespace

FptModel::FptModel(LevyTriplet triplet, double b)
    : cum_(std::move(triplet)), diag_(diagnose(cum_.triplet())), b_(b) {
    if (!(b_ > 0.0)) throw DomainError("barrier must be positive");
    if (!diag_.density_conditions_ok)
        throw NoDensityError(
            "first-passage density requires the small-jump density conditions");
}

DensityPoint fpt_density(const FptModel& model, double t, const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("time must be positive");
    DensityPoint p = transition_density(model.cumulant(), model.diagnostics(), t,
                                        model.barrier(), spec);
    const double s = model.barrier() / t;
    return {p.value * s, p.error * s, p.clamped};
}

double fpt_cdf(const FptModel& model, double t, const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("time must be positive");
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol, 1e-9);
    auto f = [&](double s) { return fpt_density(model, s, inner).value; };
    QuadResult q = integrate_adaptive(f, 0.0, t, 1e-9, 1e-7, 400, t / 8.0);
    return std::clamp(q.value, 0.0, 1.0);
}

double scaling_g(const FptModel& model, double x) {
    if (model.diagnostics().regime != Regime::stable)
        throw HypothesisError("scaling function defined in the stable regime only");
    return scaling_g_jumps(model.triplet().jumps(), x);
}

double stable_constant(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw DomainError("stable constant defined for alpha in (1,2)");
    return std::sin(M_PI / alpha) / M_PI * std::tgamma(1.0 + 1.0 / alpha) *
           std::pow((alpha - 1.0) / std::tgamma(2.0 - alpha), 1.0 / alpha);
}

double lemma44_integral(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw DomainError("lemma-4.4 integral defined for alpha in (1,2)");
    const double c_alpha =
        std::tgamma(2.0 - alpha) / (1.0 - alpha) * std::cos(M_PI * alpha / 2.0);
    const double slope = std::tan(M_PI * alpha / 2.0);
    const double cutoff = std::pow(44.0 / c_alpha, 1.0 / alpha);
    auto f = [&](double lam) {
        const double u = c_alpha * std::pow(lam, alpha);
        return 2.0 * std::exp(-u) * std::cos(slope * u);
    };
    QuadResult q =
        integrate_adaptive(f, 0.0, cutoff, 1e-13, 1e-11, 20000, cutoff / 64.0);
    if (!q.converged && q.error > 1e-9)
        throw ConvergenceError("lemma-4.4 quadrature did not converge");
    return q.value;
}

AsymptoteReport asymptote(const FptModel& model) {
    const auto& diag = model.diagnostics();
    const double b = model.barrier();
    AsymptoteReport rep{};
    if (diag.regime == Regime::stable) {
        const double alpha = diag.alpha;
        const double K = stable_constant(alpha);
        rep.kind = AsymptoteKind::stable;
        rep.alpha = alpha;
        rep.constant = b * K;
        rep.power = -(1.0 + 1.0 / alpha);
        rep.exp_rate = 0.0;
        if (std::holds_alternative<TabulatedTail>(model.triplet().jumps())) {
            rep.hypotheses_verified = false;
            rep.note = "tabulated tail: condition (2) exponent not analytically verified";
        }
        const JumpMeasure jumps = model.triplet().jumps();
        rep.eval_fn = [b, K, jumps](double t) {
            return b * K / (t * scaling_g_jumps(jumps, t));
        };
        return rep;
    }
    const double m = model.triplet().m();
    if (m == 0.0) {
        const double c2 = *diag.c_squared;
        rep.kind = AsymptoteKind::gaussian;
        rep.c_squared = c2;
        rep.constant = b / std::sqrt(2.0 * M_PI * c2);
        rep.power = -1.5;
        rep.exp_rate = 0.0;
        const double c = rep.constant;
        rep.eval_fn = [c](double t) { return c * std::pow(t, -1.5); };
        return rep;
    }
    if (m < 0.0)
        throw HypothesisError("tail asymptote requires m = 0 or m > 0");
    const EsscherSolution sol = find_lambda_star(model.cumulant());
    rep.kind = AsymptoteKind::esscher;
    rep.lambda_star = sol.lambda_star;
    rep.psi_at_star = sol.psi_at_star;
    rep.d_squared = sol.d_squared;
    rep.constant =
        b * std::exp(-sol.lambda_star * b) / std::sqrt(2.0 * M_PI * sol.d_squared);
    rep.power = -1.5;
    rep.exp_rate = sol.psi_at_star;
    const double c = rep.constant, rate = rep.exp_rate;
    rep.eval_fn = [c, rate](double t) {
        return c * std::pow(t, -1.5) * std::exp(rate * t);
    };
    return rep;
}

AsymptoteReport tail_expectation_asymptote(const FptModel& model, double mu) {
    if (!(mu > 0.0)) throw DomainError("discount rate mu must be positive");
    const EsscherSolution sol = find_lambda_star(model.cumulant());
    const double b = model.barrier();
    AsymptoteReport rep{};
    rep.kind = AsymptoteKind::esscher;
    rep.lambda_star = sol.lambda_star;
    rep.psi_at_star = sol.psi_at_star;
    rep.d_squared = sol.d_squared;
    rep.constant = b * std::exp(-sol.lambda_star * b) /
                   ((mu - sol.psi_at_star) * std::sqrt(2.0 * M_PI * sol.d_squared));
    rep.power = -1.5;
    rep.exp_rate = -mu + sol.psi_at_star;
    const double c = rep.constant, rate = rep.exp_rate;
    rep.eval_fn = [c, rate](double t) {
        return c * std::pow(t, -1.5) * std::exp(rate * t);
    };
    return rep;
}

} // namespace fpt
