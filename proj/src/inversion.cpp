#include "fpt/inversion.hpp"

#include <algorithm>
#include <cmath>

#include "fpt/quad.hpp"

namespace fpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxCutoff = 1e12;
} // namespace

double saddle_shift(const Cumulant& cum, double t, double b) {
    auto h = [&](double lam) { return t * cum.derivatives(lam).psi_prime - b; };
    const double lm = cum.lambda_minus();
    const double h0 = t * cum.triplet().m() - b;
    if (h0 == 0.0) return 0.0;
    double lo, hi;
    if (h0 < 0.0) {
        // saddle on the positive half-line
        lo = 0.0;
        hi = 1.0;
        int guard = 0;
        while (h(hi) < 0.0) {
            hi *= 2.0;
            if (hi > 1e8 || ++guard > 60) return hi;  // Psi' bounded above: clamp
        }
    } else {
        if (lm == 0.0) return 0.0;  // polynomial tail: contour stays on [0, inf)
        lo = std::isfinite(lm) ? 0.75 * lm : -1.0;
        if (!std::isfinite(lm)) {
            int guard = 0;
            while (h(lo) > 0.0) {
                lo *= 2.0;
                if (lo < -1e8 || ++guard > 60) return lo;
            }
        } else if (h(lo) > 0.0) {
            return lo;  // saddle beyond the safe part of the strip: clamp
        }
        hi = 0.0;
    }
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-12 * (1.0 + std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

double choose_truncation(const Cumulant& cum, double t, const QuadratureSpec& spec,
                         double shift) {
    if (!(t > 0.0)) throw DomainError("time must be positive");
    const double psi0 = cum.psi_real(shift);
    const double log_decay = std::log(spec.truncation_decay);
    auto decayed = [&](double lam) {
        return t * (cum.psi_shifted(shift, lam).real() - psi0) <= log_decay;
    };
    double hi = 1.0;
    while (!decayed(hi)) {
        hi *= 2.0;
        if (hi > kMaxCutoff) {
            if (cum.triplet().sigma() == 0.0 &&
                std::holds_alternative<ExponentialJumps>(cum.triplet().jumps()))
                throw NoDensityError(
                    "compound Poisson with sigma = 0: characteristic function "
                    "does not vanish at infinity");
            throw ConvergenceError("characteristic function decays too slowly");
        }
    }
    double lo = hi * 0.5;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (decayed(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

DensityPoint transition_density(const Cumulant& cum, const ModelDiagnostics& diag,
                                double t, double b, const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("time must be positive");
    if (!std::isfinite(b)) throw DomainError("level must be finite");
    if (!diag.density_conditions_ok)
        throw NoDensityError("marginal law of X_t has no density for this model");

    const double shift = saddle_shift(cum, t, b);
    const double psi_at_shift = cum.psi_real(shift);
    const double exponent0 = t * psi_at_shift - b * shift;
    if (exponent0 < -700.0) return {0.0, 1e-300, false};

    const double cutoff = choose_truncation(cum, t, spec, shift);

    // phase rate bound from finite differences of Im Psi along the contour
    double rate = std::abs(b);
    {
        const int n = 32;
        double prev = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double lam = cutoff * k / n;
            const double im = cum.psi_shifted(shift, lam).imag();
            rate = std::max(rate, std::abs(t * (im - prev) / (cutoff / n) - b));
            prev = im;
        }
    }
    double cap = M_PI / (2.0 * std::max(rate, 1e-30));
    cap = std::min(cap, cutoff / 8.0);

    auto f = [&](double lam) {
        const std::complex<double> w =
            t * cum.psi_shifted(shift, lam) -
            b * std::complex<double>(shift, lam);
        return std::exp(w.real()) * std::cos(w.imag()) / M_PI;
    };
    QuadResult q =
        integrate_adaptive(f, 0.0, cutoff, spec.abs_tol, spec.rel_tol,
                           spec.max_panels, cap);
    double err = q.error +
                 spec.truncation_decay * std::exp(exponent0) * std::max(cutoff, 1.0);
    if (!q.converged &&
        q.error > 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(q.value)))
        throw ConvergenceError("transition density quadrature: panel budget exhausted");

    DensityPoint out{q.value, err, false};
    if (out.value < 0.0) {
        out.clamped = true;
        out.value = 0.0;
    }
    return out;
}

} // namespace fpt
