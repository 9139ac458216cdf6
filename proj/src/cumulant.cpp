#include "fpt/cumulant.hpp"

#include <algorithm>
#include <cmath>

namespace fpt {

Cumulant::Cumulant(LevyTriplet triplet)
    : triplet_(std::move(triplet)), lambda_minus_(fpt::lambda_minus(triplet_.jumps())) {}

std::complex<double> Cumulant::psi(std::complex<double> xi) const {
    if (xi.real() < lambda_minus_ ||
        (xi.real() == lambda_minus_ && xi.real() != 0.0))
        throw DomainError("cumulant argument outside the strip of definition");
    const double s2 = triplet_.sigma() * triplet_.sigma();
    return 0.5 * s2 * xi * xi + triplet_.m() * xi + jump_psi(triplet_.jumps(), xi);
}

double Cumulant::psi_real(double lambda) const { return psi({lambda, 0.0}).real(); }

std::complex<double> Cumulant::psi_shifted(double shift, double lambda) const {
    return psi({shift, lambda});
}

PsiDerivatives Cumulant::derivatives(double lambda) const {
    if (lambda <= lambda_minus_ && !(lambda == 0.0 && lambda_minus_ == 0.0))
        throw DomainError("derivative argument outside the strip of definition");
    const double s2 = triplet_.sigma() * triplet_.sigma();
    PsiDerivatives d{};
    d.psi = psi_real(lambda);
    d.psi_prime = triplet_.m() + s2 * lambda + jump_psi_prime(triplet_.jumps(), lambda);
    d.psi_double_prime = s2 + jump_psi_dprime(triplet_.jumps(), lambda);
    return d;
}

double Cumulant::psi_inverse(double r) const {
    if (triplet_.m() < 0.0)
        throw UnsupportedError("psi_inverse requires nonnegative drift");
    if (r < 0.0) throw DomainError("psi_inverse argument must be nonnegative");
    if (r == 0.0) return 0.0;
    // bracket by doubling; Psi is strictly increasing on [0, inf) when m >= 0
    double hi = 1.0;
    int guard = 0;
    while (psi_real(hi) < r) {
        hi *= 2.0;
        if (++guard > 200) throw ConvergenceError("psi_inverse: bracketing failed");
    }
    double lo = 0.0;
    double lam = 0.5 * hi;
    for (int it = 0; it < 200; ++it) {
        const double f = psi_real(lam) - r;
        if (std::abs(f) < 1e-12 * std::max(1.0, std::abs(r)) ||
            hi - lo < 1e-14 * std::max(1.0, lam))
            return lam;
        if (f > 0.0) hi = lam; else lo = lam;
        // safeguarded Newton step
        double next = lam;
        const double fp = derivatives(lam).psi_prime;
        if (fp > 0.0) next = lam - f / fp;
        lam = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    }
    throw ConvergenceError("psi_inverse: tolerance not reached in 200 iterations");
}

} // namespace fpt
