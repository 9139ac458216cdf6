#ifndef FPT_CUMULANT_HPP
#define FPT_CUMULANT_HPP

#include <complex>

#include "fpt/levy_model.hpp"

namespace fpt {

struct PsiDerivatives {
    double psi;
    double psi_prime;
    double psi_double_prime;
};

// The cumulant exponent Psi on its strip { Re xi > lambda_minus } together
// with the imaginary axis, plus the inverse of Psi on [0, inf) for m >= 0.
class Cumulant {
public:
    explicit Cumulant(LevyTriplet triplet);

    const LevyTriplet& triplet() const { return triplet_; }
    double lambda_minus() const { return lambda_minus_; }

    std::complex<double> psi(std::complex<double> xi) const;
    double psi_real(double lambda) const;

    // Psi(shift + i lambda); shift must lie in the closed right part of the
    // strip (shift > lambda_minus, or shift == 0 for the axis itself).
    std::complex<double> psi_shifted(double shift, double lambda) const;

    PsiDerivatives derivatives(double lambda) const;

    // Unique lambda >= 0 with Psi(lambda) = r; requires m >= 0, r >= 0.
    double psi_inverse(double r) const;

private:
    LevyTriplet triplet_;
    double lambda_minus_;
};

} // namespace fpt

#endif
