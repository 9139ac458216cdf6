#ifndef FPT_INVERSION_HPP
#define FPT_INVERSION_HPP

#include "fpt/cumulant.hpp"
#include "fpt/levy_model.hpp"

#include <vector>

namespace fpt {

struct QuadratureSpec {
    double abs_tol = 1e-12;          // target absolute error on p(t,b)
    double rel_tol = 1e-11;          // relative refinement floor
    int max_panels = 4000;
    double truncation_decay = 1e-16; // integrand magnitude at the cutoff
};

struct DensityPoint {
    double value = 0.0;
    double error = 0.0;
    bool clamped = false;  // negative quadrature noise clamped to zero
};

struct DensityCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> error_estimates;
    double level = 0.0;
};

// Cutoff L with |e^{t(Psi(shift+iL) - Psi(shift))}| <= truncation_decay.
double choose_truncation(const Cumulant& cum, double t, const QuadratureSpec& spec,
                         double shift = 0.0);

// Marginal density p(t,b) of X_t by Fourier inversion along the contour
// Re xi = shift, where shift is the saddle t Psi'(shift) = b (clamped to the
// strip).  The shift removes the oscillatory cancellation of the plain
// imaginary-axis integral, so the result carries full relative accuracy.
DensityPoint transition_density(const Cumulant& cum, const ModelDiagnostics& diag,
                                double t, double b, const QuadratureSpec& spec);

// Saddle point used by transition_density (exposed for tests).
double saddle_shift(const Cumulant& cum, double t, double b);

} // namespace fpt

#endif
