#ifndef FPT_JUMP_MEASURE_HPP
#define FPT_JUMP_MEASURE_HPP

#include <complex>
#include <limits>
#include <variant>
#include <vector>

#include "fpt/errors.hpp"

namespace fpt {

// One-sided Levy measures charging (-inf, 0) only.  Each family carries
// closed-form tails and moment integrals; TabulatedTail covers the general
// case via piecewise power-law interpolation of the tail function.

struct NoJumps {};

// nu(dz) = C |z|^{-1-alpha} dz on z < 0, 1 < alpha < 2.
struct StableTail {
    double C;
    double alpha;
};

// nu(dz) = C e^{theta z} |z|^{-1-alpha} dz on z < 0.
struct TemperedStableTail {
    double C;
    double alpha;
    double theta;
};

// nu(dz) = a eta e^{eta z} dz on z < 0 (compound Poisson, intensity a).
struct ExponentialJumps {
    double a;
    double eta;
};

// Tail function nu_bar(x) = nu((-inf,-x]) given at knots, interpolated
// monotone piecewise log-linearly; beyond the last knot the tail decays as
// x^{-tail_index}, below the first knot the first segment's power law is
// continued.  tail_index must exceed 1 (integrable mean beyond -1) and
// differ from 2 (regime classification).
struct TabulatedTail {
    std::vector<double> x;       // strictly increasing, > 0
    std::vector<double> nu_bar;  // positive, strictly decreasing
    double tail_index;
};

using JumpMeasure =
    std::variant<NoJumps, StableTail, TemperedStableTail, ExponentialJumps, TabulatedTail>;

// Validates family parameters; throws InvalidInputError / AdmissibilityError.
void validate(const JumpMeasure& j);

bool has_jumps(const JumpMeasure& j);

// nu((-inf,-x]) for x > 0.
double tail_mass(const JumpMeasure& j, double x);

// int_{(-x,0)} z^2 nu(dz) for x > 0.
double truncated_second_moment(const JumpMeasure& j, double x);

// int_{(-inf,0)} z^2 nu(dz); +inf for StableTail.
double second_moment(const JumpMeasure& j);

// int_{(-inf,-x)} |z| nu(dz) for x > 0 (compensator of jumps beyond -x).
double mean_beyond(const JumpMeasure& j, double x);

// Left edge of the strip where int e^{lambda z} nu(dz) is finite:
// 0 for StableTail/TabulatedTail, -theta, -eta, -inf for NoJumps.
double lambda_minus(const JumpMeasure& j);

// int (e^{xi z} - 1 - xi z) nu(dz).  Finite for Re xi > lambda_minus and on
// the imaginary axis.
std::complex<double> jump_psi(const JumpMeasure& j, std::complex<double> xi);

// int (e^{lambda z} - 1) z nu(dz), lambda real in the strip.
double jump_psi_prime(const JumpMeasure& j, double lambda);

// int z^2 e^{lambda z} nu(dz); may be +inf (StableTail at lambda = 0).
double jump_psi_dprime(const JumpMeasure& j, double lambda);

// Esscher tilt nu*(dz) = e^{lambda_star z} nu(dz) expressed in the catalog,
// lambda_star in (lambda_minus, 0).  Throws HypothesisError when the tilt
// leaves the catalog (StableTail/TabulatedTail have lambda_minus = 0).
JumpMeasure tilt(const JumpMeasure& j, double lambda_star);

} // namespace fpt

#endif
