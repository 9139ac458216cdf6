#ifndef FPT_ESSCHER_HPP
#define FPT_ESSCHER_HPP

#include "fpt/cumulant.hpp"
#include "fpt/inversion.hpp"

namespace fpt {

class FptModel;

// Exponential change of measure at the minimizer of Psi.  The tilted triplet
// has zero drift, the same sigma, and jump measure e^{lambda_* z} nu(dz)
// expressed inside the catalog.
struct EsscherSolution {
    double lambda_star;   // unique root of Psi' in (lambda_minus, 0)
    double psi_at_star;   // Psi(lambda_star) < 0
    double d_squared;     // sigma^2 + int z^2 e^{lambda_* z} nu(dz) = Psi''(lambda_star)
    LevyTriplet tilted;
};

// Requires lambda_minus < 0, m > 0 and Psi'(lambda_minus+) < 0; throws
// HypothesisError otherwise (untempered stable tails have lambda_minus = 0
// and are rejected).
EsscherSolution find_lambda_star(const Cumulant& cum);

// Both sides of p_b(t) = e^{-lambda_* b + Psi(lambda_*) t} q_b(t), each
// through the full inversion pipeline (q_b under the tilted model).
struct TiltPair {
    DensityPoint lhs;  // density under the original model
    DensityPoint rhs;  // tilt factor times density under the tilted model
};
TiltPair tilt_density_relation(const FptModel& model, const EsscherSolution& sol,
                               double t, const QuadratureSpec& spec);

} // namespace fpt

#endif
