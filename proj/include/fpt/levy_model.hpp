#ifndef FPT_LEVY_MODEL_HPP
#define FPT_LEVY_MODEL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fpt/jump_measure.hpp"

namespace fpt {

// Spectrally negative triplet (sigma, m, nu) in the fully compensated
// convention: Psi(xi) = sigma^2/2 xi^2 + m xi + int (e^{xi z} - 1 - xi z) nu(dz).
class LevyTriplet {
public:
    LevyTriplet(double sigma, double m, JumpMeasure jumps);

    double sigma() const { return sigma_; }
    double m() const { return m_; }
    const JumpMeasure& jumps() const { return jumps_; }

private:
    double sigma_;
    double m_;
    JumpMeasure jumps_;
};

enum class Regime { stable, gaussian };

struct ModelDiagnostics {
    Regime regime = Regime::gaussian;
    double alpha = 0.0;                 // regular-variation index, stable regime only
    std::optional<double> c_squared;    // sigma^2 + int z^2 nu(dz), gaussian regime only
    double lambda_minus = 0.0;
    double probe_s = 0.0;               // exponent used in the liminf probe
    std::vector<std::pair<double, double>> condition2_probe;  // (x, x^{s-2} int z^2 nu)
    bool density_conditions_ok = false;
    bool drift_positive = false;
};

// Classifies the regime and evaluates the small-jump density conditions.
ModelDiagnostics diagnose(const LevyTriplet& t);

} // namespace fpt

#endif
