#ifndef FPT_MC_ORACLE_HPP
#define FPT_MC_ORACLE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "fpt/fpt_engine.hpp"
#include "fpt/levy_model.hpp"

namespace fpt {

struct SimConfig {
    std::uint64_t n_paths = 100000;
    double dt = 1e-3;
    double eps = 1e-3;       // small-jump cutoff
    double horizon = 1.0;
    std::uint64_t seed = 1;
};

struct FptSampleSet {
    std::vector<double> crossing_times;  // sorted ascending, <= horizon
    std::uint64_t censored_count = 0;
    std::uint64_t n_paths = 0;
    SimConfig config;
};

// Euler scheme with small-jump Gaussian substitution, compound-Poisson tail
// jumps and diffusion-bridge crossing correction.  Paths are seeded
// independently from (seed, path index), so results are reproducible and
// independent of the thread count.
FptSampleSet simulate_fpt(const LevyTriplet& triplet, double b, const SimConfig& config);

// Sample mean and variance of X_1 under the same scheme (moment matching
// against Psi'(0), Psi''(0)).
std::pair<double, double> simulate_x1_moments(const LevyTriplet& triplet,
                                              const SimConfig& config);

// Kolmogorov-Smirnov distance between the empirical crossing-time law and
// fpt_cdf, both conditioned on crossing before the horizon.
double ks_distance(const FptSampleSet& samples, const FptModel& model,
                   const QuadratureSpec& spec);

} // namespace fpt

#endif
