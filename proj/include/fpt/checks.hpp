#ifndef FPT_CHECKS_HPP
#define FPT_CHECKS_HPP

#include <string>
#include <vector>

namespace fpt {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst observed deviation, or the failure reason
};

// The model-independent invariant suite over the built-in catalog: tail
// monotonicity, Karamata ratio, quadrature cross-checks, cumulant symmetry
// and convexity, inversion normalization, Esscher identities, martingale
// drift.  Used by the CLI `check` command and by the acceptance suite.
std::vector<CheckResult> run_checks();

} // namespace fpt

#endif
