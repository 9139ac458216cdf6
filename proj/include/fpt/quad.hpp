#ifndef FPT_QUAD_HPP
#define FPT_QUAD_HPP

#include <functional>

namespace fpt {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;     // absolute error estimate
    int panels = 0;
    bool converged = true;  // false when the panel budget ran out first
};

// 15-point Gauss-Kronrod rule on [a,b]; err from the embedded 7-point rule,
// resabs approximates int |f|.
void gauss_kronrod_15(const std::function<double(double)>& f, double a, double b,
                      double& value, double& err, double& resabs);

// Adaptive bisection of [a,b] until the accumulated error estimate drops
// below max(abs_tol, rel_tol*|I|) or the machine floor of the integrand
// scale.  max_panel_width bounds the initial panel size (oscillatory
// integrands); pass +inf for no bound.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_panels,
                              double max_panel_width);

// Same driver on [a, +inf) via the substitution x = a + u/(1-u).
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol, double rel_tol, int max_panels);

} // namespace fpt

#endif
