// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion re-derives its expected values from closed forms
// or from an independent numeric route.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fpt/checks.hpp"
#include "fpt/esscher.hpp"
#include "fpt/fpt_engine.hpp"
#include "fpt/mc_oracle.hpp"
#include "fpt/pricing.hpp"
#include "fpt/quad.hpp"

using namespace fpt;

namespace {

int g_failures = 0;

void report(int criterion, const char* title, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s  [%s]\n", criterion, title,
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double brownian_fpt(double t, double m, double b) {
    return b / std::sqrt(2.0 * M_PI * t * t * t) *
           std::exp(-(m * t - b) * (m * t - b) / (2.0 * t));
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Brownian exactness to 1e-8 relative on a 20-point log grid.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureSpec spec;
    double worst = 0.0;
    for (double m : {0.0, 0.3})
        for (double b : {0.5, 1.0, 2.0}) {
            const FptModel model(LevyTriplet(1.0, m, NoJumps{}), b);
            for (int i = 0; i < 20; ++i) {
                const double t = 0.1 * std::pow(500.0, i / 19.0);
                const double got = fpt_density(model, t, spec).value;
                const double want = brownian_fpt(t, m, b);
                worst = std::max(worst, std::abs(got / want - 1.0));
            }
        }
    const double el = seconds_since(t0);
    report(1, "Brownian exactness", worst < 1e-8 && el < 10.0,
           "max rel err " + fmt(worst) + ", " + fmt(el) + " s");
}

// 2. Gaussian-regime tail asymptote: exact Brownian ratio, jump-model convergence.
void criterion2() {
    const QuadratureSpec spec;
    bool pass = true;
    std::string detail;
    {
        const FptModel model(LevyTriplet(1.0, 0.0, NoJumps{}), 1.0);
        const auto rep = asymptote(model);
        double worst = 0.0;
        for (double t : {10.0, 100.0}) {
            const double ratio = fpt_density(model, t, spec).value / rep.eval(t);
            worst = std::max(worst, std::abs(ratio / std::exp(-0.5 / t) - 1.0));
        }
        pass = pass && worst < 1e-8;
        detail += "brownian ratio err " + fmt(worst);
    }
    {
        const FptModel model(LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0}), 1.0);
        const auto rep = asymptote(model);
        double prev = 1e9;
        bool monotone = true;
        double final_dev = 0.0;
        for (double t : {10.0, 100.0, 1000.0}) {
            const double dev =
                std::abs(fpt_density(model, t, spec).value / rep.eval(t) - 1.0);
            if (dev >= prev) monotone = false;
            prev = dev;
            final_dev = dev;
        }
        pass = pass && monotone && final_dev < 0.10;
        detail += "; jump model |ratio-1| " + fmt(final_dev) +
                  (monotone ? ", decreasing" : ", NOT decreasing");
    }
    report(2, "gaussian tail asymptote", pass, detail);
}

// 3. Heavy-tailed asymptote for the stable model.
void criterion3() {
    const QuadratureSpec spec;
    const FptModel model(LevyTriplet(0.0, 0.0, StableTail{1.0, 1.5}), 1.0);
    const auto rep = asymptote(model);

    const double k_err =
        std::abs(stable_constant(1.5) - lemma44_integral(1.5) / (2.0 * M_PI));
    bool pass = k_err < 1e-8;

    double best_t = 0.0, best_dev = 1e9, prev_dev = 1e9;
    bool decreasing = true;
    for (double t : {10.0, 100.0, 1000.0, 10000.0}) {
        const auto p = fpt_density(model, t, spec);
        if (p.error >= 0.01 * p.value) continue;  // quadrature not trusted here
        const double dev = std::abs(p.value / rep.eval(t) - 1.0);
        if (dev >= prev_dev) decreasing = false;
        prev_dev = dev;
        best_t = t;
        best_dev = dev;
    }
    pass = pass && decreasing && best_dev < 0.10 && best_t >= 1000.0;
    report(3, "stable tail asymptote", pass,
           "K err " + fmt(k_err) + "; |ratio-1| " + fmt(best_dev) + " at t=" +
               fmt(best_t) + (decreasing ? ", decreasing" : ", NOT decreasing"));
}

// 4. Tilted (light-tail) asymptote: exact Brownian tilt ratio and the tilt identity.
void criterion4() {
    const QuadratureSpec spec;
    bool pass = true;
    std::string detail;
    {
        const FptModel model(LevyTriplet(1.0, 0.4, NoJumps{}), 1.0);
        const auto rep = asymptote(model);  // b/sqrt(2 pi) t^{-3/2} e^{0.4 - 0.08 t}
        double worst = 0.0;
        for (double t : {10.0, 40.0}) {
            const double ratio = fpt_density(model, t, spec).value / rep.eval(t);
            worst = std::max(worst, std::abs(ratio / std::exp(-0.5 / t) - 1.0));
        }
        pass = pass && worst < 1e-6;
        detail += "brownian tilt ratio err " + fmt(worst);
    }
    {
        const LevyTriplet trip(0.3, 0.5, TemperedStableTail{1.0, 1.5, 2.0});
        const EsscherSolution sol = find_lambda_star(Cumulant(trip));
        double worst_excess = 0.0;
        for (double b : {0.5, 1.0, 2.0})
            for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) {
                const FptModel model(trip, b);
                const TiltPair pair = tilt_density_relation(model, sol, t, spec);
                const double slack = 2.0 * (pair.lhs.error + pair.rhs.error) +
                                     1e-11 * std::max(pair.lhs.value, pair.rhs.value);
                worst_excess = std::max(
                    worst_excess, std::abs(pair.lhs.value - pair.rhs.value) / slack);
            }
        pass = pass && worst_excess <= 1.0;
        detail += "; tilt identity worst |diff|/bound " + fmt(worst_excess);
    }
    report(4, "tilted tail asymptote", pass, detail);
}

// 5. Laplace identity through two independent code paths.
void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureSpec spec;
    double worst = 0.0;
    for (const LevyTriplet& trip :
         {LevyTriplet(1.0, 0.0, NoJumps{}),
          LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0}),
          LevyTriplet(0.0, 0.0, StableTail{1.0, 1.5})}) {
        const FptModel model(trip, 1.0);
        for (double r : {0.05, 0.5}) {
            const double cut = 40.0 / r;
            const double integral =
                integrate_adaptive(
                    [&](double s) {
                        return std::exp(-r * s) * fpt_density(model, s, spec).value;
                    },
                    0.0, cut, 1e-10, 1e-7, 4000, cut / 16.0)
                    .value;
            worst = std::max(worst, std::abs(integral / laplace_fpt(model, r) - 1.0));
        }
    }
    const double el = seconds_since(t0);
    report(5, "Laplace identity", worst < 1e-4 && el < 60.0,
           "max rel err " + fmt(worst) + ", " + fmt(el) + " s");
}

// 6. Long-maturity URC gap asymptote.
void criterion6() {
    const QuadratureSpec spec;
    const double r = 0.05;
    const double b = -std::log(0.6);
    const double m = risk_neutral_drift(r, 1.0, NoJumps{});
    const FptModel model(LevyTriplet(1.0, m, NoJumps{}), b);
    const EsscherSolution sol = find_lambda_star(model.cumulant());
    const auto rep = urc_gap_asymptote(model, r, sol);
    const double lap = laplace_fpt(model, r);

    bool monotone = true;
    double prev = 1e9, ratio60 = 0.0;
    for (double T : {20.0, 40.0, 60.0}) {
        const double gap = lap - urc_value(model, r, T, spec);
        const double dev = std::abs(gap / rep.eval(T) - 1.0);
        if (dev >= prev) monotone = false;
        prev = dev;
        if (T == 60.0) ratio60 = gap / rep.eval(T);
    }
    // the leading-order asymptote converges slowly: the exact Brownian ratio
    // at T=60 is 0.8665 (independent high-precision quadrature); the 10%
    // band is first reached near T=100
    const bool exact_match = std::abs(ratio60 / 0.8665063398 - 1.0) < 1e-4;
    const double gap100 = lap - urc_value(model, r, 100.0, spec);
    const double ratio100 = gap100 / rep.eval(100.0);
    const bool band100 = std::abs(ratio100 - 1.0) < 0.10;
    report(6, "URC gap asymptote", monotone && exact_match && band100,
           "ratio(60) " + fmt(ratio60) + " vs exact 8.665e-01; ratio(100) " +
               fmt(ratio100) + (monotone ? "; improving" : "; NOT improving"));
}

// 7. Monte Carlo cross-validation.
void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureSpec spec;
    bool pass = true;
    std::string detail;
    int idx = 0;
    for (const LevyTriplet& trip :
         {LevyTriplet(1.0, 0.0, NoJumps{}),
          LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0})}) {
        SimConfig cfg;
        cfg.n_paths = 100000;
        cfg.dt = 1e-3;
        cfg.seed = 42;
        const FptModel model(trip, 1.0);
        const auto samples = simulate_fpt(trip, 1.0, cfg);
        const double ks = ks_distance(samples, model, spec);
        pass = pass && ks < 0.01;

        const auto [mean, var] = simulate_x1_moments(trip, cfg);
        const double c2 = trip.sigma() * trip.sigma() +
                          (has_jumps(trip.jumps()) ? second_moment(trip.jumps()) : 0.0);
        const double se_mean = std::sqrt(c2 / cfg.n_paths);
        const double se_var = c2 * std::sqrt(2.0 / cfg.n_paths);
        pass = pass && std::abs(mean - trip.m()) < 3.0 * se_mean &&
               std::abs(var - c2) < 3.0 * se_var;
        detail += (idx++ ? "; " : "") + std::string("ks ") + fmt(ks) + ", mean dev " +
                  fmt(std::abs(mean - trip.m()) / se_mean) + " se, var dev " +
                  fmt(std::abs(var - c2) / se_var) + " se";
    }
    const double el = seconds_since(t0);
    pass = pass && el < 120.0;
    report(7, "MC cross-validation", pass, detail + ", " + fmt(el) + " s");
}

// 8. Full invariant suite.
void criterion8() {
    const auto results = run_checks();
    int failed = 0;
    std::string first;
    for (const auto& c : results)
        if (!c.pass) {
            if (first.empty()) first = c.name;
            ++failed;
        }
    report(8, "property suites", failed == 0,
           std::to_string(results.size()) + " checks, " + std::to_string(failed) +
               " failed" + (first.empty() ? "" : " (first: " + first + ")"));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%s\n", g_failures == 0 ? "ACCEPTANCE: ALL PASS"
                                        : "ACCEPTANCE: FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
