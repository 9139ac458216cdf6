#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "fpt/fpt_engine.hpp"

using namespace fpt;

namespace {

double brownian_fpt(double t, double m, double b) {
    return b / std::sqrt(2.0 * M_PI * t * t * t) *
           std::exp(-(m * t - b) * (m * t - b) / (2.0 * t));
}

TabulatedTail stable_like_tab() {
    TabulatedTail tab;
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
        tab.x.push_back(x);
        tab.nu_bar.push_back(std::pow(x, -1.5) / 1.5);
    }
    tab.tail_index = 1.5;
    return tab;
}

} // namespace

TEST_CASE("model construction gates") {
    CHECK_THROWS_AS(FptModel(LevyTriplet(1.0, 0.0, NoJumps{}), 0.0), DomainError);
    CHECK_THROWS_AS(FptModel(LevyTriplet(1.0, 0.0, NoJumps{}), -1.0), DomainError);
    CHECK_THROWS_AS(FptModel(LevyTriplet(0.0, 1.0, ExponentialJumps{2.0, 3.0}), 1.0),
                    NoDensityError);
}

TEST_CASE("fpt_density: Brownian closed form") {
    const QuadratureSpec spec;
    SUBCASE("spec anchors") {
        const FptModel m1(LevyTriplet(1.0, 0.0, NoJumps{}), 1.0);
        CHECK(fpt_density(m1, 1.0, spec).value ==
              doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
        const FptModel m2(LevyTriplet(1.0, 0.3, NoJumps{}), 2.0);
        CHECK(fpt_density(m2, 5.0, spec).value ==
              doctest::Approx(brownian_fpt(5.0, 0.3, 2.0)).epsilon(1e-12));
        CHECK(fpt_density(m2, 5.0, spec).value ==
              doctest::Approx(0.069603).epsilon(1e-5));
    }
    SUBCASE("grid, both drifts") {
        for (double m : {0.0, 0.3}) {
            const FptModel model(LevyTriplet(1.0, m, NoJumps{}), 1.0);
            for (double t : {0.1, 0.5, 2.0, 10.0, 50.0})
                CHECK(fpt_density(model, t, spec).value ==
                      doctest::Approx(brownian_fpt(t, m, 1.0)).epsilon(1e-10));
        }
    }
    SUBCASE("t = 0 rejected") {
        const FptModel model(LevyTriplet(1.0, 0.0, NoJumps{}), 1.0);
        CHECK_THROWS_AS(fpt_density(model, 0.0, spec), DomainError);
    }
}

TEST_CASE("Kendall identity ties fpt and transition densities") {
    const QuadratureSpec spec;
    const FptModel model(LevyTriplet(0.3, 0.5, TemperedStableTail{1.0, 1.5, 2.0}), 1.3);
    for (double t : {0.7, 3.0}) {
        const auto pb = fpt_density(model, t, spec);
        const auto px =
            transition_density(model.cumulant(), model.diagnostics(), t, 1.3, spec);
        CHECK(t * pb.value == doctest::Approx(1.3 * px.value).epsilon(1e-13));
    }
}

TEST_CASE("fpt_cdf") {
    const QuadratureSpec spec;
    SUBCASE("Brownian m=0: P(tau_b <= t) = 2(1 - Phi(b/sqrt(t)))") {
        const FptModel model(LevyTriplet(1.0, 0.0, NoJumps{}), 1.0);
        auto exact = [](double t) { return std::erfc(1.0 / std::sqrt(2.0 * t)); };
        CHECK(fpt_cdf(model, 1.0, spec) == doctest::Approx(exact(1.0)).epsilon(1e-7));
        CHECK(fpt_cdf(model, 1.0, spec) ==
              doctest::Approx(0.317310507863).epsilon(1e-7));
        CHECK(fpt_cdf(model, 10.0, spec) == doctest::Approx(exact(10.0)).epsilon(1e-7));
    }
    SUBCASE("monotone in t and within [0,1]") {
        const FptModel model(LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0}), 1.0);
        double prev = 0.0;
        for (double t : {0.5, 1.0, 2.0, 5.0}) {
            const double c = fpt_cdf(model, t, spec);
            CHECK(c >= prev);
            CHECK(c <= 1.0);
            prev = c;
        }
    }
}

TEST_CASE("scaling_g") {
    SUBCASE("stable closed form and defining identity") {
        const FptModel model(LevyTriplet(0.0, 0.0, StableTail{1.0, 1.5}), 1.0);
        for (double x : {2.0, 50.0, 1e4}) {
            const double g = scaling_g(model, x);
            CHECK(g == doctest::Approx(std::pow(x / 1.5, 1.0 / 1.5)).epsilon(1e-13));
            CHECK(1.0 / tail_mass(model.triplet().jumps(), g) ==
                  doctest::Approx(x).epsilon(1e-10));
        }
    }
    SUBCASE("tabulated inverse agrees with its stable twin") {
        const FptModel tab(LevyTriplet(0.0, 0.0, stable_like_tab()), 1.0);
        for (double x : {3.0, 100.0, 5e4})
            CHECK(scaling_g(tab, x) ==
                  doctest::Approx(std::pow(x / 1.5, 1.0 / 1.5)).epsilon(1e-9));
    }
    SUBCASE("gaussian regime refuses") {
        const FptModel model(LevyTriplet(1.0, 0.0, NoJumps{}), 1.0);
        CHECK_THROWS_AS(scaling_g(model, 10.0), HypothesisError);
    }
}

TEST_CASE("stable_constant against the numeric limit integral") {
    // frozen 30-digit values of K_alpha
    CHECK(stable_constant(1.1) == doctest::Approx(0.010043335466).epsilon(1e-9));
    CHECK(stable_constant(1.5) == doctest::Approx(0.107039162798).epsilon(1e-9));
    CHECK(stable_constant(1.9) == doctest::Approx(0.081370444671).epsilon(1e-9));
    for (double a : {1.1, 1.3, 1.5, 1.7, 1.9})
        CHECK(stable_constant(a) ==
              doctest::Approx(lemma44_integral(a) / (2.0 * M_PI)).epsilon(1e-8));
    CHECK(lemma44_integral(1.5) == doctest::Approx(0.672546894986).epsilon(1e-8));
    CHECK_THROWS_AS(stable_constant(1.0), DomainError);
    CHECK_THROWS_AS(stable_constant(2.0), DomainError);
}

TEST_CASE("asymptote dispatch") {
    SUBCASE("gaussian, zero drift") {
        const FptModel model(LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0}), 1.0);
        const auto rep = asymptote(model);
        CHECK(rep.kind == AsymptoteKind::gaussian);
        const double c2 = 0.25 + 4.0 / 9.0;
        CHECK(rep.c_squared == doctest::Approx(c2).epsilon(1e-13));
        CHECK(rep.constant == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * c2)));
        CHECK(rep.power == doctest::Approx(-1.5));
        CHECK(rep.exp_rate == 0.0);
        CHECK(rep.eval(10.0) ==
              doctest::Approx(rep.constant * std::pow(10.0, -1.5)).epsilon(1e-13));
    }
    SUBCASE("esscher for positive drift (Brownian: all constants by hand)") {
        const FptModel model(LevyTriplet(1.0, 0.4, NoJumps{}), 1.0);
        const auto rep = asymptote(model);
        CHECK(rep.kind == AsymptoteKind::esscher);
        CHECK(rep.lambda_star == doctest::Approx(-0.4).epsilon(1e-10));
        CHECK(rep.psi_at_star == doctest::Approx(-0.08).epsilon(1e-10));
        CHECK(rep.d_squared == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rep.exp_rate == doctest::Approx(-0.08).epsilon(1e-10));
        // b e^{-lambda_* b} / sqrt(2 pi d^2)
        CHECK(rep.constant ==
              doctest::Approx(std::exp(0.4) / std::sqrt(2.0 * M_PI)).epsilon(1e-9));
    }
    SUBCASE("stable regime") {
        const FptModel model(LevyTriplet(0.0, 0.0, StableTail{1.0, 1.5}), 1.0);
        const auto rep = asymptote(model);
        CHECK(rep.kind == AsymptoteKind::stable);
        CHECK(rep.alpha == doctest::Approx(1.5));
        CHECK(rep.hypotheses_verified);
        // b K_alpha / (t g(t))
        const double t = 100.0;
        CHECK(rep.eval(t) ==
              doctest::Approx(0.107039162798 /
                              (t * std::pow(t / 1.5, 1.0 / 1.5))).epsilon(1e-9));
    }
    SUBCASE("tabulated stable regime is flagged unverified") {
        const FptModel model(LevyTriplet(0.0, 0.0, stable_like_tab()), 1.0);
        const auto rep = asymptote(model);
        CHECK(rep.kind == AsymptoteKind::stable);
        CHECK_FALSE(rep.hypotheses_verified);
        CHECK_FALSE(rep.note.empty());
    }
    SUBCASE("negative drift refuses") {
        const FptModel model(LevyTriplet(1.0, -0.2, NoJumps{}), 1.0);
        CHECK_THROWS_AS(asymptote(model), HypothesisError);
    }
}

TEST_CASE("asymptote convergence: ratio approaches 1") {
    const QuadratureSpec spec;
    SUBCASE("Brownian m=0: exact ratio is e^{-b^2/(2t)}") {
        const FptModel model(LevyTriplet(1.0, 0.0, NoJumps{}), 1.0);
        const auto rep = asymptote(model);
        for (double t : {10.0, 100.0}) {
            const double ratio = fpt_density(model, t, spec).value / rep.eval(t);
            CHECK(ratio == doctest::Approx(std::exp(-0.5 / t)).epsilon(1e-10));
        }
    }
    SUBCASE("gaussian regime with jumps: improvement across decades") {
        const FptModel model(LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0}), 1.0);
        const auto rep = asymptote(model);
        double prev = 1e9;
        for (double t : {10.0, 100.0, 1000.0}) {
            const double dev =
                std::abs(fpt_density(model, t, spec).value / rep.eval(t) - 1.0);
            CHECK(dev < prev);
            prev = dev;
        }
        CHECK(prev < 0.1);
    }
    SUBCASE("esscher regime: improvement over {10,20,40}") {
        const FptModel model(LevyTriplet(1.0, 0.4, NoJumps{}), 1.0);
        const auto rep = asymptote(model);
        double prev = 1e9;
        for (double t : {10.0, 20.0, 40.0}) {
            const double ratio = fpt_density(model, t, spec).value / rep.eval(t);
            CHECK(ratio == doctest::Approx(std::exp(-0.5 / t)).epsilon(1e-6));
            prev = std::abs(ratio - 1.0);
        }
        CHECK(prev < 0.1);
    }
}

TEST_CASE("tail_expectation_asymptote constants (spec example)") {
    // NoJumps sigma=1, m=0.4, b=1, mu=0.1: prefactor e^{0.4}/(0.18 sqrt(2 pi))
    const FptModel model(LevyTriplet(1.0, 0.4, NoJumps{}), 1.0);
    const auto rep = tail_expectation_asymptote(model, 0.1);
    CHECK(rep.exp_rate == doctest::Approx(-0.18).epsilon(1e-10));
    const double pref = std::exp(0.4) / (0.18 * std::sqrt(2.0 * M_PI));
    CHECK(rep.constant == doctest::Approx(pref).epsilon(1e-9));
    // numeric check: int_t^inf e^{-mu s} p_b(s) ds / eval(t) -> 1 at t=40
    gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
    struct P {
        double mu;
    } prm{0.1};
    auto f = [](double s, void* q) {
        const auto* pp = static_cast<P*>(q);
        return std::exp(-pp->mu * s) * brownian_fpt(s, 0.4, 1.0);
    };
    gsl_function F{f, &prm};
    double result = 0.0, abserr = 0.0;
    gsl_integration_qagiu(&F, 40.0, 1e-14, 1e-11, 4000, ws, &result, &abserr);
    gsl_integration_workspace_free(ws);
    CHECK(result / rep.eval(40.0) == doctest::Approx(1.0).epsilon(0.15));
}
