#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "fpt/levy_model.hpp"

using namespace fpt;

namespace {

// independent quadrature route for the closed-form oracles
double gsl_integrate(double (*f)(double, void*), void* params, double lo, double hi) {
    gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
    gsl_function F{f, params};
    double result = 0.0, abserr = 0.0;
    if (std::isinf(hi))
        gsl_integration_qagiu(&F, lo, 1e-13, 1e-11, 4000, ws, &result, &abserr);
    else
        gsl_integration_qags(&F, lo, hi, 1e-13, 1e-11, 4000, ws, &result, &abserr);
    gsl_integration_workspace_free(ws);
    return result;
}

struct PowDens {
    double C, alpha, theta;  // theta = 0 for the untempered tail
};
double pow_density(double u, void* p) {
    const auto* d = static_cast<PowDens*>(p);
    return d->C * std::pow(u, -1.0 - d->alpha) * std::exp(-d->theta * u);
}
double pow_density_u2(double u, void* p) { return u * u * pow_density(u, p); }
double pow_density_u1(double u, void* p) { return u * pow_density(u, p); }

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

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(JumpMeasure{StableTail{1.0, 1.0}}), InvalidInputError);
    CHECK_THROWS_AS(validate(JumpMeasure{StableTail{1.0, 2.0}}), InvalidInputError);
    CHECK_THROWS_AS(validate(JumpMeasure{StableTail{-1.0, 1.5}}), InvalidInputError);
    CHECK_THROWS_AS(validate(JumpMeasure{TemperedStableTail{1.0, 1.5, 0.0}}),
                    InvalidInputError);
    CHECK_THROWS_AS(validate(JumpMeasure{ExponentialJumps{1.0, -1.0}}),
                    InvalidInputError);
    CHECK_NOTHROW(validate(JumpMeasure{StableTail{1.0, 1.5}}));

    TabulatedTail tab = stable_like_tab();
    CHECK_NOTHROW(validate(JumpMeasure{tab}));
    SUBCASE("non-monotone tail rejected") {
        tab.nu_bar[2] = tab.nu_bar[1] * 2.0;
        CHECK_THROWS_AS(validate(JumpMeasure{tab}), InvalidInputError);
    }
    SUBCASE("tail_index 2 rejected (regime would be ambiguous)") {
        tab.tail_index = 2.0;
        CHECK_THROWS_AS(validate(JumpMeasure{tab}), UnsupportedError);
    }
    SUBCASE("tail_index 1 rejected (mean not integrable)") {
        tab.tail_index = 1.0;
        CHECK_THROWS_AS(validate(JumpMeasure{tab}), AdmissibilityError);
    }
}

TEST_CASE("triplet validation") {
    CHECK_THROWS_AS(LevyTriplet(-1.0, 0.0, NoJumps{}), InvalidInputError);
    CHECK_THROWS_AS(LevyTriplet(0.0, 0.0, NoJumps{}), InvalidInputError);
    CHECK_NOTHROW(LevyTriplet(0.0, 0.0, StableTail{1.0, 1.5}));
}

TEST_CASE("stable tail closed forms") {
    const JumpMeasure j{StableTail{1.0, 1.5}};
    // nu_bar(x) = C x^{-alpha}/alpha
    CHECK(tail_mass(j, 1.0) == doctest::Approx(1.0 / 1.5).epsilon(1e-14));
    CHECK(tail_mass(j, 4.0) == doctest::Approx(std::pow(4.0, -1.5) / 1.5).epsilon(1e-14));
    // int_0^x u^2 nu(du) = C x^{2-alpha}/(2-alpha)
    CHECK(truncated_second_moment(j, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(truncated_second_moment(j, 0.01) ==
          doctest::Approx(std::pow(0.01, 0.5) / 0.5).epsilon(1e-14));
    CHECK(second_moment(j) == std::numeric_limits<double>::infinity());
    CHECK(lambda_minus(j) == 0.0);
    CHECK_THROWS_AS(tail_mass(j, 0.0), DomainError);
}

TEST_CASE("tempered stable tail against quadrature and frozen oracle") {
    const JumpMeasure j{TemperedStableTail{1.0, 1.5, 2.0}};
    PowDens d{1.0, 1.5, 2.0};
    // high-precision values computed from the incomplete-gamma forms
    CHECK(tail_mass(j, 1.0) == doctest::Approx(0.0334687614888655).epsilon(1e-10));
    CHECK(truncated_second_moment(j, 1.0) ==
          doctest::Approx(1.1962880133226082).epsilon(1e-10));
    for (double x : {0.1, 0.7, 3.0}) {
        CHECK(tail_mass(j, x) ==
              doctest::Approx(gsl_integrate(pow_density, &d, x, INFINITY)).epsilon(1e-9));
        CHECK(truncated_second_moment(j, x) ==
              doctest::Approx(gsl_integrate(pow_density_u2, &d, 0.0, x)).epsilon(1e-9));
        CHECK(mean_beyond(j, x) ==
              doctest::Approx(gsl_integrate(pow_density_u1, &d, x, INFINITY)).epsilon(1e-9));
    }
    CHECK(lambda_minus(j) == -2.0);
    // full second moment: C theta^{alpha-2} Gamma(2-alpha)
    CHECK(second_moment(j) ==
          doctest::Approx(gsl_integrate(pow_density_u2, &d, 0.0, INFINITY)).epsilon(1e-9));
}

TEST_CASE("exponential jumps closed forms") {
    const JumpMeasure j{ExponentialJumps{2.0, 3.0}};
    CHECK(tail_mass(j, 1.0) == doctest::Approx(2.0 * std::exp(-3.0)).epsilon(1e-14));
    CHECK(second_moment(j) == doctest::Approx(2.0 * 2.0 / 9.0).epsilon(1e-14));
    PowDens unused{};
    struct Exp2 {
        double a, eta;
    } p{2.0, 3.0};
    (void)unused;
    auto dens_u2 = [](double u, void* q) {
        const auto* e = static_cast<Exp2*>(q);
        return u * u * e->a * e->eta * std::exp(-e->eta * u);
    };
    auto dens_u1 = [](double u, void* q) {
        const auto* e = static_cast<Exp2*>(q);
        return u * e->a * e->eta * std::exp(-e->eta * u);
    };
    for (double x : {0.2, 1.0, 2.5}) {
        CHECK(truncated_second_moment(j, x) ==
              doctest::Approx(gsl_integrate(dens_u2, &p, 0.0, x)).epsilon(1e-10));
        CHECK(mean_beyond(j, x) ==
              doctest::Approx(gsl_integrate(dens_u1, &p, x, INFINITY)).epsilon(1e-10));
    }
    CHECK(lambda_minus(j) == -3.0);
}

TEST_CASE("tabulated tail interpolation and extrapolation") {
    const TabulatedTail tab = stable_like_tab();
    const JumpMeasure j{tab};
    const JumpMeasure ref{StableTail{1.0, 1.5}};
    // exact at knots
    for (std::size_t i = 0; i < tab.x.size(); ++i)
        CHECK(tail_mass(j, tab.x[i]) == doctest::Approx(tab.nu_bar[i]).epsilon(1e-13));
    // the knots sample an exact power law, so interpolation and both
    // extrapolations must reproduce it everywhere
    for (double x : {0.05, 0.31, 0.9, 1.7, 3.3, 10.0, 250.0})
        CHECK(tail_mass(j, x) == doctest::Approx(tail_mass(ref, x)).epsilon(1e-12));
    for (double x : {0.1, 1.3, 40.0})
        CHECK(truncated_second_moment(j, x) ==
              doctest::Approx(truncated_second_moment(ref, x)).epsilon(1e-10));
    CHECK(lambda_minus(j) == 0.0);
}

TEST_CASE("tilt parameter maps") {
    SUBCASE("tempered: theta shifts by lambda_star") {
        const JumpMeasure t = tilt(JumpMeasure{TemperedStableTail{1.0, 1.5, 2.0}}, -0.5);
        const auto& ts = std::get<TemperedStableTail>(t);
        CHECK(ts.C == 1.0);
        CHECK(ts.alpha == 1.5);
        CHECK(ts.theta == doctest::Approx(1.5));
    }
    SUBCASE("exponential: intensity and rate both move") {
        const JumpMeasure t = tilt(JumpMeasure{ExponentialJumps{2.0, 3.0}}, -1.0);
        const auto& e = std::get<ExponentialJumps>(t);
        // a eta e^{eta z} e^{lam z} = a' eta' e^{eta' z} with eta' = eta+lam
        CHECK(e.eta == doctest::Approx(2.0));
        CHECK(e.a == doctest::Approx(2.0 * 3.0 / 2.0));
    }
    SUBCASE("polynomial tails cannot be tilted") {
        CHECK_THROWS_AS(tilt(JumpMeasure{StableTail{1.0, 1.5}}, -0.5), HypothesisError);
        CHECK_THROWS_AS(tilt(JumpMeasure{stable_like_tab()}, -0.5), HypothesisError);
    }
}

TEST_CASE("diagnose: regimes and density conditions") {
    SUBCASE("brownian is gaussian regime") {
        const auto d = diagnose(LevyTriplet(1.0, 0.0, NoJumps{}));
        CHECK(d.regime == Regime::gaussian);
        CHECK(*d.c_squared == doctest::Approx(1.0));
        CHECK(d.density_conditions_ok);
        CHECK_FALSE(d.drift_positive);
    }
    SUBCASE("stable tail is stable regime with alpha") {
        const auto d = diagnose(LevyTriplet(0.0, 0.0, StableTail{1.0, 1.5}));
        CHECK(d.regime == Regime::stable);
        CHECK(d.alpha == doctest::Approx(1.5));
        CHECK(d.density_conditions_ok);
    }
    SUBCASE("tempered tail is gaussian regime (finite variance, light tail)") {
        const auto d = diagnose(LevyTriplet(0.3, 0.5, TemperedStableTail{1.0, 1.5, 2.0}));
        CHECK(d.regime == Regime::gaussian);
        CHECK(*d.c_squared ==
              doctest::Approx(0.09 + second_moment(JumpMeasure{
                                         TemperedStableTail{1.0, 1.5, 2.0}})));
        CHECK(d.drift_positive);
        CHECK(d.density_conditions_ok);
    }
    SUBCASE("tabulated with tail_index < 2 is stable regime") {
        const auto d = diagnose(LevyTriplet(0.0, 0.0, stable_like_tab()));
        CHECK(d.regime == Regime::stable);
        CHECK(d.alpha == doctest::Approx(1.5));
    }
    SUBCASE("sigma=0 compound Poisson has no density") {
        const auto d = diagnose(LevyTriplet(0.0, 1.0, ExponentialJumps{2.0, 3.0}));
        CHECK_FALSE(d.density_conditions_ok);
    }
    SUBCASE("sigma>0 always passes the density gate") {
        const auto d = diagnose(LevyTriplet(0.5, 0.0, ExponentialJumps{2.0, 3.0}));
        CHECK(d.density_conditions_ok);
    }
}
