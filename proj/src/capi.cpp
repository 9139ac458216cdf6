#include "fpt/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "fpt/checks.hpp"
#include "fpt/esscher.hpp"
#include "fpt/fpt_engine.hpp"
#include "fpt/mc_oracle.hpp"
#include "fpt/model_io.hpp"
#include "fpt/pricing.hpp"
#include "fpt/version.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
int guard(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return FPT_OK;
    } catch (const fpt::Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FPT_ERR_INTERNAL;
    }
}

fpt::QuadratureSpec spec_with(double abs_tol) {
    fpt::QuadratureSpec spec;
    if (abs_tol > 0.0) spec.abs_tol = abs_tol;
    return spec;
}

fpt::SimConfig sim_config(uint64_t n_paths, double dt, double eps, double horizon,
                          uint64_t seed) {
    fpt::SimConfig cfg;
    cfg.n_paths = n_paths;
    cfg.dt = dt;
    cfg.eps = eps;
    cfg.horizon = horizon;
    cfg.seed = seed;
    return cfg;
}

} // namespace

struct fpt_model {
    fpt::FptModel model;
};

extern "C" {

const char* fpt_version(void) { return FPT_VERSION_STRING; }

const char* fpt_last_error(void) { return g_last_error.c_str(); }

void fpt_string_free(char* s) { std::free(s); }

int fpt_diagnose(const char* model_json, char** out_json) {
    return guard([&] {
        const fpt::LevyTriplet t = fpt::triplet_from_string(model_json);
        const fpt::ModelDiagnostics d = fpt::diagnose(t);
        *out_json = dup_string(fpt::diagnostics_to_json(d).dump(2));
    });
}

int fpt_model_create(const char* model_json, double b, fpt_model** out) {
    return guard([&] {
        fpt::LevyTriplet t = fpt::triplet_from_string(model_json);
        *out = new fpt_model{fpt::FptModel(std::move(t), b)};
    });
}

void fpt_model_free(fpt_model* m) { delete m; }

int fpt_density(const fpt_model* m, double t, double abs_tol, double* value,
                double* error_estimate) {
    return guard([&] {
        const fpt::DensityPoint p = fpt::fpt_density(m->model, t, spec_with(abs_tol));
        *value = p.value;
        if (error_estimate) *error_estimate = p.error;
    });
}

int fpt_cdf(const fpt_model* m, double t, double abs_tol, double* value) {
    return guard([&] { *value = fpt::fpt_cdf(m->model, t, spec_with(abs_tol)); });
}

int fpt_asymptote_describe(const fpt_model* m, char** out_json) {
    return guard([&] {
        const fpt::AsymptoteReport rep = fpt::asymptote(m->model);
        nlohmann::json j = {
            {"kind", rep.kind == fpt::AsymptoteKind::stable     ? "stable"
                     : rep.kind == fpt::AsymptoteKind::gaussian ? "gaussian"
                                                                : "esscher"},
            {"constant", rep.constant},
            {"power", rep.power},
            {"exp_rate", rep.exp_rate},
            {"hypotheses_verified", rep.hypotheses_verified},
        };
        if (!rep.note.empty()) j["note"] = rep.note;
        if (rep.kind == fpt::AsymptoteKind::stable) j["alpha"] = rep.alpha;
        if (rep.kind == fpt::AsymptoteKind::gaussian) j["c_squared"] = rep.c_squared;
        if (rep.kind == fpt::AsymptoteKind::esscher) {
            j["lambda_star"] = rep.lambda_star;
            j["psi_at_star"] = rep.psi_at_star;
            j["d_squared"] = rep.d_squared;
        }
        *out_json = dup_string(j.dump(2));
    });
}

int fpt_asymptote_eval(const fpt_model* m, double t, double* value) {
    return guard([&] { *value = fpt::asymptote(m->model).eval(t); });
}

int fpt_laplace(const fpt_model* m, double r, double* value) {
    return guard([&] { *value = fpt::laplace_fpt(m->model, r); });
}

int fpt_calibrate(const char* model_json, double r, char** out_json) {
    return guard([&] {
        const fpt::LevyTriplet t = fpt::triplet_from_string(model_json);
        const double m = fpt::risk_neutral_drift(r, t.sigma(), t.jumps());
        const fpt::LevyTriplet cal(t.sigma(), m, t.jumps());
        *out_json = dup_string(fpt::triplet_to_json(cal).dump(2));
    });
}

int fpt_urc_value(const fpt_model* m, double r, double T, double* value) {
    return guard([&] {
        *value = fpt::urc_value(m->model, r, T, fpt::QuadratureSpec{});
    });
}

int fpt_urc_gap_asymptote_eval(const fpt_model* m, double r, double T, double* value) {
    return guard([&] {
        const fpt::EsscherSolution sol = fpt::find_lambda_star(m->model.cumulant());
        *value = fpt::urc_gap_asymptote(m->model, r, sol).eval(T);
    });
}

int fpt_simulate(const char* model_json, double b, uint64_t n_paths, double dt,
                 double eps, double horizon, uint64_t seed, double* times,
                 uint64_t* n_crossed) {
    return guard([&] {
        const fpt::LevyTriplet t = fpt::triplet_from_string(model_json);
        const fpt::FptSampleSet set =
            fpt::simulate_fpt(t, b, sim_config(n_paths, dt, eps, horizon, seed));
        *n_crossed = set.crossing_times.size();
        std::memcpy(times, set.crossing_times.data(),
                    set.crossing_times.size() * sizeof(double));
    });
}

int fpt_ks_distance(const fpt_model* m, const double* times, uint64_t n_crossed,
                    uint64_t n_paths, double dt, double eps, double horizon,
                    uint64_t seed, double* ks) {
    return guard([&] {
        fpt::FptSampleSet set;
        set.crossing_times.assign(times, times + n_crossed);
        set.censored_count = n_paths - n_crossed;
        set.n_paths = n_paths;
        set.config = sim_config(n_paths, dt, eps, horizon, seed);
        *ks = fpt::ks_distance(set, m->model, fpt::QuadratureSpec{});
    });
}

int fpt_run_checks(char** out_json, int* all_pass) {
    return guard([&] {
        nlohmann::json arr = nlohmann::json::array();
        bool ok = true;
        for (const auto& c : fpt::run_checks()) {
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            ok = ok && c.pass;
        }
        *out_json = dup_string(arr.dump(2));
        if (all_pass) *all_pass = ok ? 1 : 0;
    });
}

} // extern "C"
