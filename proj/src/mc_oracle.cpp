#include "fpt/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "fpt/quad.hpp"

namespace fpt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int thread_budget() {
    if (const char* env = std::getenv("FPT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Compound-Poisson sampler for the jump tail beyond eps.  Proposal/acceptance
// thinning keeps the tempered family exact; a rejected proposal yields size 0.
struct TailJumpSampler {
    double rate = 0.0;  // proposal intensity
    const JumpMeasure* jumps = nullptr;
    double eps = 0.0;

    double draw(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        if (const auto* e = std::get_if<ExponentialJumps>(jumps)) {
            std::exponential_distribution<double> ex(e->eta);
            return eps + ex(rng);
        }
        if (const auto* s = std::get_if<StableTail>(&*jumps)) {
            return eps * std::pow(unif(rng), -1.0 / s->alpha);
        }
        if (const auto* ts = std::get_if<TemperedStableTail>(jumps)) {
            const double x = eps * std::pow(unif(rng), -1.0 / ts->alpha);
            return unif(rng) < std::exp(-ts->theta * x) ? x : 0.0;
        }
        // tabulated: numeric inverse of the normalized tail
        const double target = unif(rng) * tail_mass(*jumps, eps);
        double lo = eps, hi = eps;
        while (tail_mass(*jumps, hi) > target && hi < 1e12) hi *= 2.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = std::sqrt(lo * hi);
            if (tail_mass(*jumps, mid) > target) lo = mid; else hi = mid;
        }
        return std::sqrt(lo * hi);
    }
};

TailJumpSampler make_sampler(const JumpMeasure& jumps, double eps) {
    TailJumpSampler s;
    s.jumps = &jumps;
    s.eps = eps;
    if (const auto* ts = std::get_if<TemperedStableTail>(&jumps)) {
        // thinning proposal: untempered tail mass dominates
        s.rate = ts->C * std::pow(eps, -ts->alpha) / ts->alpha;
    } else if (has_jumps(jumps)) {
        s.rate = tail_mass(jumps, eps);
    }
    return s;
}

struct Scheme {
    double drift;     // m plus the compensator of jumps beyond eps
    double sig_eff;   // sqrt(sigma^2 + small-jump variance rate)
    TailJumpSampler sampler;
};

Scheme make_scheme(const LevyTriplet& t, double eps) {
    Scheme s;
    s.drift = t.m() + (has_jumps(t.jumps()) ? mean_beyond(t.jumps(), eps) : 0.0);
    s.sig_eff = std::sqrt(t.sigma() * t.sigma() +
                          (has_jumps(t.jumps()) ? truncated_second_moment(t.jumps(), eps)
                                                : 0.0));
    s.sampler = make_sampler(t.jumps(), eps);
    return s;
}

// One path; returns the crossing time or NaN, and optionally the terminal value.
double run_path(const Scheme& s, double b, const SimConfig& cfg, std::uint64_t path,
                double* terminal) {
    std::mt19937_64 rng(splitmix64(splitmix64(cfg.seed) ^ (path + 1)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::poisson_distribution<int> pois(s.sampler.rate * cfg.dt);

    const double sq_dt = std::sqrt(cfg.dt);
    const double var_dt = s.sig_eff * s.sig_eff * cfg.dt;
    double x = 0.0, t = 0.0, tau = std::numeric_limits<double>::quiet_NaN();
    const long n_steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
    for (long i = 0; i < n_steps; ++i) {
        double y = x + s.drift * cfg.dt + s.sig_eff * sq_dt * gauss(rng);
        bool crossed = false;
        double tcross = 0.0;
        if (std::isnan(tau)) {
            if (y > b) {
                crossed = true;
                tcross = t + cfg.dt;
            } else if (var_dt > 0.0) {
                // diffusion bridge: both endpoints below the barrier
                const double p = std::exp(-2.0 * (b - x) * (b - y) / var_dt);
                if (unif(rng) < p) {
                    crossed = true;
                    tcross = t + 0.5 * cfg.dt;
                }
            }
        }
        if (s.sampler.rate > 0.0) {
            const int k = pois(rng);
            for (int jj = 0; jj < k; ++jj) y -= s.sampler.draw(rng);
        }
        if (crossed && std::isnan(tau)) tau = std::min(tcross, cfg.horizon);
        x = y;
        t += cfg.dt;
        if (!std::isnan(tau) && terminal == nullptr) break;
    }
    if (terminal) *terminal = x;
    return tau;
}

template <class Fn>
void parallel_paths(std::uint64_t n, Fn&& per_path) {
    const int nt = std::min<std::uint64_t>(thread_budget(), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            for (std::uint64_t p = w; p < n; p += nt) per_path(p);
        });
    for (auto& th : pool) th.join();
}

} // namespace

FptSampleSet simulate_fpt(const LevyTriplet& triplet, double b, const SimConfig& cfg) {
    if (!(b > 0.0)) throw DomainError("barrier must be positive");
    if (!(cfg.dt > 0.0 && cfg.dt <= cfg.horizon))
        throw InvalidInputError("need 0 < dt <= horizon");
    if (!(cfg.eps > 0.0)) throw InvalidInputError("small-jump cutoff must be positive");
    const Scheme s = make_scheme(triplet, cfg.eps);

    std::vector<double> taus(cfg.n_paths);
    parallel_paths(cfg.n_paths, [&](std::uint64_t p) {
        taus[p] = run_path(s, b, cfg, p, nullptr);
    });

    FptSampleSet out;
    out.n_paths = cfg.n_paths;
    out.config = cfg;
    for (double tau : taus) {
        if (std::isnan(tau)) ++out.censored_count;
        else out.crossing_times.push_back(tau);
    }
    std::sort(out.crossing_times.begin(), out.crossing_times.end());
    return out;
}

std::pair<double, double> simulate_x1_moments(const LevyTriplet& triplet,
                                              const SimConfig& cfg) {
    SimConfig c = cfg;
    c.horizon = 1.0;
    const Scheme s = make_scheme(triplet, c.eps);
    std::vector<double> xs(c.n_paths);
    parallel_paths(c.n_paths, [&](std::uint64_t p) {
        double terminal = 0.0;
        run_path(s, std::numeric_limits<double>::infinity(), c, p, &terminal);
        xs[p] = terminal;
    });
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, var};
}

double ks_distance(const FptSampleSet& samples, const FptModel& model,
                   const QuadratureSpec& spec) {
    const std::size_t n = samples.crossing_times.size();
    if (n < 100)
        throw InsufficientSamplesError("KS comparison needs at least 100 crossings");

    // analytic conditional CDF on a grid, by cumulative panel integration
    const int cells = 256;
    const double horizon = samples.config.horizon;
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol, 1e-8);
    std::vector<double> grid(cells + 1), cdf(cells + 1, 0.0);
    for (int i = 0; i <= cells; ++i) grid[i] = horizon * i / cells;
    for (int i = 1; i <= cells; ++i) {
        double v, e, ra;
        gauss_kronrod_15([&](double u) { return fpt_density(model, u, inner).value; },
                         grid[i - 1], grid[i], v, e, ra);
        cdf[i] = cdf[i - 1] + v;
    }
    const double total = cdf[cells];
    if (!(total > 0.0)) throw ConvergenceError("analytic CDF vanished on the horizon");

    auto cond_cdf = [&](double t) {
        const double pos = std::clamp(t / horizon, 0.0, 1.0) * cells;
        const int i = std::min(static_cast<int>(pos), cells - 1);
        const double w = pos - i;
        return ((1.0 - w) * cdf[i] + w * cdf[i + 1]) / total;
    };

    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = cond_cdf(samples.crossing_times[i]);
        d = std::max(d, std::abs(a - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - a));
    }
    return d;
}

} // namespace fpt
