#include "fpt/jump_measure.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>

#include "fpt/quad.hpp"

namespace fpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// GSL's default handler aborts the process; route errors through return
// codes instead, treating underflow as an exact zero.
const bool g_gsl_quiet = [] {
    gsl_set_error_handler_off();
    return true;
}();

double gamma_inc_upper(double a, double x) {
    gsl_sf_result res;
    const int status = gsl_sf_gamma_inc_e(a, x, &res);
    if (status == GSL_EUNDRFLW) return 0.0;
    if (status != GSL_SUCCESS)
        throw ConvergenceError(std::string("gsl_sf_gamma_inc: ") +
                               gsl_strerror(status));
    return res.val;
}

// Gamma(-alpha) for alpha in (1,2), positive there.
double gamma_neg(double alpha) {
    return gsl_sf_gamma(2.0 - alpha) / (alpha * (alpha - 1.0));
}

void require_positive_x(double x) {
    if (!(x > 0.0)) throw DomainError("tail/moment argument must be positive");
}

// Piecewise power-law representation of a tabulated tail:
// nu_bar(u) = A u^{-p} on [lo, hi).
struct Seg {
    double lo, hi, A, p;
};

std::vector<Seg> segments(const TabulatedTail& j) {
    const auto& x = j.x;
    const auto& nb = j.nu_bar;
    const std::size_t n = x.size();
    std::vector<Seg> segs;
    segs.reserve(n + 1);
    double p_first = j.tail_index;
    if (n >= 2)
        p_first = std::log(nb[0] / nb[1]) / std::log(x[1] / x[0]);
    // continuation of the first segment's power law down to 0
    segs.push_back({0.0, x[0], nb[0] * std::pow(x[0], p_first), p_first});
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double p = std::log(nb[i] / nb[i + 1]) / std::log(x[i + 1] / x[i]);
        segs.push_back({x[i], x[i + 1], nb[i] * std::pow(x[i], p), p});
    }
    segs.push_back({x[n - 1], kInf, nb[n - 1] * std::pow(x[n - 1], j.tail_index),
                    j.tail_index});
    return segs;
}

// int_lo^hi u^k dnu~(u) with dnu~ = A p u^{-p-1} du on the segment.
double seg_moment(const Seg& s, double k, double lo, double hi) {
    lo = std::max(lo, s.lo);
    hi = std::min(hi, s.hi);
    if (!(hi > lo) || s.p == 0.0) return 0.0;
    const double q = k - s.p;
    if (std::abs(q) < 1e-12) return s.A * s.p * std::log(hi / lo);
    if (hi == kInf) {
        if (q >= 0.0) return kInf;
        return -s.A * s.p * std::pow(lo, q) / q;
    }
    if (lo == 0.0) {
        if (q <= 0.0) return kInf;
        return s.A * s.p * std::pow(hi, q) / q;
    }
    return s.A * s.p * (std::pow(hi, q) - std::pow(lo, q)) / q;
}

double tab_moment(const TabulatedTail& j, double k, double lo, double hi) {
    double sum = 0.0;
    for (const auto& s : segments(j)) sum += seg_moment(s, k, lo, hi);
    return sum;
}

// int_X^inf e^{-xi u} A p u^{-p-1} du, Re xi >= 0, X > 0.
std::complex<double> seg_exp_tail(double X, double A, double p,
                                  std::complex<double> xi) {
    const double rate = xi.real();
    const double freq = std::abs(xi.imag());
    auto rho = [A, p](double u) { return A * p * std::pow(u, -p - 1.0); };
    if (rate * X > 46.0) return 0.0;
    std::complex<double> total = 0.0;
    double hi = X;
    if (rate > 0.0) {
        hi = std::min(X + 46.0 / rate, X * 1e6);
    } else {
        // pure oscillation: integrate a stretch, close with integration by parts
        hi = (freq > 0.0) ? std::max(X, 30.0 / freq) : X * 1e6;
    }
    if (hi > X) {
        const double cap = freq > 0.0 ? 3.0 / freq : kInf;
        auto re = [&](double u) { return std::exp(-rate * u) * std::cos(xi.imag() * u) * rho(u); };
        auto im = [&](double u) { return -std::exp(-rate * u) * std::sin(xi.imag() * u) * rho(u); };
        total += std::complex<double>(
            integrate_adaptive(re, X, hi, 1e-14, 1e-12, 800, cap).value,
            integrate_adaptive(im, X, hi, 1e-14, 1e-12, 800, cap).value);
    }
    if (rate <= 0.0 && freq > 0.0) {
        // three-term integration-by-parts closure at hi
        const std::complex<double> ix = xi;  // here xi = i*lambda
        const double r0 = rho(hi);
        const double r1 = -(p + 1.0) / hi * r0;
        const double r2 = (p + 1.0) * (p + 2.0) / (hi * hi) * r0;
        total += std::exp(-ix * hi) * (r0 / ix + r1 / (ix * ix) + r2 / (ix * ix * ix));
    } else if (rate <= 0.0 && freq == 0.0) {
        total += A * std::pow(hi, -p);  // remaining mass, xi == 0 case
    }
    return total;
}

std::complex<double> tab_jump_psi(const TabulatedTail& j, std::complex<double> xi) {
    if (xi.real() < 0.0)
        throw DomainError("tabulated tail: cumulant defined for Re(xi) >= 0 only");
    if (xi == std::complex<double>(0.0, 0.0)) return 0.0;
    // psi_jump = int_0^inf (e^{-xi u} - 1 + xi u) dnu~(u)
    std::complex<double> total = 0.0;
    const auto segs = segments(j);
    for (const auto& s : segs) {
        if (s.p == 0.0) continue;
        if (s.lo == 0.0) {
            const double delta = s.hi * 1e-6;
            total += 0.5 * xi * xi * seg_moment(s, 2.0, 0.0, delta);
            auto f = [&](double u) {
                return (std::exp(-xi * u) - 1.0 + xi * u) * s.A * s.p *
                       std::pow(u, -s.p - 1.0);
            };
            auto re = [&](double u) { return f(u).real(); };
            auto im = [&](double u) { return f(u).imag(); };
            const double cap = std::abs(xi.imag()) > 0.0 ? 3.0 / std::abs(xi.imag()) : kInf;
            total += std::complex<double>(
                integrate_adaptive(re, delta, s.hi, 1e-15, 1e-12, 800, cap).value,
                integrate_adaptive(im, delta, s.hi, 1e-15, 1e-12, 800, cap).value);
        } else if (s.hi < kInf) {
            auto f = [&](double u) {
                return (std::exp(-xi * u) - 1.0 + xi * u) * s.A * s.p *
                       std::pow(u, -s.p - 1.0);
            };
            auto re = [&](double u) { return f(u).real(); };
            auto im = [&](double u) { return f(u).imag(); };
            const double cap = std::abs(xi.imag()) > 0.0 ? 3.0 / std::abs(xi.imag()) : kInf;
            total += std::complex<double>(
                integrate_adaptive(re, s.lo, s.hi, 1e-15, 1e-12, 800, cap).value,
                integrate_adaptive(im, s.lo, s.hi, 1e-15, 1e-12, 800, cap).value);
        } else {
            // tail: (-1 + xi u) part in closed form, e^{-xi u} part separately
            const double X = s.lo;
            total += -seg_moment(s, 0.0, X, kInf) + xi * seg_moment(s, 1.0, X, kInf);
            total += seg_exp_tail(X, s.A, s.p, xi);
        }
    }
    return total;
}

} // namespace

void validate(const JumpMeasure& j) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
            } else if constexpr (std::is_same_v<T, StableTail>) {
                if (!(m.C > 0.0)) throw InvalidInputError("stable: C must be positive");
                if (!(m.alpha > 1.0 && m.alpha < 2.0))
                    throw InvalidInputError("stable: alpha must lie in (1,2)");
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                if (!(m.C > 0.0)) throw InvalidInputError("tempered: C must be positive");
                if (!(m.alpha > 1.0 && m.alpha < 2.0))
                    throw InvalidInputError("tempered: alpha must lie in (1,2)");
                if (!(m.theta > 0.0))
                    throw InvalidInputError("tempered: theta must be positive");
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                if (!(m.a > 0.0)) throw InvalidInputError("exponential: a must be positive");
                if (!(m.eta > 0.0))
                    throw InvalidInputError("exponential: eta must be positive");
            } else if constexpr (std::is_same_v<T, TabulatedTail>) {
                if (m.x.empty() || m.x.size() != m.nu_bar.size())
                    throw InvalidInputError("tabulated: need matching nonempty knots");
                for (std::size_t i = 0; i < m.x.size(); ++i) {
                    if (!(m.x[i] > 0.0) || !(m.nu_bar[i] > 0.0))
                        throw InvalidInputError("tabulated: knots must be positive");
                    if (i > 0 && !(m.x[i] > m.x[i - 1]))
                        throw InvalidInputError("tabulated: abscissas must be strictly monotone");
                    if (i > 0 && !(m.nu_bar[i] <= m.nu_bar[i - 1]))
                        throw InvalidInputError("tabulated: tail values must be nonincreasing");
                }
                if (!(m.tail_index > 1.0))
                    throw AdmissibilityError(
                        "tabulated: tail index must exceed 1 (finite mean beyond -1)");
                if (std::abs(m.tail_index - 2.0) < 1e-9)
                    throw UnsupportedError("tabulated: tail index 2 is not classifiable");
                const auto segs = segments(m);
                if (!(segs.front().p < 2.0))
                    throw AdmissibilityError(
                        "tabulated: local index near 0 must be below 2 (finite z^2 integral)");
                if (!(segs.front().p >= 0.0))
                    throw InvalidInputError("tabulated: tail must be nonincreasing near 0");
            }
        },
        j);
}

bool has_jumps(const JumpMeasure& j) { return !std::holds_alternative<NoJumps>(j); }

double tail_mass(const JumpMeasure& j, double x) {
    require_positive_x(x);
    return std::visit(
        [x](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                return m.C * std::pow(x, -m.alpha) / m.alpha;
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                return m.C * std::pow(m.theta, m.alpha) *
                       gamma_inc_upper(-m.alpha, m.theta * x);
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                return m.a * std::exp(-m.eta * x);
            } else {
                for (const auto& s : segments(m))
                    if (x >= s.lo && (x < s.hi || s.hi == kInf))
                        return s.A * std::pow(x, -s.p);
                return 0.0;
            }
        },
        j);
}

double truncated_second_moment(const JumpMeasure& j, double x) {
    require_positive_x(x);
    return std::visit(
        [x](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                return m.C * std::pow(x, 2.0 - m.alpha) / (2.0 - m.alpha);
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                return m.C * std::pow(m.theta, m.alpha - 2.0) *
                       gsl_sf_gamma(2.0 - m.alpha) *
                       gsl_sf_gamma_inc_P(2.0 - m.alpha, m.theta * x);
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                const double e = std::exp(-m.eta * x);
                return m.a * (2.0 / (m.eta * m.eta) -
                              e * (x * x + 2.0 * x / m.eta + 2.0 / (m.eta * m.eta)));
            } else {
                return tab_moment(m, 2.0, 0.0, x);
            }
        },
        j);
}

double second_moment(const JumpMeasure& j) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                return kInf;
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                return m.C * std::pow(m.theta, m.alpha - 2.0) * gsl_sf_gamma(2.0 - m.alpha);
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                return 2.0 * m.a / (m.eta * m.eta);
            } else {
                return tab_moment(m, 2.0, 0.0, kInf);
            }
        },
        j);
}

double mean_beyond(const JumpMeasure& j, double x) {
    require_positive_x(x);
    return std::visit(
        [x](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                return m.C * std::pow(x, 1.0 - m.alpha) / (m.alpha - 1.0);
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                return m.C * std::pow(m.theta, m.alpha - 1.0) *
                       gamma_inc_upper(1.0 - m.alpha, m.theta * x);
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                return m.a * std::exp(-m.eta * x) * (x + 1.0 / m.eta);
            } else {
                return tab_moment(m, 1.0, x, kInf);
            }
        },
        j);
}

double lambda_minus(const JumpMeasure& j) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) return -kInf;
            else if constexpr (std::is_same_v<T, StableTail>) return 0.0;
            else if constexpr (std::is_same_v<T, TemperedStableTail>) return -m.theta;
            else if constexpr (std::is_same_v<T, ExponentialJumps>) return -m.eta;
            else return 0.0;
        },
        j);
}

std::complex<double> jump_psi(const JumpMeasure& j, std::complex<double> xi) {
    if (xi == std::complex<double>(0.0, 0.0)) return 0.0;
    return std::visit(
        [xi](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                if (xi.real() < 0.0)
                    throw DomainError("stable: cumulant defined for Re(xi) >= 0 only");
                std::complex<double> pw;
                if (xi.real() == 0.0) {
                    // (i lambda)^alpha = |lambda|^alpha e^{i sgn(lambda) pi alpha / 2}
                    const double lam = xi.imag();
                    const double arg = (lam >= 0.0 ? 1.0 : -1.0) * M_PI * m.alpha / 2.0;
                    pw = std::polar(std::pow(std::abs(lam), m.alpha), arg);
                } else {
                    pw = std::pow(xi, m.alpha);
                }
                return m.C * gamma_neg(m.alpha) * pw;
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                if (!(xi.real() > -m.theta))
                    throw DomainError("tempered: Re(xi) must exceed -theta");
                const double th = m.theta;
                const std::complex<double> pw = std::pow(th + xi, m.alpha);
                return m.C * gamma_neg(m.alpha) *
                       (pw - std::pow(th, m.alpha) - m.alpha * std::pow(th, m.alpha - 1.0) * xi);
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                if (!(xi.real() > -m.eta))
                    throw DomainError("exponential: Re(xi) must exceed -eta");
                return m.a * (m.eta / (m.eta + xi) - 1.0 + xi / m.eta);
            } else {
                return tab_jump_psi(m, xi);
            }
        },
        j);
}

double jump_psi_prime(const JumpMeasure& j, double lambda) {
    return std::visit(
        [lambda](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                if (lambda < 0.0)
                    throw DomainError("stable: derivative defined for lambda >= 0 only");
                if (lambda == 0.0) return 0.0;
                return m.C * gamma_neg(m.alpha) * m.alpha * std::pow(lambda, m.alpha - 1.0);
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                if (!(lambda > -m.theta))
                    throw DomainError("tempered: lambda must exceed -theta");
                return m.C * gamma_neg(m.alpha) * m.alpha *
                       (std::pow(m.theta + lambda, m.alpha - 1.0) -
                        std::pow(m.theta, m.alpha - 1.0));
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                if (!(lambda > -m.eta))
                    throw DomainError("exponential: lambda must exceed -eta");
                const double s = m.eta + lambda;
                return m.a * (1.0 / m.eta - m.eta / (s * s));
            } else {
                if (lambda < 0.0)
                    throw DomainError("tabulated: derivative defined for lambda >= 0 only");
                if (lambda == 0.0) return 0.0;
                // int u (1 - e^{-lambda u}) dnu~(u)
                double total = 0.0;
                for (const auto& s : segments(m)) {
                    if (s.p == 0.0) continue;
                    auto f = [&](double u) {
                        return u * (1.0 - std::exp(-lambda * u)) * s.A * s.p *
                               std::pow(u, -s.p - 1.0);
                    };
                    if (s.lo == 0.0) {
                        const double delta = s.hi * 1e-7;
                        total += lambda * seg_moment(s, 2.0, 0.0, delta);
                        total += integrate_adaptive(f, delta, s.hi, 1e-14, 1e-11, 600, kInf).value;
                    } else if (s.hi < kInf) {
                        total += integrate_adaptive(f, s.lo, s.hi, 1e-14, 1e-11, 600, kInf).value;
                    } else {
                        const double hi = s.lo + 46.0 / lambda;
                        total += integrate_adaptive(f, s.lo, hi, 1e-14, 1e-11, 600, kInf).value;
                        total += seg_moment(s, 1.0, hi, kInf);
                    }
                }
                return total;
            }
        },
        j);
}

double jump_psi_dprime(const JumpMeasure& j, double lambda) {
    return std::visit(
        [lambda](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, StableTail>) {
                if (lambda < 0.0)
                    throw DomainError("stable: derivative defined for lambda >= 0 only");
                if (lambda == 0.0) return kInf;
                return m.C * gamma_neg(m.alpha) * m.alpha * (m.alpha - 1.0) *
                       std::pow(lambda, m.alpha - 2.0);
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                if (!(lambda > -m.theta))
                    throw DomainError("tempered: lambda must exceed -theta");
                return m.C * gamma_neg(m.alpha) * m.alpha * (m.alpha - 1.0) *
                       std::pow(m.theta + lambda, m.alpha - 2.0);
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                if (!(lambda > -m.eta))
                    throw DomainError("exponential: lambda must exceed -eta");
                const double s = m.eta + lambda;
                return 2.0 * m.a * m.eta / (s * s * s);
            } else {
                if (lambda < 0.0)
                    throw DomainError("tabulated: derivative defined for lambda >= 0 only");
                if (lambda == 0.0) return tab_moment(m, 2.0, 0.0, kInf);
                double total = 0.0;
                for (const auto& s : segments(m)) {
                    if (s.p == 0.0) continue;
                    auto f = [&](double u) {
                        return u * u * std::exp(-lambda * u) * s.A * s.p *
                               std::pow(u, -s.p - 1.0);
                    };
                    const double hi = std::min(s.hi, s.lo + 46.0 / lambda + 1.0);
                    total += integrate_adaptive(f, s.lo, hi, 1e-14, 1e-11, 600, kInf).value;
                }
                return total;
            }
        },
        j);
}

JumpMeasure tilt(const JumpMeasure& j, double lambda_star) {
    if (!(lambda_star < 0.0)) throw DomainError("tilt parameter must be negative");
    return std::visit(
        [lambda_star](const auto& m) -> JumpMeasure {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                return NoJumps{};
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                const double th = m.theta + lambda_star;
                if (!(th > 0.0))
                    throw HypothesisError("tilt exceeds the tempering rate");
                return TemperedStableTail{m.C, m.alpha, th};
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                const double eta = m.eta + lambda_star;
                if (!(eta > 0.0)) throw HypothesisError("tilt exceeds the jump rate");
                return ExponentialJumps{m.a * m.eta / eta, eta};
            } else {
                throw HypothesisError(
                    "exponential tilt requires a finite negative lambda_minus; "
                    "polynomial tails admit none");
            }
        },
        j);
}

} // namespace fpt
