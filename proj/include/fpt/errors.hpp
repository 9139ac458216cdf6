#ifndef FPT_ERRORS_HPP
#define FPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fpt {

// Error codes shared with the C API (see capi.h).
enum class ErrorCode : int {
    ok = 0,
    invalid_input = 1,   // malformed model spec / bad parameters
    domain = 2,          // argument outside an operation's domain
    admissibility = 3,   // triplet violates the integrability requirements
    hypothesis = 4,      // asymptote/transform hypotheses not satisfied
    convergence = 5,     // iteration or quadrature budget exhausted
    no_density = 6,      // marginal law has no density (e.g. compound Poisson, sigma=0)
    unsupported = 7,     // configuration outside the supported setting
    config = 8,          // inconsistent inputs (e.g. drift not risk-neutral)
    insufficient_samples = 9,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct AdmissibilityError : Error {
    explicit AdmissibilityError(const std::string& w) : Error(ErrorCode::admissibility, w) {}
};
struct HypothesisError : Error {
    explicit HypothesisError(const std::string& w) : Error(ErrorCode::hypothesis, w) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error(ErrorCode::convergence, w) {}
};
struct NoDensityError : Error {
    explicit NoDensityError(const std::string& w) : Error(ErrorCode::no_density, w) {}
};
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& w) : Error(ErrorCode::unsupported, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCode::config, w) {}
};
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& w) : Error(ErrorCode::invalid_input, w) {}
};
struct InsufficientSamplesError : Error {
    explicit InsufficientSamplesError(const std::string& w)
        : Error(ErrorCode::insufficient_samples, w) {}
};

} // namespace fpt

#endif
