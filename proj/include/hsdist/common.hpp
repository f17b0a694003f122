#pragma once

#include <stdexcept>
#include <string>

namespace hsdist {

/// Numerical tolerances shared across the library. Tests reference this
/// record rather than hard-coding their own constants.
struct Tolerances {
    double hermiticity = 1e-12;     // max |A(j,k) - conj(A(k,j))|
    double jacobi_off_rel = 1e-13;  // off-diagonal Frobenius / input Frobenius
    int jacobi_max_sweeps = 100;
    double unitarity = 1e-10;       // max |U'U - I|
    double reconstruction = 1e-10;  // relative Frobenius error of V D V'
    double trace_one = 1e-12;       // |tr(rho) - 1|
    double psd_min_eig = -1e-10;    // smallest admissible eigenvalue of rho
};

inline const Tolerances& tolerances() {
    static const Tolerances tol{};
    return tol;
}

struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

struct HermiticityViolation : std::invalid_argument {
    explicit HermiticityViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

struct UnsupportedParameter : std::invalid_argument {
    explicit UnsupportedParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateSample : std::runtime_error {
    explicit DegenerateSample(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPurity : std::domain_error {
    explicit InvalidPurity(const std::string& what) : std::domain_error(what) {}
};

struct SpecError : std::invalid_argument {
    explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hsdist
