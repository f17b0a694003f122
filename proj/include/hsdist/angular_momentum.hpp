#pragma once

#include <cmath>
#include <vector>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"

namespace hsdist {

struct AngularMomentumOps {
    HermitianMatrix jy;
    HermitianMatrix jz;
};

namespace detail {

inline int spin_dim(double j) {
    const double two_j = 2.0 * j;
    const double rounded = std::round(two_j);
    if (j < 0.0 || std::abs(two_j - rounded) > 1e-9) throw DomainError("spin j must be a nonnegative half-integer");
    return static_cast<int>(rounded) + 1;
}

}  // namespace detail

/// Jy and Jz for spin j in the Jz eigenbasis ordered m = j, j-1, ..., -j
/// (hbar = 1). Built from the ladder operators
/// (J+)_{m+1,m} = sqrt(j(j+1) - m(m+1)), Jy = (J+ - J-)/(2i).
inline AngularMomentumOps angular_momentum_ops(double j) {
    const int dim = detail::spin_dim(j);
    ComplexMatrix jz(dim, dim);
    ComplexMatrix jy(dim, dim);
    for (int p = 0; p < dim; ++p) jz(p, p) = j - p;
    for (int p = 1; p < dim; ++p) {
        const double m = j - p;
        const double amp = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        // J+ raises m: row p-1, column p. Jy = (J+ - J-)/(2i)
        jy(p - 1, p) = cplx(0.0, -0.5 * amp);
        jy(p, p - 1) = cplx(0.0, 0.5 * amp);
    }
    return {HermitianMatrix(std::move(jy)), HermitianMatrix(std::move(jz))};
}

/// Directed angular momentum state |theta, phi> in the Jz basis:
/// amplitude on m = j - p is sqrt(C(2j, p)) cos(theta/2)^{2j-p}
/// sin(theta/2)^p e^{i p phi}.
inline std::vector<cplx> coherent_state(double j, double theta, double phi) {
    const int dim = detail::spin_dim(j);
    const int two_j = dim - 1;
    std::vector<cplx> amps(dim);
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    // log-binomial keeps large spins finite
    double norm_sq = 0.0;
    for (int p = 0; p < dim; ++p) {
        const double log_binom = std::lgamma(two_j + 1.0) - std::lgamma(p + 1.0) - std::lgamma(two_j - p + 1.0);
        const double mag = std::exp(0.5 * log_binom) * std::pow(ch, two_j - p) * std::pow(sh, p);
        amps[p] = mag * cplx(std::cos(p * phi), std::sin(p * phi));
        norm_sq += mag * mag;
    }
    if (!(norm_sq > 0.0)) throw DomainError("coherent_state: zero norm");
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (cplx& a : amps) a *= inv;
    return amps;
}

}  // namespace hsdist
