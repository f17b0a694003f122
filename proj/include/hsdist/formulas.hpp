#pragma once

#include <cmath>
#include <optional>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"
#include "hsdist/ensemble.hpp"

namespace hsdist {

/// tr X and tr X^2 of a fixed Hermitian matrix; all the closed forms need
/// only these two aggregates.
struct SpectrumSummary {
    double trace = 0.0;
    double trace_sq = 0.0;
    std::optional<int> dim;

    SpectrumSummary(double tr, double tr_sq, std::optional<int> d = std::nullopt)
        : trace(tr), trace_sq(tr_sq), dim(d) {
        if (d && trace_sq < trace * trace / *d - 1e-9)
            throw DomainError("SpectrumSummary: tr X^2 < (tr X)^2 / dim");
    }

    static SpectrumSummary of(const HermitianMatrix& x) {
        return SpectrumSummary(x.trace_real(), x.trace_sq(), x.dim());
    }
};

/// Mean of tr W^2 over the Wishart ensemble: n m (n + m + 2/beta - 1).
inline double mean_tr_w2(const EnsembleParams& p) {
    return static_cast<double>(p.n) * p.m * (p.n + p.m + 2.0 / p.beta - 1.0);
}

/// Mean of tr(W X) for fixed Hermitian X: m tr X.
inline double mean_tr_wx(const EnsembleParams& p, const SpectrumSummary& x) {
    return static_cast<double>(p.m) * x.trace;
}

/// Mean square distance between a Wishart draw and a fixed Hermitian X.
inline double d2_wishart_fixed(const EnsembleParams& p, const SpectrumSummary& x) {
    return mean_tr_w2(p) + x.trace_sq - 2.0 * p.m * x.trace;
}

/// Mean square distance between independent Wishart draws with m1 and m2
/// degrees of freedom: n [ (m1+m2)(n + 2/beta - 1) + (m1-m2)^2 ].
inline double d2_wishart_pair(int beta, int n, int m1, int m2) {
    EnsembleParams(beta, n, m1);  // validate
    EnsembleParams(beta, n, m2);
    const double dm = static_cast<double>(m1) - m2;
    return n * ((static_cast<double>(m1) + m2) * (n + 2.0 / beta - 1.0) + dm * dm);
}

/// Mean purity of a random density matrix: beta(n+m+2/beta-1)/(beta n m + 2).
inline double mean_purity(const EnsembleParams& p) {
    return p.beta * (p.n + p.m + 2.0 / p.beta - 1.0) / (static_cast<double>(p.beta) * p.n * p.m + 2.0);
}

/// Mean square distance between a random density matrix and a fixed density
/// matrix of purity tr sigma^2.
inline double d2_rho_fixed(const EnsembleParams& p, double purity_sigma) {
    if (purity_sigma < 1.0 / p.n - 1e-12 || purity_sigma > 1.0 + 1e-12)
        throw InvalidPurity("d2_rho_fixed: purity must lie in [1/n, 1]");
    return purity_sigma + mean_purity(p) - 2.0 / p.n;
}

/// Mean square distance between two independent random density matrices.
inline double d2_rho_pair(int beta, int n, int m1, int m2) {
    return mean_purity(EnsembleParams(beta, n, m1)) + mean_purity(EnsembleParams(beta, n, m2)) - 2.0 / n;
}

struct LogNormConstants {
    double log_c;        // matrix-element density normalization
    double log_c_fixed;  // unit-trace ensemble normalization
};

/// Both normalization constants in log space; Gamma(beta n m / 2) would
/// overflow double precision well before the parameter ranges used here.
inline LogNormConstants log_norm_constants(const EnsembleParams& p) {
    const double half_beta_nm = 0.5 * p.beta * p.n * p.m;
    double log_c_inv = half_beta_nm * std::log(2.0 / p.beta) + 0.25 * p.beta * p.n * (p.n - 1) * std::log(M_PI);
    for (int i = 1; i <= p.n; ++i) log_c_inv += std::lgamma(0.5 * p.beta * (p.m - i + 1));
    const double log_c = -log_c_inv;
    const double log_c_fixed = log_c + half_beta_nm * std::log(2.0 / p.beta) + std::lgamma(half_beta_nm);
    return {log_c, log_c_fixed};
}

}  // namespace hsdist
