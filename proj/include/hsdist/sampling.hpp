#pragma once

#include <cmath>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"
#include "hsdist/ensemble.hpp"
#include "hsdist/rng.hpp"

namespace hsdist {

/// n x m Gaussian matrix. beta=1: real entries, variance 1. beta=2: real and
/// imaginary parts each variance 1/2, so E|G(j,k)|^2 = 1 and E[G G'] = m * I
/// in both classes. Entries are drawn row-major, real part before imaginary.
inline ComplexMatrix sample_ginibre(const EnsembleParams& p, RngStream& rng) {
    ComplexMatrix g(p.n, p.m);
    if (p.beta == 1) {
        for (int j = 0; j < p.n; ++j)
            for (int k = 0; k < p.m; ++k) g(j, k) = rng.next_normal();
    } else {
        const double w = std::sqrt(0.5);
        for (int j = 0; j < p.n; ++j)
            for (int k = 0; k < p.m; ++k) {
                const double re = rng.next_normal();
                const double im = rng.next_normal();
                g(j, k) = cplx(w * re, w * im);
            }
    }
    return g;
}

/// W = G G' for a Ginibre draw G; positive semidefinite by construction.
inline HermitianMatrix sample_wishart(const EnsembleParams& p, RngStream& rng) {
    const ComplexMatrix g = sample_ginibre(p, rng);
    ComplexMatrix w(p.n, p.n);
    for (int j = 0; j < p.n; ++j) {
        for (int k = j; k < p.n; ++k) {
            cplx s = 0.0;
            for (int l = 0; l < p.m; ++l) s += g(j, l) * std::conj(g(k, l));
            if (k == j) {
                w(j, j) = cplx(s.real(), 0.0);
            } else {
                w(j, k) = s;
                w(k, j) = std::conj(s);
            }
        }
    }
    return HermitianMatrix(std::move(w));
}

/// Unit-trace normalization of a Wishart draw; the resulting matrix is a
/// random density matrix of dimension n with environment dimension m.
inline DensityMatrix sample_density_matrix(const EnsembleParams& p, RngStream& rng) {
    HermitianMatrix w = sample_wishart(p, rng);
    const double tr = w.trace_real();
    if (!(tr > 0.0)) throw DegenerateSample("sample_density_matrix: tr W not positive");
    ComplexMatrix m = w.matrix();
    m *= cplx(1.0 / tr, 0.0);
    for (int i = 0; i < p.n; ++i) m(i, i) = cplx(m(i, i).real(), 0.0);
    return DensityMatrix(HermitianMatrix(std::move(m)));
}

}  // namespace hsdist
