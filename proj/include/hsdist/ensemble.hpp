#pragma once

#include <cmath>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"

namespace hsdist {

/// Dyson index, matrix dimension and degrees of freedom. beta=1 selects the
/// real-symmetric class, beta=2 the complex-Hermitian one. m >= n keeps the
/// matrix-element density normalizable.
struct EnsembleParams {
    int beta;
    int n;
    int m;

    EnsembleParams(int beta_, int n_, int m_) : beta(beta_), n(n_), m(m_) {
        if (beta != 1 && beta != 2) throw DomainError("EnsembleParams: beta must be 1 or 2");
        if (n < 1) throw DomainError("EnsembleParams: n must be positive");
        if (m < n) throw DomainError("EnsembleParams: m >= n required");
    }

    double alpha() const { return 0.5 * beta * (m - n + 1) - 1.0; }
};

/// Hermitian, positive semidefinite, unit-trace matrix. Construction checks
/// Hermiticity and the trace; positivity is asserted statistically by the
/// test suites (an eigendecomposition per sample would dominate hot loops).
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianMatrix h, const Tolerances& tol = tolerances()) : h_(std::move(h)) {
        if (std::abs(h_.trace_real() - 1.0) > tol.trace_one)
            throw DomainError("DensityMatrix: trace differs from 1");
    }

    int dim() const { return h_.dim(); }
    const HermitianMatrix& hermitian() const { return h_; }
    const ComplexMatrix& matrix() const { return h_.matrix(); }
    const cplx& operator()(int r, int c) const { return h_(r, c); }

    double purity() const { return h_.trace_sq(); }

    static DensityMatrix maximally_mixed(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0 / n;
        return DensityMatrix(HermitianMatrix(std::move(m)));
    }

  private:
    HermitianMatrix h_;
};

}  // namespace hsdist
