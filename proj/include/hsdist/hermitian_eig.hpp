#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"

namespace hsdist {

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary, columns are eigenvectors

    EigenDecomposition(int n) : eigenvectors(n, n) {}
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Rotations zero one
/// off-diagonal pair at a time; convergence is measured by the off-diagonal
/// Frobenius norm relative to the input norm.
inline EigenDecomposition hermitian_eig(const HermitianMatrix& h, const Tolerances& tol = tolerances()) {
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double total_frob = std::sqrt(a.frobenius_sq());
    const double off_target = tol.jacobi_off_rel * total_frob;

    auto off_frob = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
        return std::sqrt(s);
    };

    bool converged = (total_frob == 0.0) || n == 1 || off_frob() <= off_target;
    for (int sweep = 0; sweep < tol.jacobi_max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double b = std::abs(apq);
                if (b == 0.0) continue;
                const cplx phase = apq / b;  // e^{i phi}

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;

                // A <- U' A U with U = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
                a(p, p) = app - t * b;
                a(q, q) = aqq + t * b;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = c * arp - std::conj(sp) * arq;
                    a(r, q) = sp * arp + c * arq;
                    a(p, r) = std::conj(a(r, p));
                    a(q, r) = std::conj(a(r, q));
                }
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p);
                    const cplx vrq = v(r, q);
                    v(r, p) = c * vrp - std::conj(sp) * vrq;
                    v(r, q) = sp * vrp + c * vrq;
                }
            }
        }
        converged = off_frob() <= off_target;
    }
    if (!converged) throw ConvergenceFailure("hermitian_eig: Jacobi sweeps exhausted");

    EigenDecomposition dec(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    dec.eigenvalues.resize(n);
    for (int k = 0; k < n; ++k) {
        dec.eigenvalues[k] = a(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) dec.eigenvectors(r, k) = v(r, order[k]);
    }
    return dec;
}

/// exp(-i * phase_scale * H) by spectral decomposition.
inline ComplexMatrix unitary_from_hermitian(const HermitianMatrix& h, double phase_scale,
                                            const Tolerances& tol = tolerances()) {
    const EigenDecomposition dec = hermitian_eig(h, tol);
    const int n = h.dim();
    ComplexMatrix u(n, n);
    // U = V diag(e^{-i s lambda}) V'
    for (int j = 0; j < n; ++j) {
        const cplx ph = std::polar(1.0, -phase_scale * dec.eigenvalues[j]);
        for (int r = 0; r < n; ++r) {
            const cplx col = ph * dec.eigenvectors(r, j);
            for (int c = 0; c < n; ++c) u(r, c) += col * std::conj(dec.eigenvectors(c, j));
        }
    }
    return u;
}

/// Trace out the second (dimB-sized) tensor factor of a Hermitian matrix on
/// a dimA*dimB product space.
inline HermitianMatrix partial_trace_second(const ComplexMatrix& m, int dimA, int dimB,
                                            const Tolerances& tol = tolerances()) {
    if (dimA < 1 || dimB < 1 || m.rows() != m.cols() || m.rows() != dimA * dimB)
        throw ShapeError("partial_trace_second: dimensions do not match matrix size");
    for (int j = 0; j < m.rows(); ++j)
        for (int k = j; k < m.cols(); ++k)
            if (std::abs(m(j, k) - std::conj(m(k, j))) > tol.hermiticity)
                throw HermiticityViolation("partial_trace_second: input not Hermitian");

    ComplexMatrix r(dimA, dimA);
    for (int a = 0; a < dimA; ++a) {
        for (int a2 = a; a2 < dimA; ++a2) {
            cplx s = 0.0;
            for (int b = 0; b < dimB; ++b) s += m(a * dimB + b, a2 * dimB + b);
            r(a, a2) = s;
            if (a2 != a) r(a2, a) = std::conj(s);
        }
    }
    for (int a = 0; a < dimA; ++a) r(a, a) = cplx(r(a, a).real(), 0.0);
    return HermitianMatrix(std::move(r), tol);
}

}  // namespace hsdist
