#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hsdist/common.hpp"

namespace hsdist {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Value type; all operations allocate
/// fresh results.
class ComplexMatrix {
  public:
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 1 || cols < 1) throw ShapeError("matrix dimensions must be positive");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    cplx trace() const {
        require_square("trace");
        cplx t = 0.0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    double frobenius_sq() const {
        double s = 0.0;
        for (const cplx& v : a_) s += std::norm(v);
        return s;
    }

    double max_abs() const {
        double s = 0.0;
        for (const cplx& v : a_) s = std::max(s, std::abs(v));
        return s;
    }

    bool all_finite() const {
        for (const cplx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (cplx& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw ShapeError("matmul: inner dimensions differ");
        ComplexMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == 0.0) continue;
                const cplx* brow = &b.a_[static_cast<size_t>(k) * b.cols_];
                cplx* rrow = &r.a_[static_cast<size_t>(i) * r.cols_];
                for (int j = 0; j < b.cols_; ++j) rrow[j] += aik * brow[j];
            }
        }
        return r;
    }

    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw ShapeError("matvec: size mismatch");
        std::vector<cplx> r(rows_);
        for (int i = 0; i < rows_; ++i) {
            const cplx* row = &a_[static_cast<size_t>(i) * cols_];
            cplx s = 0.0;
            for (int j = 0; j < cols_; ++j) s += row[j] * v[j];
            r[i] = s;
        }
        return r;
    }

    void require_square(const char* op) const {
        if (rows_ != cols_) throw ShapeError(std::string(op) + ": matrix not square");
    }

  private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("shape mismatch");
    }

    int rows_, cols_;
    std::vector<cplx> a_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == 0.0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q) r(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return r;
}

/// Square matrix guaranteed Hermitian on construction (within
/// tolerances().hermiticity). Entries with beta=1 provenance stay real.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(ComplexMatrix m, const Tolerances& tol = tolerances()) : m_(std::move(m)) {
        m_.require_square("HermitianMatrix");
        if (!m_.all_finite()) throw DomainError("HermitianMatrix: non-finite entries");
        for (int j = 0; j < m_.rows(); ++j)
            for (int k = j; k < m_.cols(); ++k) {
                if (std::abs(m_(j, k) - std::conj(m_(k, j))) > tol.hermiticity)
                    throw HermiticityViolation("matrix is not Hermitian within tolerance");
            }
    }

    static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix(n, n)); }
    static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::identity(n)); }

    static HermitianMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return HermitianMatrix(std::move(m));
    }

    int dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& operator()(int r, int c) const { return m_(r, c); }

    double trace_real() const { return m_.trace().real(); }
    // tr(A^2) = sum |A(j,k)|^2 for Hermitian A
    double trace_sq() const { return m_.frobenius_sq(); }

  private:
    ComplexMatrix m_;
};

/// tr (A-B)^2, the squared Hilbert-Schmidt distance. No square root taken.
inline double hs_distance_sq(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw ShapeError("hs_distance_sq: dimension mismatch");
    double s = 0.0;
    for (int j = 0; j < a.dim(); ++j)
        for (int k = 0; k < a.dim(); ++k) s += std::norm(a(j, k) - b(j, k));
    return s;
}

}  // namespace hsdist
