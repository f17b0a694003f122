#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hsdist/complex_matrix.hpp"
#include "hsdist/hermitian_eig.hpp"
#include "hsdist/rng.hpp"

using namespace hsdist;

namespace {

HermitianMatrix random_hermitian(int n, RngStream& rng, bool complex_entries = true) {
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = rng.next_normal();
        for (int j = i + 1; j < n; ++j) {
            const double re = rng.next_normal();
            const double im = complex_entries ? rng.next_normal() : 0.0;
            a(i, j) = cplx(re, im);
            a(j, i) = cplx(re, -im);
        }
    }
    return HermitianMatrix(std::move(a));
}

HermitianMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return HermitianMatrix(std::move(m));
}

double reconstruction_error(const HermitianMatrix& h, const EigenDecomposition& dec) {
    const int n = h.dim();
    ComplexMatrix rec(n, n);
    for (int k = 0; k < n; ++k)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                rec(r, c) += dec.eigenvalues[k] * dec.eigenvectors(r, k) * std::conj(dec.eigenvectors(c, k));
    rec -= h.matrix();
    const double denom = std::sqrt(std::max(h.matrix().frobenius_sq(), 1e-300));
    return std::sqrt(rec.frobenius_sq()) / denom;
}

double unitarity_error(const ComplexMatrix& u) {
    ComplexMatrix g = u.adjoint() * u;
    g -= ComplexMatrix::identity(u.rows());
    return g.max_abs();
}

}  // namespace

TEST_CASE("hermitian_eig identity and zero") {
    const auto dec_i = hermitian_eig(HermitianMatrix::identity(3));
    for (double ev : dec_i.eigenvalues) REQUIRE(ev == Catch::Approx(1.0).margin(1e-14));

    const auto dec_z = hermitian_eig(HermitianMatrix::zero(4));
    for (double ev : dec_z.eigenvalues) REQUIRE(ev == 0.0);
}

TEST_CASE("hermitian_eig 2x2 closed form") {
    // [[2, 1], [1, -1/2]] has eigenvalues (3 +- sqrt(41)) / 4
    ComplexMatrix x(2, 2);
    x(0, 0) = 2.0;
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    x(1, 1) = -0.5;
    const auto dec = hermitian_eig(HermitianMatrix(std::move(x)));
    const double lo = (3.0 - std::sqrt(41.0)) / 4.0;
    const double hi = (3.0 + std::sqrt(41.0)) / 4.0;
    REQUIRE(dec.eigenvalues[0] == Catch::Approx(lo).epsilon(1e-13));
    REQUIRE(dec.eigenvalues[1] == Catch::Approx(hi).epsilon(1e-13));
}

TEST_CASE("hermitian_eig random matrices: reconstruction, unitarity, ordering, trace") {
    RngStream rng(99);
    for (int n : {2, 3, 5, 8, 13, 21}) {
        for (int rep = 0; rep < 3; ++rep) {
            const HermitianMatrix h = random_hermitian(n, rng, rep % 2 == 0);
            const auto dec = hermitian_eig(h);
            REQUIRE(reconstruction_error(h, dec) < tolerances().reconstruction);
            REQUIRE(unitarity_error(dec.eigenvectors) < tolerances().unitarity);
            REQUIRE(std::is_sorted(dec.eigenvalues.begin(), dec.eigenvalues.end()));
            double sum = 0.0;
            for (double ev : dec.eigenvalues) sum += ev;
            REQUIRE(sum == Catch::Approx(h.trace_real()).epsilon(1e-10).margin(1e-10));
        }
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix bad(2, 2);
    bad(0, 1) = cplx(1.0, 0.0);
    bad(1, 0) = cplx(2.0, 0.0);
    REQUIRE_THROWS_AS(HermitianMatrix(std::move(bad)), HermiticityViolation);
}

TEST_CASE("unitary_from_hermitian basics") {
    // exp(0) = I
    const ComplexMatrix u0 = unitary_from_hermitian(HermitianMatrix::zero(3), 1.7);
    ComplexMatrix d = u0;
    d -= ComplexMatrix::identity(3);
    REQUIRE(d.max_abs() < 1e-14);

    // diagonal case: H = diag(1, -1), scale pi -> diag(-1, -1)
    const ComplexMatrix u1 = unitary_from_hermitian(HermitianMatrix::diagonal({1.0, -1.0}), M_PI);
    REQUIRE(std::abs(u1(0, 0) - cplx(-1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(u1(1, 1) - cplx(-1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(u1(0, 1)) < 1e-12);

    // exp(-i theta sy) = cos(theta) I - i sin(theta) sy at theta = pi/2
    const ComplexMatrix u2 = unitary_from_hermitian(pauli_y(), 0.5 * M_PI);
    REQUIRE(std::abs(u2(0, 0)) < 1e-12);
    REQUIRE(std::abs(u2(0, 1) - cplx(-1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(u2(1, 0) - cplx(1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(u2(1, 1)) < 1e-12);
}

TEST_CASE("unitary_from_hermitian invariants on random input") {
    RngStream rng(7);
    for (int n : {2, 6, 12}) {
        const HermitianMatrix h = random_hermitian(n, rng);
        const ComplexMatrix u = unitary_from_hermitian(h, 0.37);
        REQUIRE(unitarity_error(u) < tolerances().unitarity);
        // commutes with H
        ComplexMatrix c = u * h.matrix() - h.matrix() * u;
        REQUIRE(c.max_abs() < 1e-10);
        // group property: U(a) U(b) = U(a + b)
        const ComplexMatrix ua = unitary_from_hermitian(h, 0.81);
        const ComplexMatrix uab = unitary_from_hermitian(h, 0.37 + 0.81);
        ComplexMatrix diff = u * ua - uab;
        REQUIRE(diff.max_abs() < 1e-9);
    }
}

TEST_CASE("partial_trace_second product state and identity") {
    RngStream rng(11);
    const HermitianMatrix a = random_hermitian(3, rng);
    // rho_b: unit-trace positive diagonal
    ComplexMatrix b(2, 2);
    b(0, 0) = 0.3;
    b(1, 1) = 0.7;
    const ComplexMatrix prod = kron(a.matrix(), b);
    const HermitianMatrix red = partial_trace_second(prod, 3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) REQUIRE(std::abs(red(i, j) - a(i, j)) < 1e-12);

    const HermitianMatrix red_id = partial_trace_second(ComplexMatrix::identity(12), 3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            REQUIRE(std::abs(red_id(i, j) - (i == j ? cplx(4.0, 0.0) : cplx(0.0, 0.0))) < 1e-14);
}

TEST_CASE("partial_trace_second Bell state") {
    // |psi> = (|00> + |11>)/sqrt(2) reduces to I/2
    ComplexMatrix m(4, 4);
    m(0, 0) = 0.5;
    m(0, 3) = 0.5;
    m(3, 0) = 0.5;
    m(3, 3) = 0.5;
    const HermitianMatrix red = partial_trace_second(m, 2, 2);
    REQUIRE(std::abs(red(0, 0) - cplx(0.5, 0.0)) < 1e-14);
    REQUIRE(std::abs(red(1, 1) - cplx(0.5, 0.0)) < 1e-14);
    REQUIRE(std::abs(red(0, 1)) < 1e-14);
}

TEST_CASE("partial_trace_second preserves trace, hermiticity, positivity") {
    RngStream rng(23);
    for (int rep = 0; rep < 5; ++rep) {
        // PSD input: G G' on the product space
        ComplexMatrix g(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) g(i, j) = cplx(rng.next_normal(), rng.next_normal());
        const ComplexMatrix w = g * g.adjoint();
        const HermitianMatrix red = partial_trace_second(w, 2, 3);
        REQUIRE(red.trace_real() == Catch::Approx(w.trace().real()).epsilon(1e-12));
        const auto dec = hermitian_eig(red);
        REQUIRE(dec.eigenvalues.front() >= tolerances().psd_min_eig);
    }
}

TEST_CASE("partial_trace_second shape errors") {
    REQUIRE_THROWS_AS(partial_trace_second(ComplexMatrix::identity(6), 2, 2), ShapeError);
    ComplexMatrix nh(4, 4);
    nh(0, 1) = 1.0;  // not Hermitian
    REQUIRE_THROWS_AS(partial_trace_second(nh, 2, 2), HermiticityViolation);
}

TEST_CASE("hs_distance_sq basics") {
    const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 0.0});
    const HermitianMatrix b = HermitianMatrix::diagonal({0.0, 1.0});
    REQUIRE(hs_distance_sq(a, a) == 0.0);
    REQUIRE(hs_distance_sq(a, b) == Catch::Approx(2.0));

    const HermitianMatrix half = HermitianMatrix::diagonal({0.5, 0.5});
    REQUIRE(hs_distance_sq(half, a) == Catch::Approx(0.5));

    REQUIRE_THROWS_AS(hs_distance_sq(a, HermitianMatrix::identity(3)), ShapeError);
}

TEST_CASE("hs_distance_sq equals eigenvalue route and is symmetric") {
    RngStream rng(37);
    for (int rep = 0; rep < 6; ++rep) {
        const HermitianMatrix a = random_hermitian(5, rng);
        const HermitianMatrix b = random_hermitian(5, rng);
        const double d = hs_distance_sq(a, b);
        REQUIRE(d == hs_distance_sq(b, a));
        const HermitianMatrix diff(a.matrix() - b.matrix());
        double ev_sum = 0.0;
        for (double ev : hermitian_eig(diff).eigenvalues) ev_sum += ev * ev;
        REQUIRE(d == Catch::Approx(ev_sum).epsilon(1e-10));
    }
}
