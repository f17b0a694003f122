#pragma once

#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "hsdist/angular_momentum.hpp"
#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"
#include "hsdist/ensemble.hpp"
#include "hsdist/experiment.hpp"
#include "hsdist/formulas.hpp"
#include "hsdist/hermitian_eig.hpp"

namespace hsdist {

/// One coupled-top experiment: spins, kick strengths, coupling, sampling
/// schedule and the initial product coherent state.
struct KickedTopConfig {
    double j1 = 12.0;
    double j2 = 12.0;
    double k1 = 7.0;
    double k2 = 8.0;
    double epsilon = 1.0;
    long transient = 500;
    long samples = 5000;
    long stride = 1;
    double theta1 = 0.89, phi1 = 0.63;
    double theta2 = 0.45, phi2 = 0.16;

    int n_dim() const { return detail::spin_dim(j1); }
    int m_dim() const { return detail::spin_dim(j2); }

    void validate() const {
        detail::spin_dim(j1);
        detail::spin_dim(j2);
        if (transient < 0) throw DomainError("KickedTopConfig: transient must be nonnegative");
        if (samples < 1) throw DomainError("KickedTopConfig: samples must be positive");
        if (stride < 1) throw DomainError("KickedTopConfig: stride must be positive");
    }

    /// The reduced states only equilibrate to the unit-trace random matrix
    /// ensemble for strong kicks and nonzero coupling.
    bool chaotic_regime_warning() const { return std::min(k1, k2) < 6.0 || epsilon == 0.0; }
};

struct StateVector {
    int dim = 0;
    std::vector<cplx> amplitudes;

    double norm() const {
        double s = 0.0;
        for (const cplx& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }

    void normalize() {
        const double inv = 1.0 / norm();
        for (cplx& a : amplitudes) a *= inv;
    }
};

namespace detail {

/// One-period top propagator: exp(-i k/(2j) Jz^2) exp(-i pi/2 Jy). The kick
/// and the rotation act in sequence within each period; a single combined
/// exponential produces dynamics whose reduced states stay measurably away
/// from the unit-trace ensemble even deep in the chaotic regime.
inline ComplexMatrix single_top_propagator(double j, double k) {
    const AngularMomentumOps ops = angular_momentum_ops(j);
    const ComplexMatrix rot = unitary_from_hermitian(ops.jy, 0.5 * M_PI);
    const int dim = ops.jz.dim();
    // Jz^2 is diagonal here, so the kick factor is a row scaling
    ComplexMatrix u(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const double mz = ops.jz(r, r).real();
        const cplx ph = std::polar(1.0, -(k / (2.0 * j)) * mz * mz);
        for (int c = 0; c < dim; ++c) u(r, c) = ph * rot(r, c);
    }
    return u;
}

}  // namespace detail

/// Full Floquet operator U = (U1 x U2) U12 on the N1*N2 product space, with
/// U12 = exp(-i eps/sqrt(j1 j2) Jz1 x Jz2) diagonal in the product basis.
inline ComplexMatrix build_floquet(const KickedTopConfig& cfg) {
    cfg.validate();
    const ComplexMatrix u1 = detail::single_top_propagator(cfg.j1, cfg.k1);
    const ComplexMatrix u2 = detail::single_top_propagator(cfg.j2, cfg.k2);
    const int n1 = cfg.n_dim();
    const int n2 = cfg.m_dim();
    const double g = cfg.epsilon / std::sqrt(cfg.j1 * cfg.j2);

    ComplexMatrix u = kron(u1, u2);
    // right-multiplying by the diagonal U12 scales columns
    for (int c1 = 0; c1 < n1; ++c1) {
        const double mz1 = cfg.j1 - c1;
        for (int c2 = 0; c2 < n2; ++c2) {
            const double mz2 = cfg.j2 - c2;
            const cplx ph = std::polar(1.0, -g * mz1 * mz2);
            const int col = c1 * n2 + c2;
            for (int r = 0; r < n1 * n2; ++r) u(r, col) *= ph;
        }
    }
    return u;
}

/// Product of directed angular momentum states for the two tops.
inline StateVector initial_state(const KickedTopConfig& cfg) {
    cfg.validate();
    const std::vector<cplx> a = coherent_state(cfg.j1, cfg.theta1, cfg.phi1);
    const std::vector<cplx> b = coherent_state(cfg.j2, cfg.theta2, cfg.phi2);
    StateVector psi;
    psi.dim = static_cast<int>(a.size() * b.size());
    psi.amplitudes.resize(psi.dim);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) psi.amplitudes[i * b.size() + k] = a[i] * b[k];
    psi.normalize();
    return psi;
}

/// Reduced state of the first top from a pure product-space state.
inline DensityMatrix reduced_density(const StateVector& psi, int n1, int n2) {
    if (psi.dim != n1 * n2) throw ShapeError("reduced_density: state dimension mismatch");
    ComplexMatrix rho(n1, n1);
    for (int a = 0; a < n1; ++a) {
        for (int a2 = a; a2 < n1; ++a2) {
            cplx s = 0.0;
            for (int b = 0; b < n2; ++b) s += psi.amplitudes[a * n2 + b] * std::conj(psi.amplitudes[a2 * n2 + b]);
            if (a2 == a) {
                rho(a, a) = cplx(s.real(), 0.0);
            } else {
                rho(a, a2) = s;
                rho(a2, a) = std::conj(s);
            }
        }
    }
    // rounding in the matvec chain leaves the trace a few ulps off 1
    double tr = 0.0;
    for (int a = 0; a < n1; ++a) tr += rho(a, a).real();
    const double inv = 1.0 / tr;
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) rho(a, b) *= inv;
    return DensityMatrix(HermitianMatrix(std::move(rho)));
}

/// Deterministic trajectory of one coupled pair; the Floquet matrix is built
/// once and applied by dense matrix-vector products. Construction runs the
/// transient.
class KickedTopSimulator {
  public:
    explicit KickedTopSimulator(const KickedTopConfig& cfg) : cfg_(cfg), u_(build_floquet(cfg)), psi_(initial_state(cfg)) {
        for (long it = 0; it < cfg_.transient; ++it) step();
    }

    const KickedTopConfig& config() const { return cfg_; }

    void step() {
        psi_.amplitudes = u_.apply(psi_.amplitudes);
        psi_.normalize();
    }

    /// Advances by the configured stride and returns the reduced state.
    DensityMatrix next_sample() {
        for (long k = 0; k < cfg_.stride; ++k) step();
        return reduced_density(psi_, cfg_.n_dim(), cfg_.m_dim());
    }

    const ComplexMatrix& floquet() const { return u_; }
    const StateVector& state() const { return psi_; }

  private:
    KickedTopConfig cfg_;
    ComplexMatrix u_;
    StateVector psi_;
};

/// Streams exactly cfg.samples reduced density matrices into the sink.
inline void evolve_and_collect(const KickedTopConfig& cfg, const std::function<void(const DensityMatrix&, long)>& sink) {
    KickedTopSimulator sim(cfg);
    for (long s = 0; s < cfg.samples; ++s) sink(sim.next_sample(), s);
}

inline std::vector<DensityMatrix> collect_samples(const KickedTopConfig& cfg) {
    std::vector<DensityMatrix> out;
    out.reserve(cfg.samples);
    evolve_and_collect(cfg, [&](const DensityMatrix& rho, long) { out.push_back(rho); });
    return out;
}

/// Comparison of a kicked-top distance average against the closed form.
struct KickedTopReport {
    ComparisonReport comparison;
    bool chaotic_warning = false;
};

namespace detail {

inline SummaryStat summarize(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = v.size() > 1 ? ss / (v.size() - 1.0) : 0.0;
    return {mean, std::sqrt(var / v.size()), static_cast<long>(v.size())};
}

}  // namespace detail

/// Mean of tr(rho - sigma)^2 over one simulation, against the closed form
/// with beta = 2, n = N1, m = N2.
inline KickedTopReport kicked_top_vs_fixed_report(const KickedTopConfig& cfg, const DensityMatrix& sigma) {
    if (sigma.dim() != cfg.n_dim()) throw SpecError("kicked top report: sigma dimension mismatch");
    std::vector<double> vals;
    vals.reserve(cfg.samples);
    evolve_and_collect(cfg, [&](const DensityMatrix& rho, long) {
        vals.push_back(hs_distance_sq(rho.hermitian(), sigma.hermitian()));
    });
    const EnsembleParams p(2, cfg.n_dim(), cfg.m_dim());
    const double analytic = d2_rho_fixed(p, sigma.purity());
    return {compare(detail::summarize(vals), analytic), cfg.chaotic_regime_warning()};
}

/// Mean of tr(rho1 - rho2)^2 over two independent simulations run in
/// lockstep (nothing is stored), against the two-ensemble closed form.
/// Both tops must share N1.
inline KickedTopReport kicked_top_pair_report(const KickedTopConfig& cfg_a, const KickedTopConfig& cfg_b) {
    if (cfg_a.n_dim() != cfg_b.n_dim()) throw SpecError("kicked top pair: N1 mismatch");
    if (cfg_a.samples != cfg_b.samples) throw SpecError("kicked top pair: sample counts differ");
    KickedTopSimulator sim_a(cfg_a);
    KickedTopSimulator sim_b(cfg_b);
    std::vector<double> vals;
    vals.reserve(cfg_a.samples);
    for (long s = 0; s < cfg_a.samples; ++s) {
        const DensityMatrix ra = sim_a.next_sample();
        const DensityMatrix rb = sim_b.next_sample();
        vals.push_back(hs_distance_sq(ra.hermitian(), rb.hermitian()));
    }
    const double analytic = d2_rho_pair(2, cfg_a.n_dim(), cfg_a.m_dim(), cfg_b.m_dim());
    return {compare(detail::summarize(vals), analytic),
            cfg_a.chaotic_regime_warning() || cfg_b.chaotic_regime_warning()};
}

/// Single-simulation variant of the pair comparison (both margins share one
/// m): rho1 and rho2 are reduced states separated by `separation` iterations
/// along the same trajectory.
inline KickedTopReport kicked_top_pair_report_single_run(const KickedTopConfig& cfg, long separation = 20) {
    if (separation < 1) throw SpecError("kicked top pair: separation must be positive");
    KickedTopSimulator sim(cfg);
    std::deque<DensityMatrix> window;
    std::vector<double> vals;
    vals.reserve(cfg.samples);
    const long total = cfg.samples + separation;
    for (long s = 0; s < total; ++s) {
        window.push_back(sim.next_sample());
        if (static_cast<long>(window.size()) > separation) {
            vals.push_back(hs_distance_sq(window.front().hermitian(), window.back().hermitian()));
            window.pop_front();
        }
    }
    const double analytic = d2_rho_pair(2, cfg.n_dim(), cfg.m_dim(), cfg.m_dim());
    return {compare(detail::summarize(vals), analytic), cfg.chaotic_regime_warning()};
}

/// Dispatcher with the one-of contract: exactly one of cfg_b / sigma.
inline KickedTopReport kicked_top_distance_report(const KickedTopConfig& cfg_a,
                                                  const std::optional<KickedTopConfig>& cfg_b,
                                                  const std::optional<DensityMatrix>& sigma) {
    if (cfg_b.has_value() == sigma.has_value())
        throw SpecError("kicked_top_distance_report: provide exactly one of cfg_b / sigma");
    if (cfg_b) return kicked_top_pair_report(cfg_a, *cfg_b);
    return kicked_top_vs_fixed_report(cfg_a, *sigma);
}

}  // namespace hsdist
