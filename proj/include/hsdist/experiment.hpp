#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"
#include "hsdist/ensemble.hpp"
#include "hsdist/hermitian_eig.hpp"
#include "hsdist/sampling.hpp"

namespace hsdist {

enum class ExperimentKind {
    WishartVsFixed,
    WishartPair,
    RhoVsFixed,
    RhoPair,
    EigDensityHistogram,
};

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::WishartVsFixed: return "wishart-vs-fixed";
        case ExperimentKind::WishartPair: return "wishart-pair";
        case ExperimentKind::RhoVsFixed: return "rho-vs-fixed";
        case ExperimentKind::RhoPair: return "rho-pair";
        case ExperimentKind::EigDensityHistogram: return "eig-histogram";
    }
    return "?";
}

inline ExperimentKind experiment_kind_from_string(const std::string& s) {
    for (ExperimentKind k : {ExperimentKind::WishartVsFixed, ExperimentKind::WishartPair,
                             ExperimentKind::RhoVsFixed, ExperimentKind::RhoPair,
                             ExperimentKind::EigDensityHistogram})
        if (s == to_string(k)) return k;
    throw SpecError("unknown experiment kind: " + s);
}

/// One Monte Carlo experiment. Pair kinds draw from params1 and params2 (same
/// n and beta); the fixed-matrix kinds compare against fixed_matrix.
struct ExperimentSpec {
    ExperimentKind kind;
    EnsembleParams params1;
    std::optional<EnsembleParams> params2;
    std::optional<HermitianMatrix> fixed_matrix;
    long trials = 100000;
    std::uint64_t seed = 1234;
    std::optional<int> histogram_bins;

    void validate() const {
        if (trials < 1) throw SpecError("ExperimentSpec: trials must be positive");
        const bool pair = kind == ExperimentKind::WishartPair || kind == ExperimentKind::RhoPair;
        if (pair) {
            if (!params2) throw SpecError("ExperimentSpec: pair kind requires params2");
            if (params2->n != params1.n || params2->beta != params1.beta)
                throw SpecError("ExperimentSpec: pair kind requires matching n and beta");
        }
        if (kind == ExperimentKind::WishartVsFixed && fixed_matrix && fixed_matrix->dim() != params1.n)
            throw SpecError("ExperimentSpec: fixed matrix dimension must equal n");
        if (kind == ExperimentKind::RhoVsFixed) {
            if (!fixed_matrix) throw SpecError("ExperimentSpec: rho-vs-fixed requires fixed_matrix");
            if (fixed_matrix->dim() != params1.n)
                throw SpecError("ExperimentSpec: fixed matrix dimension must equal n");
            if (std::abs(fixed_matrix->trace_real() - 1.0) > tolerances().trace_one)
                throw SpecError("ExperimentSpec: rho-vs-fixed fixed matrix must have unit trace");
        }
        if (kind == ExperimentKind::EigDensityHistogram && histogram_bins && *histogram_bins < 1)
            throw SpecError("ExperimentSpec: histogram_bins must be positive");
    }
};

struct SummaryStat {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(count)
    long count = 0;
};

/// Equal-width bins on [0, 1].
struct Histogram {
    int bins = 0;
    long total_entries = 0;
    std::vector<long> counts;

    std::vector<double> densities() const {
        std::vector<double> d(counts.size());
        const double w = 1.0 / bins;
        for (size_t i = 0; i < counts.size(); ++i)
            d[i] = total_entries ? counts[i] / (w * total_entries) : 0.0;
        return d;
    }
};

struct ExperimentResult {
    SummaryStat stat;
    std::optional<Histogram> histogram;
};

namespace detail {

inline double trial_value(const ExperimentSpec& spec, std::uint64_t trial, std::vector<long>* hist_counts) {
    RngStream rng(spec.seed, trial);
    switch (spec.kind) {
        case ExperimentKind::WishartVsFixed: {
            const HermitianMatrix w = sample_wishart(spec.params1, rng);
            if (spec.fixed_matrix) return hs_distance_sq(w, *spec.fixed_matrix);
            return w.trace_sq();
        }
        case ExperimentKind::WishartPair: {
            const HermitianMatrix w1 = sample_wishart(spec.params1, rng);
            const HermitianMatrix w2 = sample_wishart(*spec.params2, rng);
            return hs_distance_sq(w1, w2);
        }
        case ExperimentKind::RhoVsFixed: {
            const DensityMatrix rho = sample_density_matrix(spec.params1, rng);
            return hs_distance_sq(rho.hermitian(), *spec.fixed_matrix);
        }
        case ExperimentKind::RhoPair: {
            const DensityMatrix r1 = sample_density_matrix(spec.params1, rng);
            const DensityMatrix r2 = sample_density_matrix(*spec.params2, rng);
            return hs_distance_sq(r1.hermitian(), r2.hermitian());
        }
        case ExperimentKind::EigDensityHistogram: {
            const DensityMatrix rho = sample_density_matrix(spec.params1, rng);
            if (hist_counts) {
                const EigenDecomposition dec = hermitian_eig(rho.hermitian());
                const int bins = static_cast<int>(hist_counts->size());
                for (double mu : dec.eigenvalues) {
                    int b = static_cast<int>(mu * bins);
                    if (b < 0) b = 0;
                    if (b >= bins) b = bins - 1;
                    ++(*hist_counts)[b];
                }
            }
            return rho.purity();
        }
    }
    return 0.0;
}

}  // namespace detail

/// Runs the experiment. Per-trial values land in trial-indexed slots and the
/// reduction is a fixed sequential pass, so the result is bit-identical for
/// any thread count. thread_count 0 picks the hardware default.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, int thread_count = 0) {
    spec.validate();
    const long trials = spec.trials;
    // histogram only for the eigenvalue kind and only when bins were asked
    // for; without bins that kind still reports purity as its scalar
    const int bins =
        (spec.kind == ExperimentKind::EigDensityHistogram) ? spec.histogram_bins.value_or(0) : 0;

    if (thread_count <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        thread_count = hc ? static_cast<int>(hc) : 1;
    }
    thread_count = static_cast<int>(std::min<long>(thread_count, trials));

    std::vector<double> values(trials);
    std::vector<std::vector<long>> thread_hists;
    if (bins > 0) thread_hists.assign(thread_count, std::vector<long>(bins, 0));

    auto worker = [&](int t) {
        const long lo = trials * t / thread_count;
        const long hi = trials * (t + 1) / thread_count;
        std::vector<long>* hc = bins > 0 ? &thread_hists[t] : nullptr;
        for (long i = lo; i < hi; ++i) values[i] = detail::trial_value(spec, static_cast<std::uint64_t>(i), hc);
    };
    if (thread_count == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / trials;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = trials > 1 ? ss / (trials - 1) : 0.0;

    ExperimentResult res;
    res.stat = {mean, std::sqrt(var / trials), trials};
    if (bins > 0) {
        Histogram h;
        h.bins = bins;
        h.counts.assign(bins, 0);
        for (const auto& th : thread_hists)
            for (int b = 0; b < bins; ++b) h.counts[b] += th[b];
        for (long c : h.counts) h.total_entries += c;
        res.histogram = std::move(h);
    }
    return res;
}

/// Empirical-vs-analytic comparison record; the relative difference follows
/// the percent convention 100 (empirical/analytic - 1).
struct ComparisonReport {
    SummaryStat empirical;
    double analytic = 0.0;
    double z_score = 0.0;
    double relative_diff_percent = 0.0;
    bool relative_diff_defined = true;
};

inline ComparisonReport compare(const SummaryStat& empirical, double analytic) {
    ComparisonReport r;
    r.empirical = empirical;
    r.analytic = analytic;
    const double diff = empirical.mean - analytic;
    if (empirical.std_error > 0.0) {
        r.z_score = diff / empirical.std_error;
    } else {
        r.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    if (analytic != 0.0) {
        r.relative_diff_percent = 100.0 * (empirical.mean / analytic - 1.0);
    } else {
        r.relative_diff_defined = false;
        r.relative_diff_percent = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}  // namespace hsdist
