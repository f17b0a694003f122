#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hsdist/eigenvalue_density.hpp"
#include "hsdist/ensemble.hpp"
#include "hsdist/experiment.hpp"
#include "hsdist/formulas.hpp"
#include "hsdist/io.hpp"
#include "hsdist/kicked_top.hpp"
#include "hsdist/presets.hpp"

namespace hsdist {

using nlohmann::json;

inline json provenance(std::optional<std::uint64_t> seed = std::nullopt) {
    json p{{"tool", "hsdist"}, {"version", kVersion}};
    if (seed) p["seed"] = *seed;
    return p;
}

// ---------------------------------------------------------------------------
// formula command

struct FormulaOptions {
    std::string equation;  // mean-tr-w2 mean-tr-wx d2-wishart-fixed d2-wishart-pair
                           // mean-purity d2-rho-fixed d2-rho-pair log-norm
    int beta = 2;
    int n = 2;
    int m = 2;
    int m1 = -1;
    int m2 = -1;
    std::optional<double> trace_x;
    std::optional<double> trace_x2;
    std::string preset_x;  // paper-x2 / paper-x5; overrides trace_x/trace_x2
    std::optional<double> purity_sigma;
};

inline SpectrumSummary formula_summary_x(const FormulaOptions& o) {
    if (!o.preset_x.empty()) return SpectrumSummary::of(preset_fixed_matrix(o.preset_x, o.beta));
    if (o.trace_x && o.trace_x2) return SpectrumSummary(*o.trace_x, *o.trace_x2);
    throw SpecError("formula: this equation needs --preset-x or both --trace-x and --trace-x2");
}

inline json evaluate_formula(const FormulaOptions& o) {
    json result;
    if (o.equation == "mean-tr-w2") {
        result["value"] = mean_tr_w2(EnsembleParams(o.beta, o.n, o.m));
    } else if (o.equation == "mean-tr-wx") {
        result["value"] = mean_tr_wx(EnsembleParams(o.beta, o.n, o.m), formula_summary_x(o));
    } else if (o.equation == "d2-wishart-fixed") {
        result["value"] = d2_wishart_fixed(EnsembleParams(o.beta, o.n, o.m), formula_summary_x(o));
    } else if (o.equation == "d2-wishart-pair") {
        if (o.m1 < 0 || o.m2 < 0) throw SpecError("formula: d2-wishart-pair needs --m1 and --m2");
        result["value"] = d2_wishart_pair(o.beta, o.n, o.m1, o.m2);
    } else if (o.equation == "mean-purity") {
        result["value"] = mean_purity(EnsembleParams(o.beta, o.n, o.m));
    } else if (o.equation == "d2-rho-fixed") {
        if (!o.purity_sigma) throw SpecError("formula: d2-rho-fixed needs --purity-sigma");
        result["value"] = d2_rho_fixed(EnsembleParams(o.beta, o.n, o.m), *o.purity_sigma);
    } else if (o.equation == "d2-rho-pair") {
        if (o.m1 < 0 || o.m2 < 0) throw SpecError("formula: d2-rho-pair needs --m1 and --m2");
        result["value"] = d2_rho_pair(o.beta, o.n, o.m1, o.m2);
    } else if (o.equation == "log-norm") {
        const LogNormConstants c = log_norm_constants(EnsembleParams(o.beta, o.n, o.m));
        result["log_c"] = c.log_c;
        result["log_c_fixed"] = c.log_c_fixed;
    } else {
        throw SpecError("formula: unknown equation " + o.equation);
    }
    return result;
}

inline json formula_config_json(const FormulaOptions& o) {
    json c{{"command", "formula"}, {"eq", o.equation}, {"beta", o.beta}, {"n", o.n}, {"m", o.m}};
    if (o.m1 >= 0) c["m1"] = o.m1;
    if (o.m2 >= 0) c["m2"] = o.m2;
    if (o.trace_x) c["trace_x"] = *o.trace_x;
    if (o.trace_x2) c["trace_x2"] = *o.trace_x2;
    if (!o.preset_x.empty()) c["preset_x"] = o.preset_x;
    if (o.purity_sigma) c["purity_sigma"] = *o.purity_sigma;
    return c;
}

// ---------------------------------------------------------------------------
// mc command

struct McOptions {
    std::string kind = "rho-vs-fixed";
    int beta = 2;
    int n = 2;
    int m = 2;
    int m2 = -1;          // pair kinds; defaults to m
    std::string fixed;    // "zero" | "max-mixed" | "paper-x2" | "paper-x5"
    long trials = 100000;
    std::uint64_t seed = 1234;
    int bins = 0;         // eig-histogram kind: 0 = no histogram
    int threads = 0;
};

inline ExperimentSpec build_experiment_spec(const McOptions& o) {
    const ExperimentKind kind = experiment_kind_from_string(o.kind);
    ExperimentSpec spec{kind, EnsembleParams(o.beta, o.n, o.m), std::nullopt, std::nullopt,
                        o.trials, o.seed, std::nullopt};
    if (kind == ExperimentKind::WishartPair || kind == ExperimentKind::RhoPair)
        spec.params2 = EnsembleParams(o.beta, o.n, o.m2 >= 0 ? o.m2 : o.m);
    if (kind == ExperimentKind::WishartVsFixed) {
        if (o.fixed.empty() || o.fixed == "zero") {
            spec.fixed_matrix = HermitianMatrix::zero(o.n);
        } else {
            spec.fixed_matrix = preset_fixed_matrix(o.fixed, o.beta);
        }
    }
    if (kind == ExperimentKind::RhoVsFixed) {
        if (o.fixed.empty() || o.fixed == "max-mixed") {
            spec.fixed_matrix = DensityMatrix::maximally_mixed(o.n).hermitian();
        } else {
            throw SpecError("mc: rho-vs-fixed supports only the max-mixed fixed state");
        }
    }
    if (kind == ExperimentKind::EigDensityHistogram && o.bins > 0) spec.histogram_bins = o.bins;
    spec.validate();
    return spec;
}

inline double mc_analytic_value(const McOptions& o) {
    const EnsembleParams p1(o.beta, o.n, o.m);
    const int m2 = o.m2 >= 0 ? o.m2 : o.m;
    switch (experiment_kind_from_string(o.kind)) {
        case ExperimentKind::WishartVsFixed: {
            const SpectrumSummary x = (o.fixed.empty() || o.fixed == "zero")
                                          ? SpectrumSummary(0.0, 0.0, o.n)
                                          : SpectrumSummary::of(preset_fixed_matrix(o.fixed, o.beta));
            return d2_wishart_fixed(p1, x);
        }
        case ExperimentKind::WishartPair:
            return d2_wishart_pair(o.beta, o.n, o.m, m2);
        case ExperimentKind::RhoVsFixed:
            return d2_rho_fixed(p1, 1.0 / o.n);
        case ExperimentKind::RhoPair:
            return d2_rho_pair(o.beta, o.n, o.m, m2);
        case ExperimentKind::EigDensityHistogram:
            return mean_purity(p1);
    }
    return 0.0;
}

inline json mc_config_json(const McOptions& o) {
    json c{{"command", "mc"},   {"kind", o.kind},   {"beta", o.beta}, {"n", o.n},
           {"m", o.m},          {"trials", o.trials}, {"seed", o.seed}};
    if (o.m2 >= 0) c["m2"] = o.m2;
    if (!o.fixed.empty()) c["fixed"] = o.fixed;
    if (o.bins > 0) c["bins"] = o.bins;
    return c;
}

inline McOptions mc_options_from_json(const json& c) {
    McOptions o;
    o.kind = c.at("kind").get<std::string>();
    o.beta = c.at("beta").get<int>();
    o.n = c.at("n").get<int>();
    o.m = c.at("m").get<int>();
    o.trials = c.at("trials").get<long>();
    o.seed = c.at("seed").get<std::uint64_t>();
    if (c.contains("m2")) o.m2 = c.at("m2").get<int>();
    if (c.contains("fixed")) o.fixed = c.at("fixed").get<std::string>();
    if (c.contains("bins")) o.bins = c.at("bins").get<int>();
    return o;
}

/// Runs the experiment and packages config, results and provenance into one
/// self-describing record; re-running the embedded config reproduces the
/// numbers bit-exactly.
inline json run_mc_artifact(const McOptions& o) {
    const ExperimentSpec spec = build_experiment_spec(o);
    const ExperimentResult res = run_experiment(spec, o.threads);
    const ComparisonReport rep = compare(res.stat, mc_analytic_value(o));

    json results{{"mean", res.stat.mean},
                 {"std_error", res.stat.std_error},
                 {"count", res.stat.count},
                 {"analytic", rep.analytic},
                 {"z_score", rep.z_score}};
    if (rep.relative_diff_defined) results["relative_diff_percent"] = rep.relative_diff_percent;
    if (res.histogram) {
        results["histogram"] = {{"bins", res.histogram->bins},
                                {"total_entries", res.histogram->total_entries},
                                {"counts", res.histogram->counts}};
    }
    return json{{"config", mc_config_json(o)}, {"results", results}, {"provenance", provenance(o.seed)}};
}

inline void write_mc_csv(const std::string& path, const McOptions& o, const json& artifact) {
    CsvWriter csv(path);
    csv.row({"kind", "beta", "n", "m", "m2", "trials", "seed", "mean", "std_error", "analytic", "z_score"});
    const auto& r = artifact.at("results");
    csv.row({o.kind, std::to_string(o.beta), std::to_string(o.n), std::to_string(o.m),
             std::to_string(o.m2 >= 0 ? o.m2 : o.m), std::to_string(o.trials), std::to_string(o.seed),
             format_double(r.at("mean").get<double>()), format_double(r.at("std_error").get<double>()),
             format_double(r.at("analytic").get<double>()), format_double(r.at("z_score").get<double>())});
}

// ---------------------------------------------------------------------------
// eigdensity command

struct EigDensityOptions {
    int beta = 2;
    int n = 25;
    int m = 29;
    int grid = 2000;
};

inline json eig_density_metadata(const EigDensityOptions& o) {
    const EnsembleParams p(o.beta, o.n, o.m);
    json meta{{"config",
               {{"command", "eigdensity"}, {"beta", o.beta}, {"n", o.n}, {"m", o.m}, {"grid", o.grid}}},
              {"provenance", provenance()}};
    meta["results"] = {{"integral", integrate_eig_density(p)},
                       {"mean", integrate_eig_density(p, 0.0, 1.0, 1)},
                       {"quadrature", "gauss-legendre-20 on edge-graded panels"}};
    if (o.beta == 1) meta["results"]["warning"] = "beta=1 eigenvalue density is unverified";
    return meta;
}

inline void write_eig_density_csv(const std::string& path, const EigDensityOptions& o) {
    const EnsembleParams p(o.beta, o.n, o.m);
    const DensityCurve curve = eig_density_curve(p, o.grid);
    CsvWriter csv(path);
    csv.row({"mu", "p"});
    for (size_t i = 0; i < curve.abscissae.size(); ++i)
        csv.row({format_double(curve.abscissae[i]), format_double(curve.ordinates[i])});
}

// ---------------------------------------------------------------------------
// kickedtop command

struct KickedTopOptions {
    KickedTopConfig cfg;
    std::string report;  // "samples" | "vs-max-mixed" | "pair" | "pair-single"
    std::optional<KickedTopConfig> cfg_b;
    long separation = 20;
};

inline json kicked_top_config_json(const KickedTopConfig& c) {
    return json{{"j1", c.j1},
                {"j2", c.j2},
                {"k1", c.k1},
                {"k2", c.k2},
                {"epsilon", c.epsilon},
                {"transient", c.transient},
                {"samples", c.samples},
                {"stride", c.stride},
                {"theta1", c.theta1},
                {"phi1", c.phi1},
                {"theta2", c.theta2},
                {"phi2", c.phi2}};
}

inline KickedTopConfig kicked_top_config_from_json(const json& j) {
    KickedTopConfig c;
    c.j1 = j.at("j1").get<double>();
    c.j2 = j.at("j2").get<double>();
    c.k1 = j.at("k1").get<double>();
    c.k2 = j.at("k2").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.transient = j.at("transient").get<long>();
    c.samples = j.at("samples").get<long>();
    c.stride = j.at("stride").get<long>();
    c.theta1 = j.at("theta1").get<double>();
    c.phi1 = j.at("phi1").get<double>();
    c.theta2 = j.at("theta2").get<double>();
    c.phi2 = j.at("phi2").get<double>();
    return c;
}

/// Sample export: one CSV row per reduced state with flattened re/im entries
/// plus a JSON metadata sidecar (config echo, version, payload checksum).
inline json write_kicked_top_samples(const std::string& csv_path, const KickedTopConfig& cfg) {
    const int n = cfg.n_dim();
    std::ostringstream body;
    std::vector<std::string> header{"sample"};
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            header.push_back("re_" + std::to_string(r) + "_" + std::to_string(c));
            header.push_back("im_" + std::to_string(r) + "_" + std::to_string(c));
        }
    {
        CsvWriter csv(csv_path);
        csv.row(header);
        evolve_and_collect(cfg, [&](const DensityMatrix& rho, long s) {
            std::vector<std::string> row{std::to_string(s)};
            row.reserve(1 + 2 * n * n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    row.push_back(format_double(rho(r, c).real()));
                    row.push_back(format_double(rho(r, c).imag()));
                    body << row[row.size() - 2] << ',' << row.back() << ';';
                }
            csv.row(row);
        });
    }
    json meta{{"config", kicked_top_config_json(cfg)},
              {"provenance", provenance()},
              {"results",
               {{"samples", cfg.samples},
                {"dim", n},
                {"payload_fnv1a", fnv1a(body.str())}}}};
    if (cfg.chaotic_regime_warning()) meta["results"]["warning"] = "outside the chaotic regime";
    write_json_file(csv_path + ".meta.json", meta);
    return meta;
}

inline json kicked_top_report_json(const KickedTopReport& rep) {
    json r{{"mean", rep.comparison.empirical.mean},
           {"std_error", rep.comparison.empirical.std_error},
           {"count", rep.comparison.empirical.count},
           {"analytic", rep.comparison.analytic},
           {"z_score", rep.comparison.z_score},
           {"relative_diff_percent", rep.comparison.relative_diff_percent}};
    if (rep.chaotic_warning) r["warning"] = "outside the chaotic regime";
    return r;
}

inline json run_kicked_top_artifact(const KickedTopOptions& o) {
    json config{{"command", "kickedtop"}, {"mode", o.report}, {"top_a", kicked_top_config_json(o.cfg)}};
    json results;
    if (o.report == "vs-max-mixed") {
        results = kicked_top_report_json(kicked_top_vs_fixed_report(o.cfg, DensityMatrix::maximally_mixed(o.cfg.n_dim())));
    } else if (o.report == "pair") {
        if (!o.cfg_b) throw SpecError("kickedtop: pair mode needs a second configuration");
        config["top_b"] = kicked_top_config_json(*o.cfg_b);
        results = kicked_top_report_json(kicked_top_pair_report(o.cfg, *o.cfg_b));
    } else if (o.report == "pair-single") {
        config["separation"] = o.separation;
        results = kicked_top_report_json(kicked_top_pair_report_single_run(o.cfg, o.separation));
    } else {
        throw SpecError("kickedtop: unknown mode " + o.report);
    }
    return json{{"config", config}, {"results", results}, {"provenance", provenance()}};
}

}  // namespace hsdist
