// Command-line front end: closed-form evaluation, Monte Carlo comparisons,
// eigenvalue-density export, coupled-top simulation, and figure
// reproduction bundles. Exit codes: 0 success, 2 usage error, 3 numeric or
// runtime failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hsdist/artifacts.hpp"
#include "hsdist/reproduce.hpp"

namespace {

namespace fs = std::filesystem;

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("HSDIST_OUTDIR");
    if (dir && *dir && fs::path(path).is_relative()) return (fs::path(dir) / path).string();
    return path;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hsdist: mean-square Hilbert-Schmidt distances for random matrices"};
    app.require_subcommand(1);

    // --- formula ---
    hsdist::FormulaOptions fo;
    std::string formula_output;
    CLI::App* formula = app.add_subcommand("formula", "evaluate one closed form");
    formula->add_option("--eq", fo.equation, "equation id")->required();
    formula->add_option("--beta", fo.beta, "Dyson index (1 or 2)");
    formula->add_option("--n", fo.n, "matrix dimension");
    formula->add_option("--m", fo.m, "degrees of freedom");
    formula->add_option("--m1", fo.m1, "first degrees of freedom (pair forms)");
    formula->add_option("--m2", fo.m2, "second degrees of freedom (pair forms)");
    double trace_x = 0.0, trace_x2 = 0.0;
    CLI::Option* otx = formula->add_option("--trace-x", trace_x, "tr X of the fixed matrix");
    CLI::Option* otx2 = formula->add_option("--trace-x2", trace_x2, "tr X^2 of the fixed matrix");
    formula->add_option("--preset-x", fo.preset_x, "named fixed matrix (paper-x2 / paper-x5)");
    double purity = 0.0;
    CLI::Option* opur = formula->add_option("--purity-sigma", purity, "tr sigma^2 of the fixed state");
    formula->add_option("--output", formula_output, "also write a JSON artifact here");

    // --- mc ---
    hsdist::McOptions mo;
    std::string mc_output, mc_format = "json";
    CLI::App* mc = app.add_subcommand("mc", "run one Monte Carlo experiment");
    mc->add_option("--kind", mo.kind, "experiment kind")->required();
    mc->add_option("--beta", mo.beta, "Dyson index (1 or 2)");
    mc->add_option("--n", mo.n, "matrix dimension");
    mc->add_option("--m", mo.m, "degrees of freedom (first ensemble)");
    mc->add_option("--m2", mo.m2, "degrees of freedom (second ensemble)");
    mc->add_option("--fixed", mo.fixed, "fixed matrix: zero | max-mixed | paper-x2 | paper-x5");
    mc->add_option("--trials", mo.trials, "number of trials");
    mc->add_option("--seed", mo.seed, "RNG seed");
    mc->add_option("--bins", mo.bins, "histogram bins (eig-histogram kind)");
    mc->add_option("--threads", mo.threads, "worker threads (0 = auto)");
    mc->add_option("--output", mc_output, "artifact path");
    mc->add_option("--format", mc_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    // --- eigdensity ---
    hsdist::EigDensityOptions eo;
    std::string eig_output, eig_format = "csv";
    CLI::App* eig = app.add_subcommand("eigdensity", "export the eigenvalue density curve");
    eig->add_option("--beta", eo.beta, "Dyson index (verified for 2)");
    eig->add_option("--n", eo.n, "matrix dimension")->required();
    eig->add_option("--m", eo.m, "environment dimension")->required();
    eig->add_option("--grid", eo.grid, "number of grid points");
    eig->add_option("--output", eig_output, "curve path")->required();
    eig->add_option("--format", eig_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    // --- kickedtop ---
    hsdist::KickedTopOptions ko;
    ko.report = "vs-max-mixed";
    hsdist::KickedTopConfig cfg_b;
    cfg_b.theta1 = 1.31;
    cfg_b.phi1 = 2.07;
    cfg_b.theta2 = 0.73;
    cfg_b.phi2 = 1.19;
    std::string kt_output;
    CLI::App* kt = app.add_subcommand("kickedtop", "simulate a coupled kicked top");
    kt->add_option("--j1", ko.cfg.j1, "spin of the kept top");
    kt->add_option("--j2", ko.cfg.j2, "spin of the traced top");
    kt->add_option("--k1", ko.cfg.k1, "kick strength, top 1");
    kt->add_option("--k2", ko.cfg.k2, "kick strength, top 2");
    kt->add_option("--epsilon", ko.cfg.epsilon, "coupling");
    kt->add_option("--transient", ko.cfg.transient, "iterations discarded up front");
    kt->add_option("--samples", ko.cfg.samples, "reduced states collected");
    kt->add_option("--stride", ko.cfg.stride, "iterations between samples");
    kt->add_option("--theta1", ko.cfg.theta1, "initial polar angle, top 1");
    kt->add_option("--phi1", ko.cfg.phi1, "initial azimuth, top 1");
    kt->add_option("--theta2", ko.cfg.theta2, "initial polar angle, top 2");
    kt->add_option("--phi2", ko.cfg.phi2, "initial azimuth, top 2");
    kt->add_option("--mode", ko.report, "samples | vs-max-mixed | pair | pair-single");
    kt->add_option("--separation", ko.separation, "iteration gap (pair-single mode)");
    kt->add_option("--j2b", cfg_b.j2, "spin of the traced top, second simulation");
    kt->add_option("--k1b", cfg_b.k1, "kick strength, second simulation top 1");
    kt->add_option("--k2b", cfg_b.k2, "kick strength, second simulation top 2");
    kt->add_option("--epsilon-b", cfg_b.epsilon, "coupling, second simulation");
    kt->add_option("--output", kt_output, "artifact path (required for samples mode)");

    // --- reproduce ---
    long rp_trials = 100000;
    std::uint64_t rp_seed = 1234;
    long rp_samples = 5000;
    bool rp_skip_dynamics = false;
    std::string rp_figure = "all";
    std::string rp_out = "out";
    CLI::App* rp = app.add_subcommand("reproduce", "regenerate the comparison figures");
    rp->add_option("--figure", rp_figure, "1..7 | purity | table1 | all");
    rp->add_option("--trials", rp_trials, "Monte Carlo trials per cell");
    rp->add_option("--seed", rp_seed, "RNG seed");
    rp->add_option("--samples", rp_samples, "kicked-top samples per run");
    rp->add_flag("--skip-dynamics", rp_skip_dynamics, "omit the kicked-top figures");
    rp->add_option("--out", rp_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*formula) {
            if (*otx) fo.trace_x = trace_x;
            if (*otx2) fo.trace_x2 = trace_x2;
            if (*opur) fo.purity_sigma = purity;
            const hsdist::json result = hsdist::evaluate_formula(fo);
            if (result.contains("value")) {
                std::cout << hsdist::format_double_display(result.at("value").get<double>()) << "\n";
            } else {
                std::cout << result.dump() << "\n";
            }
            if (!formula_output.empty()) {
                hsdist::write_json_file(resolve_output(formula_output),
                                        hsdist::json{{"config", hsdist::formula_config_json(fo)},
                                                     {"results", result},
                                                     {"provenance", hsdist::provenance()}});
            }
            return 0;
        }
        if (*mc) {
            const std::string out = resolve_output(mc_output);
            if (!out.empty()) hsdist::require_writable(out);
            const hsdist::json artifact = hsdist::run_mc_artifact(mo);
            if (out.empty()) {
                std::cout << artifact.dump(2) << "\n";
            } else if (mc_format == "csv") {
                hsdist::write_mc_csv(out, mo, artifact);
                hsdist::write_json_file(out + ".meta.json", artifact);
            } else {
                hsdist::write_json_file(out, artifact);
            }
            const auto& r = artifact.at("results");
            std::cerr << "mean " << r.at("mean").get<double>() << "  analytic " << r.at("analytic").get<double>()
                      << "  z " << r.at("z_score").get<double>() << "\n";
            return 0;
        }
        if (*eig) {
            const std::string out = resolve_output(eig_output);
            hsdist::require_writable(out);
            const hsdist::json meta = hsdist::eig_density_metadata(eo);
            if (eig_format == "csv") {
                hsdist::write_eig_density_csv(out, eo);
                hsdist::write_json_file(out + ".meta.json", meta);
            } else {
                const hsdist::DensityCurve curve =
                    hsdist::eig_density_curve(hsdist::EnsembleParams(eo.beta, eo.n, eo.m), eo.grid);
                hsdist::json j = meta;
                j["results"]["mu"] = curve.abscissae;
                j["results"]["p"] = curve.ordinates;
                hsdist::write_json_file(out, j);
            }
            if (eo.beta == 1) std::cerr << "note: beta=1 density is exposed but unverified\n";
            return 0;
        }
        if (*kt) {
            const std::string out = resolve_output(kt_output);
            if (!out.empty()) hsdist::require_writable(out);
            if (ko.cfg.chaotic_regime_warning())
                std::cerr << "warning: parameters outside the chaotic regime; reduced states "
                             "will not follow the random-matrix predictions\n";
            if (ko.report == "samples") {
                if (out.empty()) throw hsdist::SpecError("kickedtop: samples mode requires --output");
                hsdist::write_kicked_top_samples(out, ko.cfg);
                return 0;
            }
            if (ko.report == "pair") {
                cfg_b.j1 = ko.cfg.j1;
                cfg_b.transient = ko.cfg.transient;
                cfg_b.samples = ko.cfg.samples;
                cfg_b.stride = ko.cfg.stride;
                ko.cfg_b = cfg_b;
            }
            const hsdist::json artifact = hsdist::run_kicked_top_artifact(ko);
            if (out.empty()) {
                std::cout << artifact.dump(2) << "\n";
            } else {
                hsdist::write_json_file(out, artifact);
            }
            return 0;
        }
        if (*rp) {
            const char* envdir = std::getenv("HSDIST_OUTDIR");
            std::string outdir = rp_out;
            if (envdir && *envdir && fs::path(outdir).is_relative()) outdir = (fs::path(envdir) / outdir).string();
            fs::create_directories(outdir);
            auto path = [&](const std::string& f) { return (fs::path(outdir) / f).string(); };
            hsdist::json result;
            if (rp_figure == "all") {
                result = hsdist::reproduce_all(rp_trials, rp_seed, rp_skip_dynamics, outdir, rp_samples);
            } else if (rp_figure == "1") {
                result = hsdist::reproduce_figure1(rp_trials, rp_seed, path("fig1.csv"));
            } else if (rp_figure == "2") {
                result = hsdist::reproduce_figure2(rp_trials, rp_seed, path("fig2.csv"));
            } else if (rp_figure == "3") {
                result = hsdist::reproduce_figure3(rp_trials, rp_seed, path("fig3.csv"));
            } else if (rp_figure == "4") {
                result = hsdist::reproduce_figure4(rp_trials, rp_seed, path("fig4.csv"));
            } else if (rp_figure == "purity") {
                result = hsdist::reproduce_purity(rp_trials, rp_seed, path("purity.csv"));
            } else if (rp_figure == "5") {
                result = hsdist::reproduce_figure5(path("fig5.csv"), rp_samples);
            } else if (rp_figure == "6") {
                result = hsdist::reproduce_figure6(path("fig6.csv"), rp_samples);
            } else if (rp_figure == "7") {
                result = hsdist::reproduce_figure7(path("fig7.csv"), rp_samples);
            } else if (rp_figure == "table1") {
                result = hsdist::reproduce_table1(path("table1.csv"));
            } else {
                throw hsdist::SpecError("reproduce: unknown figure " + rp_figure);
            }
            if (rp_figure != "all") hsdist::write_json_file(path("summary-" + rp_figure + ".json"), result);
            std::cout << (result.at("all_pass").get<bool>() ? "all cells pass\n" : "SOME CELLS FAIL\n");
            return result.at("all_pass").get<bool>() ? 0 : 3;
        }
    } catch (const std::exception& e) {
        hsdist::json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
    return 0;
}
