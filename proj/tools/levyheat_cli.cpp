// Command-line front-end: evaluate kernels, run asymptotic sweeps and
// sandwich checks, emit CSV tables / JSON summaries / SVG plots, and run the
// verification suites.
//
// Exit codes: 0 ok, 1 suite failure, 2 config/parse error, 3 non-converged
// entry under --strict, 4 unreachable sweep regime, 5 violated one-sided
// claim.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "levyheat/report.hpp"
#include "levyheat/suites.hpp"

using namespace levyheat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConverged = 3;
constexpr int kExitRegime = 4;
constexpr int kExitViolated = 5;

[[noreturn]] void fail(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(code);
}

SymbolSpec load_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(kExitConfig, "cannot open symbol file: " + path);
    nlohmann::json j;
    try {
        in >> j;
        return symbol_from_json(j);
    } catch (const std::exception& e) {
        fail(kExitConfig, "bad symbol file " + path + ": " + e.what());
    }
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        write_file(out_path, content);
    }
}

const std::map<std::string, AsymClaim> kSweepClaims = {
    {"SV", AsymClaim::SV},           {"NU", AsymClaim::NU},
    {"LARGE", AsymClaim::LARGE},     {"GREEN", AsymClaim::GREEN},
    {"GREEN_INF", AsymClaim::GREEN_INF}, {"TAUB_SMALL", AsymClaim::TAUB_SMALL},
    {"TAUB_LARGE", AsymClaim::TAUB_LARGE}, {"RV", AsymClaim::RV},
    {"RATIO1", AsymClaim::RATIO1},
};

const std::map<std::string, SandwichClaim> kSandwichClaims = {
    {"THM4", SandwichClaim::THM4},       {"BGR", SandwichClaim::BGR},
    {"PHI_PRIME", SandwichClaim::PHI_PRIME}, {"GUB3", SandwichClaim::GUB3},
    {"GUB", SandwichClaim::GUB},         {"HKLB1", SandwichClaim::HKLB1},
    {"GBOUND", SandwichClaim::GBOUND},   {"GLAMBDA", SandwichClaim::GLAMBDA},
    {"GLAMBDA_INT", SandwichClaim::GLAMBDA_INT}, {"NUAPPROX", SandwichClaim::NUAPPROX},
    {"MU_EST", SandwichClaim::MU_EST},   {"KSBM", SandwichClaim::KSBM},
    {"R2KD", SandwichClaim::R2KD},       {"EXIT", SandwichClaim::EXIT},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel, Green-function and concentration-function evaluator "
                 "for isotropic unimodal Levy symbols"};
    app.require_subcommand(1);

    std::string symbol_path, out_path, x_grid_spec, t_spec, claim_name, suite_name;
    std::string targets_spec, t_grid_spec;
    double rel_tol = 1e-9, t_psi = 1e-3, t_fixed = 0.2, lambda = 1.0;
    int jobs = 1;
    unsigned seed = 12345;
    bool strict = false, want_svg = false;

    app.add_option("--rel-tol", rel_tol, "transform relative tolerance");
    app.add_option("--jobs", jobs, "worker threads for grid entries");
    app.add_option("--seed", seed, "seed for randomized property checks");
    app.add_flag("--strict", strict, "exit 3 on any NON_CONVERGED entry");

    auto* eval = app.add_subcommand("eval", "tabulate p(t, x) as CSV");
    eval->add_option("--symbol", symbol_path, "symbol JSON file")->required();
    eval->add_option("--t", t_spec, "time values, comma list")->required();
    eval->add_option("--x-grid", x_grid_spec, "lo:hi:Nlog|lin; 0 allowed with lin")
        ->required();
    eval->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "asymptotic-ratio sweep for a claim");
    sweep->add_option("--claim", claim_name, "SV|NU|LARGE|GREEN|GREEN_INF|TAUB_SMALL|"
                                             "TAUB_LARGE|RV|RATIO1")
        ->required();
    sweep->add_option("--symbol", symbol_path)->required();
    sweep->add_option("--x-grid", x_grid_spec, "sweep radii lo:hi:Nlog");
    sweep->add_option("--targets", targets_spec, "t*psi targets, comma list");
    sweep->add_option("--t-psi", t_psi, "t*psi(1/x) regime target");
    sweep->add_option("--t", t_fixed, "fixed t for the deep regimes");
    sweep->add_option("--out", out_path, "output base path (.csv/.json/.svg)");
    sweep->add_flag("--svg", want_svg, "also write a log-log deviation plot");

    auto* check = app.add_subcommand("check", "sandwich check for an estimate claim");
    check->add_option("--claim", claim_name, "THM4|BGR|PHI_PRIME|GUB3|GUB|HKLB1|GBOUND|"
                                             "GLAMBDA|GLAMBDA_INT|NUAPPROX|MU_EST|KSBM|"
                                             "R2KD|EXIT")
        ->required();
    check->add_option("--symbol", symbol_path)->required();
    check->add_option("--x-grid", x_grid_spec, "spatial grid lo:hi:Nlog");
    check->add_option("--t-grid", t_grid_spec, "time grid lo:hi:Nlog (claim-dependent)");
    check->add_option("--lambda", lambda, "resolvent parameter");
    check->add_option("--out", out_path, "output base path (.csv/.json)");

    auto* verify = app.add_subcommand("verify", "run a named property suite");
    verify->add_option("suite", suite_name, "symbols|levy_measure|transforms|bounds")
        ->required();

    auto* green = app.add_subcommand("green", "tabulate the lambda-resolvent as CSV");
    green->add_option("--symbol", symbol_path)->required();
    green->add_option("--lambda", lambda, "resolvent parameter (0 = Green function)");
    green->add_option("--x-grid", x_grid_spec)->required();
    green->add_option("--out", out_path);

    auto* conc = app.add_subcommand("conc", "tabulate h_j and K_j as CSV");
    conc->add_option("--symbol", symbol_path)->required();
    conc->add_option("--x-grid", x_grid_spec)->required();
    int conc_j = 0;
    conc->add_option("--j", conc_j, "marginal dimension (default d)");
    conc->add_option("--out", out_path);

    // global flags may follow the subcommand
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    InversionConfig cfg;
    try {
        cfg.rel_tol = rel_tol;
        cfg.validate();
    } catch (const std::exception& e) {
        fail(kExitConfig, e.what());
    }

    try {
        if (*eval) {
            SymbolSpec sym = load_symbol(symbol_path);
            std::vector<double> ts, xs;
            try {
                ts = parse_list(t_spec);
                xs = parse_grid(x_grid_spec);
            } catch (const std::exception& e) {
                fail(kExitConfig, e.what());
            }
            const size_t n = ts.size() * xs.size();
            std::vector<QuadratureResult> cells(n);
            run_indexed(n, jobs, [&](size_t i) {
                const double t = ts[i / xs.size()];
                const double x = xs[i % xs.size()];
                cells[i] = density_from_symbol(sym, t, x, cfg);
            });
            std::string csv = "t,x,p,abs_err,flag\n";
            bool nonconv = false;
            for (size_t i = 0; i < n; ++i) {
                const double t = ts[i / xs.size()];
                const double x = xs[i % xs.size()];
                csv += format_float(t) + "," + format_float(x) + "," +
                       format_float(cells[i].value) + "," + format_float(cells[i].abs_err) +
                       "," + to_string(cells[i].flag) + "\n";
                nonconv = nonconv || cells[i].flag == EvalFlag::NON_CONVERGED;
            }
            emit(out_path, csv);
            if (strict && nonconv) fail(kExitNonConverged, "NON_CONVERGED entries present");
            return kExitOk;
        }

        if (*sweep) {
            auto it = kSweepClaims.find(claim_name);
            if (it == kSweepClaims.end()) fail(kExitConfig, "unknown claim: " + claim_name);
            SymbolSpec sym = load_symbol(symbol_path);
            SweepSpec spec;
            spec.rel_tol = std::max(rel_tol, 1e-8);
            spec.t_psi_target = t_psi;
            spec.t_fixed = t_fixed;
            try {
                if (!x_grid_spec.empty()) spec.xs = parse_grid(x_grid_spec);
                if (!targets_spec.empty()) spec.targets = parse_list(targets_spec);
            } catch (const std::exception& e) {
                fail(kExitConfig, e.what());
            }
            // claim-appropriate defaults
            if (spec.xs.empty() && spec.targets.empty()) {
                switch (it->second) {
                    case AsymClaim::LARGE:
                    case AsymClaim::TAUB_LARGE:
                        spec.targets = {10.0, 30.0, 100.0};
                        break;
                    case AsymClaim::RATIO1:
                        spec.xs = {0.1, 0.1, 0.1};
                        spec.targets = {30.0, 100.0, 300.0};
                        break;
                    case AsymClaim::GREEN_INF:
                        spec.xs = {1e2, 1e3, 1e4};
                        break;
                    case AsymClaim::TAUB_SMALL:
                        spec.xs = {1e4, 1e5, 1e6};
                        break;
                    default:
                        spec.xs = {1e-2, 1e-3, 1e-4, 1e-5};
                        break;
                }
            }
            EstimateReport rep;
            try {
                rep = asym_ratio_sweep(it->second, sym, spec);
            } catch (const RegimeUnreachableError& e) {
                fail(kExitRegime, e.what());
            }
            if (out_path.empty()) {
                std::cout << sweep_report_csv(rep);
                std::cout << estimate_report_summary(rep).dump(2) << "\n";
            } else {
                write_file(out_path + ".csv", sweep_report_csv(rep));
                write_file(out_path + ".json", estimate_report_summary(rep).dump(2) + "\n");
                if (want_svg) {
                    write_file(out_path + ".svg",
                               svg_deviation_plot(rep, rep.claim + " deviation"));
                }
            }
            return kExitOk;
        }

        if (*check) {
            auto it = kSandwichClaims.find(claim_name);
            if (it == kSandwichClaims.end()) fail(kExitConfig, "unknown claim: " + claim_name);
            SymbolSpec sym = load_symbol(symbol_path);
            SandwichGrid grid;
            grid.lambda = lambda;
            try {
                // default grid honors the r0 = 0.2 regime threshold; pass
                // --x-grid / --t-grid to override
                grid.xs = x_grid_spec.empty() ? std::vector<double>{0.02, 0.05, 0.1, 0.2}
                                              : parse_grid(x_grid_spec);
                if (!t_grid_spec.empty()) grid.ts = parse_grid(t_grid_spec);
            } catch (const std::exception& e) {
                fail(kExitConfig, e.what());
            }
            auto rep = sandwich_check(it->second, sym, grid, std::max(rel_tol, 1e-8));
            if (out_path.empty()) {
                std::cout << estimate_report_csv(rep);
                std::cout << estimate_report_summary(rep).dump(2) << "\n";
            } else {
                write_file(out_path + ".csv", estimate_report_csv(rep));
                write_file(out_path + ".json", estimate_report_summary(rep).dump(2) + "\n");
            }
            if (rep.verdict == Verdict::VIOLATED) {
                fail(kExitViolated, "one-sided claim violated: " + claim_name);
            }
            return kExitOk;
        }

        if (*verify) {
            std::vector<SuiteCheck> checks;
            try {
                checks = run_suite(suite_name, seed);
            } catch (const std::invalid_argument& e) {
                fail(kExitConfig, e.what());
            }
            bool all = true;
            for (const auto& c : checks) {
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
                if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
                std::cout << "\n";
                all = all && c.pass;
            }
            std::cout << (all ? "suite passed" : "suite FAILED") << " (" << checks.size()
                      << " checks)\n";
            return all ? kExitOk : kExitSuiteFailure;
        }

        if (*green) {
            SymbolSpec sym = load_symbol(symbol_path);
            std::vector<double> xs;
            try {
                xs = parse_grid(x_grid_spec);
            } catch (const std::exception& e) {
                fail(kExitConfig, e.what());
            }
            std::vector<QuadratureResult> cells(xs.size());
            run_indexed(xs.size(), jobs, [&](size_t i) {
                cells[i] = resolvent_from_symbol(sym, lambda, xs[i], cfg);
            });
            std::string csv = "x,G,abs_err,flag\n";
            bool nonconv = false;
            for (size_t i = 0; i < xs.size(); ++i) {
                csv += format_float(xs[i]) + "," + format_float(cells[i].value) + "," +
                       format_float(cells[i].abs_err) + "," + to_string(cells[i].flag) +
                       "\n";
                nonconv = nonconv || cells[i].flag == EvalFlag::NON_CONVERGED;
                if (cells[i].flag == EvalFlag::NOT_TRANSIENT) {
                    emit(out_path, csv);
                    fail(kExitRegime, "symbol is not transient; lambda = 0 unavailable");
                }
            }
            emit(out_path, csv);
            if (strict && nonconv) fail(kExitNonConverged, "NON_CONVERGED entries present");
            return kExitOk;
        }

        if (*conc) {
            SymbolSpec sym = load_symbol(symbol_path);
            std::vector<double> xs;
            try {
                xs = parse_grid(x_grid_spec);
            } catch (const std::exception& e) {
                fail(kExitConfig, e.what());
            }
            LevyDensity nu;
            try {
                nu = levy_density_for(sym);
            } catch (const MissingNuError& e) {
                fail(kExitConfig, e.what());
            }
            const int j = conc_j == 0 ? sym.d : conc_j;
            std::vector<std::array<double, 2>> cells(xs.size());
            run_indexed(xs.size(), jobs, [&](size_t i) {
                cells[i] = {h_fn(nu, j, xs[i]), k_fn(nu, j, xs[i])};
            });
            std::string csv = "r,h,K\n";
            for (size_t i = 0; i < xs.size(); ++i) {
                csv += format_float(xs[i]) + "," + format_float(cells[i][0]) + "," +
                       format_float(cells[i][1]) + "\n";
            }
            emit(out_path, csv);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        fail(kExitConfig, e.what());
    }
    return kExitOk;
}
