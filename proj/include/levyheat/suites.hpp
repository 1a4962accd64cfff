// Named property suites behind the `verify` command: each check re-derives
// its expected value from an oracle or asserts a module invariant, and the
// suite passes only if every check does.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "levyheat/bounds.hpp"
#include "levyheat/kernels.hpp"
#include "levyheat/levy_measure.hpp"
#include "levyheat/transforms.hpp"

namespace levyheat {

struct SuiteCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline void add(std::vector<SuiteCheck>& out, const std::string& name, bool pass,
                double got, double want) {
    out.push_back({name, pass,
                   "got " + std::to_string(got) + " want " + std::to_string(want)});
}

inline double relerr(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::vector<double> lgrid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

inline SymbolSpec vg_sym(int d) {
    SymbolSpec s{Family::SUBORDINATE_BM, d};
    s.bernstein.family = BernsteinFamily::GAMMA;
    return s;
}

}  // namespace detail

inline std::vector<SuiteCheck> run_symbols_suite() {
    using namespace detail;
    std::vector<SuiteCheck> out;
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    add(out, "psi geometric_stable(1) at 1 = log 2",
        relerr(geo.psi(1.0), std::log(2.0)) < 1e-14, geo.psi(1.0), std::log(2.0));
    SymbolSpec iter{Family::ITERATED_GEOMETRIC, 1, 2.0, 0.5};
    add(out, "psi iterated(2,1/2) at 1", relerr(iter.psi(1.0), 0.8325546111576977) < 1e-12,
        iter.psi(1.0), 0.8325546111576977);
    const auto grid = lgrid(1e-2, 1e3, 10);
    bool all = true;
    for (auto fam : {Family::GEOMETRIC_STABLE, Family::STABLE, Family::GAUSSIAN,
                     Family::TRUNCATED_LOG}) {
        SymbolSpec s{fam, 2, 1.5};
        auto rep = check_symbol_inequalities(s, grid);
        all = all && rep.doubling_bound_ok && rep.unimodal_bound_ok;
    }
    out.push_back({"doubling and unimodal symbol bounds on all families", all, ""});
    double prev = 1e9;
    bool monotone = true;
    for (int k = 2; k <= 8; ++k) {
        const double dev = std::abs(ell_estimate(geo, std::pow(10.0, k)) - 1.0);
        monotone = monotone && dev <= prev + 1e-18;
        prev = dev;
    }
    out.push_back({"ell_estimate converges monotonically to alpha", monotone, ""});
    bool powers = true;
    for (double p : {0.5, 1.0, 2.0}) {
        RadialFunction f{[p](double u) { return std::pow(u, p); }};
        auto rep = scaling_exponents(f, 0.1, 100.0, 30);
        powers = powers && std::abs(rep.lower_index - p) < 1e-10 &&
                 std::abs(rep.upper_index - p) < 1e-10;
    }
    out.push_back({"scaling_exponents exact on power laws", powers, ""});
    bool bern = true;
    for (auto fam : {BernsteinFamily::GAMMA, BernsteinFamily::STABLE_SUB,
                     BernsteinFamily::GEOM_SUB}) {
        BernsteinSpec b;
        b.family = fam;
        b.gamma_exp = 0.6;
        b.alpha = 1.5;
        b.beta = 0.5;
        auto rep = check_bernstein(b, grid);
        bern = bern && rep.concavity_ok && rep.u2phi_monotone_ok;
    }
    out.push_back({"bernstein concavity and u^2 phi' monotonicity", bern, ""});
    return out;
}

inline std::vector<SuiteCheck> run_levy_measure_suite(unsigned seed = 12345) {
    using namespace detail;
    std::vector<SuiteCheck> out;
    auto vg = levy_density_for(vg_sym(1));
    double worst = 0.0;
    for (double r : lgrid(0.05, 10.0, 20)) {
        worst = std::max(worst, relerr(nu_eval(vg, r), std::exp(-r) / r));
    }
    add(out, "variance-gamma nu matches e^{-r}/r (worst rel err)", worst < 1e-8, worst,
        1e-8);
    SymbolSpec tls{Family::TRUNCATED_LOG, 2};
    auto tl = levy_density_for(tls);
    add(out, "truncated-log K_d closed form",
        relerr(k_fn(tl, 2, 0.5), 0.5 * special::surface_area(2)) < 1e-12,
        k_fn(tl, 2, 0.5), 0.5 * special::surface_area(2));
    auto eq46 = check_concentration_relations(tl, tls, ConcRelation::EQ46,
                                              lgrid(0.05, 0.9, 6));
    add(out, "derivative identity h' = -2K/r (closed forms)",
        eq46.worst_residual < 1e-6, eq46.worst_residual, 1e-6);
    SymbolSpec vgs = vg_sym(1);
    bool inequalities = true;
    for (auto rel : {ConcRelation::EQ55, ConcRelation::KSC1, ConcRelation::KSC2,
                     ConcRelation::KSC3, ConcRelation::KD_LE_K1}) {
        auto rep = check_concentration_relations(vg, vgs, rel, lgrid(0.05, 2.0, 5));
        inequalities = inequalities && rep.pass && rep.violations == 0;
    }
    out.push_back({"scaling inequalities for K and h", inequalities, ""});
    auto k1 = check_concentration_relations(vg, vgs, ConcRelation::K1_INCREMENT,
                                            lgrid(0.02, 20.0, 50), seed);
    out.push_back({"symbol increments controlled by 3 K_1 (seeded lambda)",
                   k1.pass && k1.violations == 0, ""});
    auto prof = kd_over_h_profile(levy_density_for(SymbolSpec{Family::STABLE, 1, 1.0}),
                                  0.01, 1.0, 6);
    out.push_back({"stable K/h profile flags SCALING",
                   prof.verdict == ProfileVerdict::SCALING, ""});
    auto prof2 = kd_over_h_profile(tl, 1e-3, 0.9, 6);
    out.push_back({"truncated-log K/h profile flags SLOW",
                   prof2.verdict == ProfileVerdict::SLOW, ""});
    return out;
}

inline std::vector<SuiteCheck> run_transforms_suite() {
    using namespace detail;
    std::vector<SuiteCheck> out;
    InversionConfig cfg;
    double worst = 0.0;
    for (int d : {1, 2, 3}) {
        SymbolSpec cauchy{Family::STABLE, d, 1.0};
        for (double t : {0.5, 1.0, 2.0}) {
            for (double x : lgrid(1e-2, 10.0, 8)) {
                const double want = std::tgamma(0.5 * (d + 1)) *
                                    std::pow(special::kPi, -0.5 * (d + 1)) * t *
                                    std::pow(t * t + x * x, -0.5 * (d + 1));
                worst = std::max(worst,
                                 relerr(density_from_symbol(cauchy, t, x, cfg).value, want));
            }
        }
    }
    add(out, "oracle equivalence on the Cauchy family (worst rel err)", worst < 1e-8,
        worst, 1e-8);
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    out.push_back({"p(t,0) infinite for t <= d/alpha",
                   !density_finite_at_origin(geo, 0.5) &&
                       !density_finite_at_origin(geo, 1.0) &&
                       density_finite_at_origin(geo, 2.0),
                   ""});
    SymbolSpec gauss3{Family::GAUSSIAN, 3};
    add(out, "Newtonian potential 1/(4 pi |x|)",
        relerr(resolvent_from_symbol(gauss3, 0.0, 0.5, cfg).value,
               1.0 / (4.0 * special::kPi * 0.5)) < 1e-9,
        resolvent_from_symbol(gauss3, 0.0, 0.5, cfg).value,
        1.0 / (4.0 * special::kPi * 0.5));
    SymbolSpec c1{Family::STABLE, 1, 1.0};
    out.push_back({"recurrent symbol refuses the zero resolvent",
                   resolvent_from_symbol(c1, 0.0, 1.0, cfg).flag == EvalFlag::NOT_TRANSIENT,
                   ""});
    SymbolSpec gauss1{Family::GAUSSIAN, 1};
    add(out, "laplace functional at t=0 is 1", std::abs(laplace_U(gauss1, 0.0, 2.0) - 1.0) < 1e-12,
        laplace_U(gauss1, 0.0, 2.0), 1.0);
    // normalization of the inverted density
    InversionConfig loose;
    loose.rel_tol = 1e-8;
    auto mass = quad::integrate_to_inf(
        [&](double u) {
            return 2.0 * density_from_symbol(geo, 2.0, std::max(u, 1e-12), loose).value;
        },
        0.0, 1.0, {1e-7, 0.0, 300});
    add(out, "density mass is 1", std::abs(mass.value - 1.0) < 1e-6, mass.value, 1.0);
    return out;
}

inline std::vector<SuiteCheck> run_bounds_suite() {
    using namespace detail;
    std::vector<SuiteCheck> out;
    SymbolSpec stable{Family::STABLE, 1, 1.0};
    SweepSpec rv;
    rv.xs = {1e-1, 1e-2, 1e-3};
    auto rep = asym_ratio_sweep(AsymClaim::RV, stable, rv);
    add(out, "stable anchor p/(t|x|^{-d} psi) -> 1/pi within 1%",
        rep.deviations.back() < 0.01, rep.ratios.back(), 1.0 / special::kPi);
    SymbolSpec vgs = vg_sym(1);
    auto nu = levy_density_for(vgs);
    double dev = std::abs(nu_eval(nu, 1e-4) * 1e-4 / vgs.ell(1e4) - 0.5);
    add(out, "variance-gamma constant chain -> 1/2", dev < 0.02, 0.5 + dev, 0.5);
    SandwichGrid g;
    g.xs = {0.05, 0.2, 1.0, 4.0};
    auto gub3 = sandwich_check(SandwichClaim::GUB3, stable, g);
    add(out, "kernel upper bound constant <= 10", gub3.c_max <= 10.0, gub3.c_max, 10.0);
    SymbolSpec vg3 = vg_sym(3);
    SandwichGrid gs;
    gs.xs = {0.05, 0.2, 1.0, 2.0, 10.0};
    auto mu = sandwich_check(SandwichClaim::MU_EST, vg3, gs);
    out.push_back({"pinned subordinator density bound holds",
                   mu.verdict == Verdict::CONSISTENT, ""});
    auto eq = equivalence_diagnostics(vgs, EquivalenceClaim::THM5);
    out.push_back({"equivalence legs agree for the gamma subordinator",
                   eq.all_consistent, ""});
    return out;
}

inline std::vector<SuiteCheck> run_suite(const std::string& which, unsigned seed = 12345) {
    if (which == "symbols") return run_symbols_suite();
    if (which == "levy_measure") return run_levy_measure_suite(seed);
    if (which == "transforms") return run_transforms_suite();
    if (which == "bounds") return run_bounds_suite();
    throw std::invalid_argument("unknown suite: " + which +
                                " (expected symbols|levy_measure|transforms|bounds)");
}

}  // namespace levyheat
