#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levyheat/kernels.hpp"
#include "oracles.hpp"

using namespace levyheat;
namespace sp = levyheat::special;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("stable_density closed forms and scaling", "[kernels]") {
    CHECK(rel(stable_density(2.0, 1, 1.0, 0.0).value, std::pow(4.0 * sp::kPi, -0.5)) <
          1e-14);
    CHECK(rel(stable_density(2.0, 1, 1.0, 0.0).value, 0.282095) < 1e-5);
    CHECK(rel(stable_density(1.0, 2, 1.0, 0.0).value, 1.0 / (2.0 * sp::kPi)) < 1e-14);
    CHECK_THROWS_AS(stable_density(2.5, 1, 1.0, 1.0), std::domain_error);

    // exact self-similarity s(t,x) = t^{-d/alpha} s(1, t^{-1/alpha} x)
    for (auto [alpha, d] : {std::pair{1.0, 1}, std::pair{2.0, 3}, std::pair{1.5, 2}}) {
        InversionConfig cfg;
        cfg.rel_tol = 1e-11;
        for (auto [t, x] : {std::pair{0.7, 0.3}, std::pair{1.7, 1.1}, std::pair{0.5, 0.9},
                            std::pair{2.3, 0.2}, std::pair{1.1, 2.0}}) {
            const double lhs = stable_density(alpha, d, t, x, cfg).value;
            const double rhs = std::pow(t, -d / alpha) *
                               stable_density(alpha, d, 1.0,
                                              std::pow(t, -1.0 / alpha) * x, cfg)
                                   .value;
            CHECK(rel(lhs, rhs) < 1e-10);
        }
    }

    // numeric path against the closed Cauchy form
    InversionConfig num;
    num.force_numeric = true;
    num.rel_tol = 1e-10;
    CHECK(rel(stable_density(1.0, 3, 1.0, 0.7, num).value,
              oracles::cauchy_kernel(3, 1.0, 0.7)) < 1e-9);
}

TEST_CASE("geometric stable density: subordination route", "[kernels]") {
    // route agreement with Fourier inversion of log(1+|xi|^alpha)
    InversionConfig cfg;
    cfg.rel_tol = 1e-9;
    for (int d : {1, 3}) {
        SymbolSpec geo{Family::GEOMETRIC_STABLE, d, 1.0};
        for (double t : {0.2, 1.0, 3.0}) {
            for (double x : {0.05, 0.3, 1.0, 5.0}) {
                auto sub = geometric_stable_density(1.0, d, t, x, cfg);
                auto four = density_from_symbol(geo, t, x, cfg);
                INFO("d=" << d << " t=" << t << " x=" << x << " sub=" << sub.value
                          << " four=" << four.value);
                CHECK(rel(sub.value, four.value) < 1e-6);
            }
        }
    }

    // p(t, 0): infinite for t <= d/alpha, Gamma-ratio closed form above
    auto inf0 = geometric_stable_density(1.0, 1, 0.5, 0.0);
    CHECK(inf0.flag == EvalFlag::P0_INFINITE);
    auto fin0 = geometric_stable_density(1.0, 1, 2.0, 0.0);
    CHECK(rel(fin0.value, 1.0 / sp::kPi) < 1e-12);  // s(1,0) Gamma(1)/Gamma(2) = 1/pi
    // cross-check against the Fourier route at x = 0
    SymbolSpec geo1{Family::GEOMETRIC_STABLE, 1, 1.0};
    CHECK(rel(fin0.value, density_from_symbol(geo1, 2.0, 0.0).value) < 1e-6);
}

TEST_CASE("example envelopes", "[kernels]") {
    // unit-ball measure, d = 1: t |x|^{2 omega_d t - d} with omega_1 = 2
    ExampleParams e1;
    e1.d = 1;
    auto v1 = example_estimate(ExampleId::EX1, e1, 0.25, 0.5);
    CHECK(v1.in_regime);
    CHECK(rel(v1.value, 0.25) < 1e-14);
    CHECK_FALSE(example_estimate(ExampleId::EX1, e1, 0.25, 1.5).in_regime);

    // geometric stable piecewise forms
    ExampleParams e3;
    e3.d = 1;
    e3.alpha = 1.0;
    auto tail = example_estimate(ExampleId::EX3, e3, 0.4, 2.0);
    CHECK(tail.regime == "tail");
    CHECK(rel(tail.value, 0.4 * std::pow(2.0, -2.0)) < 1e-14);
    auto sing = example_estimate(ExampleId::EX3, e3, 0.5, 0.1);
    CHECK(sing.regime == "interior-singular");
    CHECK(rel(sing.value, 0.5 * (std::log(20.0) + std::pow(0.1, -0.5))) < 1e-14);
    auto finite = example_estimate(ExampleId::EX3, e3, 1.5, 0.1);
    CHECK(finite.regime == "interior-finite");
    auto stab = example_estimate(ExampleId::EX3, e3, 4.0, 0.1);  // t1 = 3
    CHECK(stab.regime == "stable-like");

    // half-iterated family: flat branch when t sqrt(a/d) >= 1 + 2 sqrt(-d log x)
    ExampleParams e4;
    e4.d = 1;
    e4.alpha = 1.0;
    auto flat = example_estimate(ExampleId::EX4, e4, 10.0, 0.2);
    CHECK(flat.regime == "flat");
    CHECK(rel(flat.value, std::pow(10.0, -2.0)) < 1e-14);
    auto inter = example_estimate(ExampleId::EX4, e4, 0.5, 0.2);
    CHECK(inter.regime == "interior");
    CHECK(inter.value > 0.0);

    // EX2 envelope is positive and decreasing in x on its validity region
    ExampleParams e2;
    e2.d = 1;
    e2.alpha = 2.0;
    e2.beta = 0.5;
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        auto v = example_estimate(ExampleId::EX2, e2, 0.3, x);
        CHECK(v.in_regime);
        CHECK(v.value < prev);
        prev = v.value;
    }
}

TEST_CASE("envelope sandwiches the computed density", "[kernels]") {
    // unit-ball family in d = 1: p(t,x) / EX1 stays in one interval
    SymbolSpec tl{Family::TRUNCATED_LOG, 1};
    InversionConfig cfg;
    cfg.rel_tol = 1e-7;
    ExampleParams e1;
    e1.d = 1;
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (double t : {0.1, 0.25}) {
        for (double x : {0.05, 0.2, 0.6, 0.9}) {
            const double p = density_from_symbol(tl, t, x, cfg).value;
            const double env = example_estimate(ExampleId::EX1, e1, t, x).value;
            cmin = std::min(cmin, p / env);
            cmax = std::max(cmax, p / env);
        }
    }
    INFO("EX1 sandwich interval [" << cmin << ", " << cmax << "]");
    CHECK(cmin > 0.0);
    CHECK(std::isfinite(cmax));
    CHECK(cmax / cmin < 50.0);

    // geometric stable in d = 1 against EX3
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    ExampleParams e3;
    e3.d = 1;
    e3.alpha = 1.0;
    cmin = std::numeric_limits<double>::infinity();
    cmax = 0.0;
    for (double t : {0.2, 0.5, 1.5}) {
        for (double x : {0.05, 0.3, 0.9, 2.0}) {
            const double p = density_from_symbol(geo, t, x, cfg).value;
            const double env = example_estimate(ExampleId::EX3, e3, t, x).value;
            cmin = std::min(cmin, p / env);
            cmax = std::max(cmax, p / env);
        }
    }
    INFO("EX3 sandwich interval [" << cmin << ", " << cmax << "]");
    CHECK(cmin > 0.0);
    CHECK(cmax / cmin < 50.0);
}

TEST_CASE("kernel table", "[kernels]") {
    SymbolSpec cauchy{Family::STABLE, 1, 1.0};
    InversionConfig cfg;
    std::vector<double> ts = {0.5, 1.0};
    std::vector<double> xs;
    for (int i = 0; i < 12; ++i) xs.push_back(0.05 * std::pow(100.0, i / 11.0));
    auto table = build_kernel_table(cauchy, ts, xs, cfg);
    REQUIRE(table.values.size() == ts.size() * xs.size());
    double maxerr = 0.0;
    for (size_t it = 0; it < ts.size(); ++it) {
        for (size_t ix = 0; ix < xs.size(); ++ix) {
            maxerr = std::max(maxerr,
                              rel(table.at(it, ix), oracles::cauchy_kernel(1, ts[it], xs[ix])));
            if (ix) CHECK(table.at(it, ix) <= table.at(it, ix - 1));  // rows nonincreasing
            CHECK(table.flag_at(it, ix) == EvalFlag::OK);
        }
    }
    CHECK(maxerr < 1e-8);

    // identical table from a 4-thread build
    auto table4 = build_kernel_table(cauchy, ts, xs, cfg, 4);
    CHECK(table4.values == table.values);

    // geometric stable with t <= d/alpha flags the origin entry
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    auto gt = build_kernel_table(geo, {0.5}, {0.5, 1.0}, cfg);
    CHECK(gt.p0_flags[0] == EvalFlag::P0_INFINITE);
    CHECK(std::isinf(gt.p0_row[0]));

    CHECK_THROWS_AS(build_kernel_table(cauchy, {1.0, 0.5}, xs, cfg),
                    std::invalid_argument);
}
