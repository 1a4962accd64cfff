#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levyheat/transforms.hpp"
#include "oracles.hpp"

using namespace levyheat;
namespace sp = levyheat::special;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("hankel_inverse closed-form anchors", "[transforms]") {
    InversionConfig cfg;
    // Gaussian in d = 3 at x = 1
    RadialFunction gaussF{[](double s) { return std::exp(-s * s); }};
    auto g = hankel_inverse(gaussF, 3, 1.0, cfg);
    CHECK(g.converged);
    CHECK(rel(g.value, oracles::gauss_kernel(3, 1.0, 1.0)) < 1e-10);
    CHECK(rel(g.value, std::pow(4.0 * sp::kPi, -1.5) * std::exp(-0.25)) < 1e-10);

    // Cauchy in d = 3 at x = 2
    RadialFunction cauchyF{[](double s) { return std::exp(-s); }};
    auto c = hankel_inverse(cauchyF, 3, 2.0, cfg);
    CHECK(rel(c.value, oracles::cauchy_kernel(3, 1.0, 2.0)) < 1e-10);

    CHECK_THROWS_AS(hankel_inverse(cauchyF, 1, 0.0, cfg), std::domain_error);

    // head divergence: F ~ s^{-d-1} makes s^{d-1} F non-integrable at 0
    RadialFunction divF{[](double s) { return std::pow(s, -2.5); }};
    auto dres = hankel_inverse(divF, 1, 1.0, cfg);
    CHECK(dres.flag == EvalFlag::DIVERGENT_HEAD);
}

TEST_CASE("density_from_symbol matches Cauchy and Gaussian kernels", "[transforms]") {
    InversionConfig cfg;
    for (int d : {1, 2, 3}) {
        SymbolSpec cauchy{Family::STABLE, d, 1.0};
        SymbolSpec gauss{Family::GAUSSIAN, d};
        for (double t : {0.5, 1.0, 2.0}) {
            for (int i = 0; i < 9; ++i) {
                const double x = 1e-2 * std::pow(1e3, i / 8.0);
                auto pc = density_from_symbol(cauchy, t, x, cfg);
                CHECK(pc.converged);
                CHECK(rel(pc.value, oracles::cauchy_kernel(d, t, x)) < 1e-8);
                auto pg = density_from_symbol(gauss, t, x, cfg);
                const double want = oracles::gauss_kernel(d, t, x);
                CHECK(rel(pg.value, want) < 1e-8);
                // the oscillatory pipeline itself, where cancellation allows
                if (x < 2.5 * std::sqrt(t)) {
                    InversionConfig num = cfg;
                    num.force_numeric = true;
                    num.rel_tol = 1e-10;
                    auto pn = density_from_symbol(gauss, t, x, num);
                    CHECK(rel(pn.value, want) < 1e-7);
                }
            }
        }
        // x = 0 limit route
        auto p0 = density_from_symbol(cauchy, 1.0, 0.0, cfg);
        CHECK(rel(p0.value, oracles::cauchy_kernel(d, 1.0, 0.0)) < 1e-8);
    }
    // the d=1 t=1 anchor: p(1,0) = 1/pi
    SymbolSpec c1{Family::STABLE, 1, 1.0};
    CHECK(rel(density_from_symbol(c1, 1.0, 0.0).value, 1.0 / sp::kPi) < 1e-9);
}

TEST_CASE("p(t,0) finiteness rule", "[transforms]") {
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    CHECK_FALSE(density_finite_at_origin(geo, 0.5));   // t <= d/alpha
    CHECK_FALSE(density_finite_at_origin(geo, 1.0));   // boundary: still infinite
    CHECK(density_finite_at_origin(geo, 2.0));
    auto p0 = density_from_symbol(geo, 0.5, 0.0);
    CHECK(p0.flag == EvalFlag::P0_INFINITE);
    CHECK(std::isinf(p0.value));
    // finite branch has the closed value 1/(pi (t-1)) at t = 2
    auto fin = density_from_symbol(geo, 2.0, 0.0);
    CHECK(rel(fin.value, 1.0 / sp::kPi) < 1e-6);

    SymbolSpec gauss{Family::GAUSSIAN, 2};
    CHECK(density_finite_at_origin(gauss, 1.0));
    CHECK(rel(density_from_symbol(gauss, 1.0, 0.0).value, 1.0 / (4.0 * sp::kPi)) < 1e-9);
}

TEST_CASE("slowly varying density: unimodal, positive, epsilon-accelerated",
          "[transforms]") {
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    InversionConfig cfg;
    cfg.rel_tol = 1e-7;
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {0.01, 0.05, 0.2, 1.0, 3.0}) {
        auto p = density_from_symbol(geo, 0.5, x, cfg);
        INFO("x=" << x << " p=" << p.value << " cells=" << p.tail_terms);
        CHECK(p.value > 0.0);
        CHECK(p.value < prev);
        prev = p.value;
    }
    // small t: p(t, x) approaches t nu(x); nu is the gamma-mixture of Cauchy
    // kernels (independent single-quadrature oracle)
    const double x = 0.01, t = 1e-3;
    auto p = density_from_symbol(geo, t, x, cfg);
    auto nu = quad::integrate_to_inf(
        [&](double u) { return std::exp(-u) / (sp::kPi * (u * u + x * x)); }, 0.0, 1.0,
        {1e-10, 0.0, 2000});
    CHECK(rel(p.value, t * nu.value) < 0.05);
}

TEST_CASE("resolvent anchors", "[transforms]") {
    InversionConfig cfg;
    // Newtonian potential
    SymbolSpec gauss{Family::GAUSSIAN, 3};
    for (double x : {0.25, 1.0, 4.0}) {
        auto r = resolvent_from_symbol(gauss, 0.0, x, cfg);
        CHECK(rel(r.value, 1.0 / (4.0 * sp::kPi * x)) < 1e-9);
    }
    // Riesz potential for the Cauchy process in d = 3, with the time-integral
    // of the closed-form kernel as an independent cross-check
    SymbolSpec cauchy{Family::STABLE, 3, 1.0};
    auto r = resolvent_from_symbol(cauchy, 0.0, 1.0, cfg);
    CHECK(rel(r.value, oracles::riesz_green(3, 1.0, 1.0)) < 1e-8);
    CHECK(rel(r.value, sp::riesz_constant(3, 1.0)) < 1e-8);
    auto timeInt = quad::integrate_to_inf(
        [](double t) { return oracles::cauchy_kernel(3, t, 1.0); }, 0.0, 1.0,
        {1e-11, 0.0, 2000});
    CHECK(rel(r.value, timeInt.value) < 1e-8);

    // recurrent case refuses lambda = 0
    SymbolSpec c1{Family::STABLE, 1, 1.0};
    CHECK(resolvent_from_symbol(c1, 0.0, 1.0, cfg).flag == EvalFlag::NOT_TRANSIENT);
    CHECK(symbol_transient(SymbolSpec{Family::GEOMETRIC_STABLE, 3, 1.0}));

    // monotone in lambda
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 3, 1.0};
    const double g1 = resolvent_from_symbol(geo, 1.0, 0.5, cfg).value;
    const double g2 = resolvent_from_symbol(geo, 2.0, 0.5, cfg).value;
    CHECK(g2 < g1);

    // resolvent identity: frequency route vs time quadrature of the density
    for (double xs : {0.5, 1.5}) {
        InversionConfig loose;
        loose.rel_tol = 1e-8;
        const double lam = 1.0;
        auto freq = resolvent_from_symbol(geo, lam, xs, loose);
        auto timeq = quad::integrate_to_inf(
            [&](double t) {
                return t < 1e-12 ? 0.0
                                 : std::exp(-lam * t) *
                                       density_from_symbol(geo, t, xs, loose).value;
            },
            0.0, 1.0, {1e-7, 0.0, 400});
        CHECK(rel(freq.value, timeq.value) < 1e-5);
    }
}

TEST_CASE("green-mass laplace functional", "[transforms]") {
    // for the Gaussian symbol in d = 3, f(r) = G(B_sqrt(r)) = r/2, so
    // lambda L f(lambda) = 1/(2 lambda)
    SymbolSpec gauss{Family::GAUSSIAN, 3};
    for (double lam : {0.5, 1.0, 4.0}) {
        CHECK(rel(laplace_green_mass(gauss, lam), 0.5 / lam) < 1e-10);
    }
    SymbolSpec c1{Family::STABLE, 1, 1.0};
    CHECK_THROWS_AS(laplace_green_mass(c1, 1.0), std::domain_error);
}

TEST_CASE("laplace functional", "[transforms]") {
    SymbolSpec gauss{Family::GAUSSIAN, 1};
    CHECK(std::abs(laplace_U(gauss, 0.0, 3.7) - 1.0) < 1e-12);
    // closed form 1/sqrt(5) at t = 1, lam = 1 (gaussian integral oracle)
    CHECK(rel(laplace_U(gauss, 1.0, 1.0), 1.0 / std::sqrt(5.0)) < 1e-12);
    // decreasing in lambda
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    CHECK(laplace_U(geo, 0.5, 2.0) < laplace_U(geo, 0.5, 1.0));
    // scaled variant agrees with the plain one in a representable regime
    const double w = 3.0, t = 0.3;
    const double plain = laplace_U(geo, t, std::exp(2.0 * w));
    const double scaled = std::exp(-t * geo.psi_log(w)) * laplace_U_scaled(geo, t, w, 0.0);
    CHECK(rel(scaled, plain) < 1e-10);
}

TEST_CASE("Q_t and U_t", "[transforms]") {
    InversionConfig cfg;
    cfg.rel_tol = 1e-7;
    SymbolSpec gauss{Family::GAUSSIAN, 1};
    // U_t(r) -> 1 as r -> infinity (total mass)
    auto u = U_t(gauss, 1.0, 100.0, cfg);  // sqrt(r) = 10, X ~ N(0,2)
    CHECK(std::abs(u.value - 1.0) < 1e-6);
    // monotone in r
    SymbolSpec cauchy{Family::STABLE, 1, 1.0};
    auto q1 = Q_t(cauchy, 1.0, 0.5, cfg);
    auto q2 = Q_t(cauchy, 1.0, 2.0, cfg);
    CHECK(q2.value > q1.value);
    // Gaussian Q_t against direct quadrature of the oracle kernel (d = 1:
    // weight u^{d+1} = u^2, surface factor 2)
    auto oracle = quad::integrate(
        [&](double uu) { return 2.0 * uu * uu * oracles::gauss_kernel(1, 1.0, uu); },
        0.0, std::sqrt(2.0), {1e-12, 0.0, 2000});
    auto qg = Q_t(gauss, 1.0, 2.0, cfg);
    CHECK(rel(qg.value, oracle.value) < 1e-6);
}

TEST_CASE("radial integrals propagate density failures", "[transforms]") {
    // starve the inversion of cells so entries cannot converge
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    InversionConfig tiny;
    tiny.max_zeros = 8;
    tiny.rel_tol = 1e-9;
    auto q = Q_t(geo, 0.3, 1.0, tiny);
    CHECK(q.flag == EvalFlag::NON_CONVERGED);
    CHECK_FALSE(q.converged);
}

TEST_CASE("tauberian ratios", "[transforms]") {
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    // SMALL regime: t psi(sqrt(lam)) = 1e-3
    const double lam = 1e12;
    const double t = 1e-3 / geo.psi(1e6);
    auto r = tauberian_ratio(geo, t, lam, TauberianRegime::SMALL);
    INFO("ratio=" << r.ratio << " bracket=[" << r.lower << "," << r.upper << "]");
    CHECK_FALSE(r.regime_mismatch);
    CHECK(r.ratio > 0.4);
    CHECK(r.ratio < 0.6);
    // bracket sanity: lower <= upper, width ratio about a
    for (double a : {1.05, 1.2}) {
        auto b = tauberian_ratio(geo, t, lam, TauberianRegime::SMALL, a);
        CHECK(b.lower <= b.upper);
        CHECK(b.upper / b.lower <= a * 1.1);
    }
    // spec anchor: t = 0.01, lam = 1e8 within 10% of 1/2
    auto anchor = tauberian_ratio(geo, 0.01, 1e8, TauberianRegime::SMALL);
    CHECK(std::abs(anchor.ratio - 0.5) < 0.05);

    // direct-quadrature cross-check of lambda L{dQ_t}(lambda) at a cheap point
    {
        const double tt = 0.05, ll = 1e4;
        InversionConfig cfg;
        cfg.rel_tol = 1e-7;
        auto direct = quad::integrate_to_inf(
            [&](double u) {
                if (u < 1e-9) return 0.0;
                return std::exp(-ll * u * u) * 2.0 * u * u *
                       density_from_symbol(geo, tt, u, cfg).value;
            },
            0.0, 1.0 / std::sqrt(ll), {1e-7, 0.0, 200});
        auto br = tauberian_ratio(geo, tt, ll, TauberianRegime::SMALL, 1.02);
        const double bracket_mid = br.ratio * tt * geo.ell(std::sqrt(ll));
        CHECK(rel(ll * direct.value, bracket_mid) < 0.03);
    }

    // LARGE regime trend toward 1/2 for the bounded-auxiliary family
    SymbolSpec iter{Family::ITERATED_GEOMETRIC, 1, 2.0, 0.5};
    double prev_dev = std::numeric_limits<double>::infinity();
    for (double target : {10.0, 30.0, 100.0}) {
        const double tt = 0.2;
        const double psi_target = target / tt;
        const double w = 0.5 * psi_target * psi_target;  // psi(e^w) ~ sqrt(2w)
        auto lr = tauberian_ratio(iter, tt, w, TauberianRegime::LARGE);
        INFO("t*psi=" << lr.t_psi << " ratio=" << lr.ratio);
        CHECK(lr.t_psi > 0.9 * target);
        const double dev = std::abs(lr.ratio - 0.5);
        CHECK(dev < prev_dev + 1e-12);
        prev_dev = dev;
    }
    CHECK(prev_dev < 0.25);
}

TEST_CASE("inversion config knobs", "[transforms]") {
    InversionConfig bad;
    bad.rel_tol = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.rel_tol = 1e-9;
    bad.max_zeros = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // a user-chosen head split must not change the answer
    SymbolSpec cauchy{Family::STABLE, 1, 1.0};
    InversionConfig split;
    split.split_radius = 0.7;  // head ends at s = 0.7 instead of z1/x
    auto a = density_from_symbol(cauchy, 1.0, 2.0);
    auto b = density_from_symbol(cauchy, 1.0, 2.0, split);
    CHECK(rel(a.value, b.value) < 1e-9);

    // Euler acceleration and plain summation still converge on decaying tails
    for (auto accel : {InversionConfig::Accel::EULER, InversionConfig::Accel::NONE}) {
        InversionConfig cfg;
        cfg.acceleration = accel;
        auto r = density_from_symbol(cauchy, 1.0, 1.0, cfg);
        CHECK(rel(r.value, oracles::cauchy_kernel(1, 1.0, 1.0)) < 1e-7);
    }
}

TEST_CASE("deep-regime scaled density agrees with plain density", "[transforms]") {
    // where both are representable the two routes must coincide
    SymbolSpec iter{Family::ITERATED_GEOMETRIC, 1, 2.0, 0.5};
    InversionConfig cfg;
    cfg.rel_tol = 1e-8;
    const double x = 1e-3, t = 0.3;
    const double L = std::log(1.0 / x);
    auto deep = density_scaled_deep(iter, t, L, cfg);
    auto plain = density_from_symbol(iter, t, x, cfg);
    const double implied =
        deep.value * std::exp(-t * iter.psi_log(L)) / std::pow(x, 1.0 * iter.d);
    CHECK(rel(implied, plain.value) < 1e-6);
}

TEST_CASE("chapman-kolmogorov and normalization spot checks", "[transforms]") {
    InversionConfig cfg;
    cfg.rel_tol = 1e-8;
    // normalization: radial integral of the inverted density is 1
    SymbolSpec geo{Family::GEOMETRIC_STABLE, 1, 1.0};
    const double t = 2.0;  // p(t,0) finite here
    auto mass = quad::integrate_to_inf(
        [&](double u) {
            return u < 1e-10 ? 2.0 * density_from_symbol(geo, t, 0.0, cfg).value
                             : 2.0 * density_from_symbol(geo, t, u, cfg).value;
        },
        0.0, 1.0, {1e-7, 0.0, 300});
    CHECK(std::abs(mass.value - 1.0) < 1e-6);

    // Chapman-Kolmogorov in d = 1 at three (t, x) points; the factors have
    // integrable log-singularities at y = 0 and y = x, so those sit on panel
    // boundaries (Kronrod nodes are interior)
    for (auto [tt, xx] : {std::pair{0.7, 0.4}, std::pair{1.0, 1.0}, std::pair{1.5, 0.1}}) {
        auto f = [&](double y) {
            const double ya = std::max(std::abs(y), 1e-14);
            const double yb = std::max(std::abs(xx - y), 1e-14);
            return density_from_symbol(geo, tt, ya, cfg).value *
                   density_from_symbol(geo, tt, yb, cfg).value;
        };
        double conv = 0.0;
        conv += quad::integrate(f, -30.0, 0.0, {1e-6, 0.0, 300}).value;
        conv += quad::integrate(f, 0.0, xx, {1e-6, 0.0, 300}).value;
        conv += quad::integrate(f, xx, 30.0, {1e-6, 0.0, 300}).value;
        auto direct = density_from_symbol(geo, 2.0 * tt, xx, cfg);
        CHECK(rel(conv, direct.value) < 1e-4);
    }
}
