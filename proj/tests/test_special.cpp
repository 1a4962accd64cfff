#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "levyheat/quadrature.hpp"
#include "levyheat/special.hpp"

using namespace levyheat;
namespace sp = levyheat::special;

namespace {

// Independent half-integer oracle: spherical Bessel j_n by downward (Miller)
// recurrence normalized against j_0 = sin(x)/x, then J_{n+1/2} = sqrt(2x/pi) j_n.
double half_integer_oracle(int n, double x) {
    if (n == -1) return std::sqrt(2.0 / (sp::kPi * x)) * std::cos(x);
    const int nstart = n + 24 + (int)(1.5 * x);
    double jp = 0.0, jc = 1e-30;
    std::vector<double> vals(n + 1, 0.0);
    for (int k = nstart; k >= 0; --k) {
        const double jm = (2.0 * k + 3.0) / x * jc - jp;  // j_k from j_{k+1}, j_{k+2}
        jp = jc;
        jc = jm;
        if (k <= n) vals[k] = jc;
    }
    const double scale = (std::sin(x) / x) / jc;  // jc holds (scale factor) * j_0
    return vals[n] * scale * std::sqrt(2.0 * x / sp::kPi);
}

double rel_or_abs(double a, double b) {
    const double diff = std::abs(a - b);
    const double mag = std::max(std::abs(a), std::abs(b));
    return (mag > 1.0) ? diff / mag : diff;
}

}  // namespace

TEST_CASE("gauss-kronrod basics", "[special][quadrature]") {
    auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-14);
    CHECK(r.converged);

    // a spiky integrand needs the adaptive path
    auto s = quad::integrate([](double x) { return std::exp(-200.0 * x); }, 0.0, 2.4,
                             {1e-12, 0.0, 4000});
    CHECK(std::abs(s.value - (1.0 - std::exp(-480.0)) / 200.0) < 1e-14);
}

TEST_CASE("wynn epsilon sums alternating series", "[special][quadrature]") {
    // convergent: sum (-1)^k/(k+1) = ln 2
    {
        WynnEpsilon eps;
        double s = 0.0, best = 0.0, sign = 1.0;
        for (int k = 0; k < 24; ++k) {
            s += sign / (k + 1.0);
            sign = -sign;
            best = eps.push(s);
        }
        CHECK(std::abs(best - std::log(2.0)) < 1e-12);
    }
    // divergent alternating with growing terms: 1 - 2 + 3 - 4 + ... -> 1/4
    {
        WynnEpsilon eps;
        double s = 0.0, best = 0.0, sign = 1.0;
        for (int k = 1; k <= 20; ++k) {
            s += sign * k;
            sign = -sign;
            best = eps.push(s);
        }
        CHECK(std::abs(best - 0.25) < 1e-10);
    }
    // antilimit with a k^{1/2} envelope, the shape the oscillatory tails
    // produce; eta(-1/2) = sum (-1)^{k+1} sqrt(k) = 0.3801048...
    {
        WynnEpsilon eps;
        double s = 0.0, best = 0.0, sign = 1.0;
        for (int k = 1; k <= 40; ++k) {
            s += sign * std::sqrt((double)k);
            sign = -sign;
            best = eps.push(s);
        }
        CHECK(std::abs(best - 0.3801048) < 1e-6);
    }
}

TEST_CASE("bessel_j values", "[special]") {
    CHECK(sp::bessel_j(0.0, 0.0) == 1.0);
    CHECK(sp::bessel_j(1.5, 0.0) == 0.0);
    // J_{1/2}(pi/2) = 2/pi
    CHECK(std::abs(sp::bessel_j(0.5, sp::kPi / 2.0) - 2.0 / sp::kPi) < 1e-13);
    CHECK_THROWS_AS(sp::bessel_j(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(sp::bessel_j(-1.0, 1.0), std::domain_error);

    // first J0 zero located independently by bisection on the series
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (sp::detail::bessel_j_series(0.0, mid) > 0.0) lo = mid;
        else hi = mid;
    }
    const double z0 = 0.5 * (lo + hi);
    CHECK(std::abs(z0 - 2.4048255577) < 1e-9);
    CHECK(std::abs(sp::bessel_j(0.0, 2.4048255577)) < 1e-9);
}

TEST_CASE("bessel_j half-integer orders match trig forms", "[special]") {
    for (int n = -1; n <= 4; ++n) {
        const double nu = n + 0.5;
        for (int i = 0; i <= 200; ++i) {
            const double x = 1e-6 * std::pow(1e8, i / 200.0);
            if (nu < 0.0 && x < 1e-3) continue;  // J_{-1/2} blows up at 0; oracle fine
            const double got = sp::bessel_j(nu, x);
            const double want = half_integer_oracle(n, x);
            CHECK(rel_or_abs(got, want) < 1e-12);
        }
    }
}

TEST_CASE("bessel_j integer orders: series and large-x branch overlap", "[special]") {
    for (double nu : {0.0, 1.0, 2.0, 3.0, 4.0}) {
        for (double x : {8.0, 8.5, 9.0, 10.0, 12.0}) {
            const double series = sp::detail::bessel_j_series(nu, x);
            const double big = sp::bessel_j(nu, x);  // takes the large-x path
            CHECK(rel_or_abs(series, big) < 5e-12);
        }
    }
}

TEST_CASE("bessel envelope min{r^-1/2, r^{d/2-1}} with C <= 2", "[special]") {
    for (int d = 1; d <= 10; ++d) {
        const double nu = 0.5 * d - 1.0;
        double C = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double r = 1e-3 * std::pow(1e6, i / 400.0);
            const double env = std::min(1.0 / std::sqrt(r), std::pow(r, nu));
            C = std::max(C, std::abs(sp::bessel_j(nu, r)) / env);
        }
        INFO("d=" << d << " C=" << C);
        CHECK(C <= 2.0);
    }
}

TEST_CASE("bessel_j_zeros", "[special]") {
    auto z = sp::bessel_j_zeros(0.5, 3);
    REQUIRE(z.size() == 3);
    CHECK(std::abs(z[0] - sp::kPi) < 1e-12);
    CHECK(std::abs(z[1] - 2 * sp::kPi) < 1e-12);
    CHECK(std::abs(z[2] - 3 * sp::kPi) < 1e-12);
    CHECK(std::abs(sp::bessel_j_zeros(0.0, 1)[0] - 2.4048255577) < 1e-9);
    CHECK(std::abs(sp::bessel_j_zeros(1.0, 1)[0] - 3.8317059702) < 1e-9);
    // strictly increasing, small residuals
    for (double nu : {-0.5, 0.0, 1.0, 2.5, 4.0}) {
        auto zs = sp::bessel_j_zeros(nu, 20);
        for (size_t i = 0; i < zs.size(); ++i) {
            if (i) CHECK(zs[i] > zs[i - 1]);
            CHECK(std::abs(sp::bessel_j(nu, zs[i])) < 1e-10);
        }
    }
}

TEST_CASE("incomplete gamma functions", "[special]") {
    // gamma_upper(1, x) = e^{-x}
    for (double x : {0.1, 1.0, 5.0, 30.0}) {
        CHECK(std::abs(sp::gamma_upper(1.0, x) - std::exp(-x)) < 1e-12 * std::exp(-x) + 1e-300);
    }
    CHECK(sp::gamma_lower(1.0, 0.0) == 0.0);

    // quadrature oracle for Gamma(1/2, 1)
    auto oracle = quad::integrate_to_inf(
        [](double u) { return std::exp(-u) / std::sqrt(u); }, 1.0, 4.0, {1e-13, 0.0, 2000});
    CHECK(std::abs(sp::gamma_upper(0.5, 1.0) - oracle.value) < 1e-10);
    CHECK(std::abs(sp::gamma_upper(0.5, 1.0) - 0.2788056) < 1e-6);

    // complementarity Gamma(s,x) + gamma(s,x) = Gamma(s)
    for (double s : {0.5, 1.0, 1.5, 3.0}) {
        for (double x : {0.0, 0.003, 0.7, 4.0, 17.0, 50.0}) {
            const double total = sp::gamma_upper(s, x) + sp::gamma_lower(s, x);
            CHECK(std::abs(total - std::tgamma(s)) < 1e-12 * std::tgamma(s));
        }
    }

    // negative and zero order against quadrature oracles
    for (double s : {0.0, -0.5, -1.0, -2.3}) {
        for (double x : {0.25, 1.0, 6.0}) {
            auto q = quad::integrate_to_inf(
                [&](double u) { return std::exp(-u) * std::pow(u, s - 1.0); }, x, 2.0 + x,
                {1e-13, 0.0, 4000});
            CHECK(std::abs(sp::gamma_upper(s, x) - q.value) <
                  1e-9 * std::abs(q.value) + 1e-18);
        }
    }
    CHECK_THROWS_AS(sp::gamma_upper(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(sp::gamma_lower(-0.5, 1.0), std::domain_error);
}

TEST_CASE("cosine integral cin", "[special]") {
    // oracle: adaptive quadrature of (1-cos v)/v
    for (double u : {0.3, 2.0, 4.0, 9.0, 30.0, 49.0}) {
        auto q = quad::integrate([](double v) { return v < 1e-12 ? 0.5 * v : (1.0 - std::cos(v)) / v; },
                                 0.0, u, {1e-13, 0.0, 4000});
        CHECK(std::abs(sp::cosine_integral_cin(u) - q.value) < 1e-11 * (1.0 + q.value));
    }
    // large-u asymptotic continuity across the switch
    const double a = sp::cosine_integral_cin(49.9);
    const double b = sp::cosine_integral_cin(50.1);
    CHECK(std::abs((b - a) - 0.0) < 0.05);  // smooth-ish across
    // cin(e^w) = w + gamma for large w
    CHECK(std::abs(sp::cosine_integral_cin_log_arg(100.0) - (100.0 + sp::kEulerGamma)) < 1e-12);
}

TEST_CASE("h function integral and envelope", "[special]") {
    CHECK(sp::h_fn_integral(1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(sp::h_fn_integral(0.0, 1.0), std::domain_error);

    // (t=1, a=1): integral vs envelope sqrt(pi) e^{-1} within a factor of 4
    const double env11 = sp::h_fn_envelope(1.0, 1.0).value;
    CHECK(std::abs(env11 - std::sqrt(sp::kPi) * std::exp(-1.0)) < 1e-12);
    const double int11 = sp::h_fn_integral(1.0, 1.0);
    CHECK(int11 / env11 < 4.0);
    CHECK(env11 / int11 < 4.0);

    // regime tag: t = 0.5 <= 1 + 2 sqrt(4) -> LOW
    CHECK(sp::h_fn_envelope(0.5, 4.0).regime == sp::HRegime::LOW);

    // quadrature oracle on a few points
    for (double t : {0.5, 1.0, 2.0}) {
        for (double a : {0.5, 2.0, 9.0}) {
            const double c = 0.25 * t * t * a;
            auto q = quad::integrate(
                [&](double v) {
                    if (v <= 0.0) return 0.0;
                    const double e = -v - c / v;
                    return e < -700.0 ? 0.0 : std::exp(e) / std::sqrt(v);
                },
                0.0, a, {1e-12, 0.0, 4000});
            CHECK(std::abs(sp::h_fn_integral(t, a) - q.value) < 1e-9 * (1.0 + q.value));
        }
    }

    // ratio profile over the LOW region stays within a modest constant;
    // HIGH region (as printed) is only reported
    double c_low = 0.0;
    double c_high = 0.0;
    for (double t = 0.1; t <= 10.0; t += 0.45) {
        for (double a = 0.01; a <= 25.0; a *= 1.9) {
            double integral = sp::h_fn_integral(t, a);
            sp::HEnvelope env;
            try {
                env = sp::h_fn_envelope(t, a);
            } catch (const std::domain_error&) {
                continue;  // guard band around t^2 = 4a
            }
            if (integral <= 0.0) continue;
            const double ratio = integral / env.value;
            const double dev = std::max(ratio, 1.0 / ratio);
            if (env.regime == sp::HRegime::LOW) c_low = std::max(c_low, dev);
            else c_high = std::max(c_high, dev);
        }
    }
    INFO("LOW-regime comparability constant C = " << c_low
         << ", HIGH (as printed) C = " << c_high);
    // deterministic sweep; the observed LOW constant is ~23 (it degrades as
    // a -> 0), the HIGH branch as printed is only required to stay finite
    CHECK(c_low < 50.0);
    CHECK(std::isfinite(c_high));
}

TEST_CASE("dimension constants", "[special]") {
    CHECK(std::abs(sp::surface_area(1) - 2.0) < 1e-15);
    CHECK(std::abs(sp::surface_area(2) - 2.0 * sp::kPi) < 1e-14);
    CHECK(std::abs(sp::surface_area(3) - 4.0 * sp::kPi) < 1e-14);
    CHECK(std::abs(sp::sv_limit_constant(1) - 0.5) < 1e-15);
    CHECK(std::abs(sp::sv_limit_constant(3) - 1.0 / (4.0 * sp::kPi)) < 1e-16);
    CHECK(std::abs(sp::stable_asym_constant(1, 1.0) - 1.0 / sp::kPi) < 1e-15);
}
