// Registry and analysis of radial Levy-Khintchine exponents: built-in
// families, the running supremum psi*, de Haan auxiliary extraction and weak
// scaling index estimation.
//
// Family formulas are evaluated in two forms: psi(u) for ordinary arguments
// and psi(e^w) for log-arguments, so the deep asymptotic regimes (where 1/|x|
// overflows a double) stay reachable.  Increments psi(e^{w+dw}) - psi(e^w)
// have dedicated cancellation-safe paths per family.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyheat/quadrature.hpp"
#include "levyheat/special.hpp"

namespace levyheat {

// Evaluable radial map with declared domain and shape metadata.
struct RadialFunction {
    std::function<double(double)> eval;
    double domain_lo = 0.0;
    double domain_hi = std::numeric_limits<double>::infinity();
    bool nonincreasing = false;
    bool singular_at_origin = false;

    double operator()(double r) const { return eval(r); }
};

enum class Family {
    GEOMETRIC_STABLE,
    ITERATED_GEOMETRIC,
    TRUNCATED_LOG,
    STABLE,
    GAUSSIAN,
    SUBORDINATE_BM,
    CUSTOM,
};

enum class BernsteinFamily { GAMMA, STABLE_SUB, GEOM_SUB };

// Laplace exponent of a subordinator together with its first two derivatives
// and, where available, the density of its Levy measure.
struct BernsteinSpec {
    BernsteinFamily family = BernsteinFamily::GAMMA;
    double gamma_exp = 0.5;  // STABLE_SUB: phi(u) = u^gamma_exp
    double alpha = 2.0;      // GEOM_SUB: phi(u) = (log(1 + u^{alpha/2}))^beta
    double beta = 1.0;

    double phi(double u) const {
        switch (family) {
            case BernsteinFamily::GAMMA:
                return std::log1p(u);
            case BernsteinFamily::STABLE_SUB:
                return std::pow(u, gamma_exp);
            case BernsteinFamily::GEOM_SUB:
                return std::pow(std::log1p(std::pow(u, 0.5 * alpha)), beta);
        }
        return 0.0;
    }
    // phi(e^w), stable for huge w
    double phi_log(double w) const {
        switch (family) {
            case BernsteinFamily::GAMMA:
                return (w > 0.0) ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w));
            case BernsteinFamily::STABLE_SUB:
                return std::exp(gamma_exp * w);
            case BernsteinFamily::GEOM_SUB: {
                const double a = 0.5 * alpha * w;
                const double base = (a > 0.0) ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
                return std::pow(base, beta);
            }
        }
        return 0.0;
    }
    double phi_prime(double u) const {
        switch (family) {
            case BernsteinFamily::GAMMA:
                return 1.0 / (1.0 + u);
            case BernsteinFamily::STABLE_SUB:
                return gamma_exp * std::pow(u, gamma_exp - 1.0);
            case BernsteinFamily::GEOM_SUB: {
                const double p = std::pow(u, 0.5 * alpha);
                const double L = std::log1p(p);
                return beta * std::pow(L, beta - 1.0) * 0.5 * alpha * p / (u * (1.0 + p));
            }
        }
        return 0.0;
    }
    double phi_second(double u) const {
        switch (family) {
            case BernsteinFamily::GAMMA:
                return -1.0 / ((1.0 + u) * (1.0 + u));
            case BernsteinFamily::STABLE_SUB:
                return gamma_exp * (gamma_exp - 1.0) * std::pow(u, gamma_exp - 2.0);
            case BernsteinFamily::GEOM_SUB: {
                // d/du [ beta L^{beta-1} * (a/2) u^{a/2-1} / (1+u^{a/2}) ], a = alpha
                const double a = 0.5 * alpha;
                const double p = std::pow(u, a);
                const double L = std::log1p(p);
                const double g = a * p / (u * (1.0 + p));  // dL/du
                const double dg = g * ((a - 1.0) / u - g) ;
                return beta * (beta - 1.0) * std::pow(L, beta - 2.0) * g * g +
                       beta * std::pow(L, beta - 1.0) * dg;
            }
        }
        return 0.0;
    }
    bool has_mu_density() const {
        return family == BernsteinFamily::GAMMA || family == BernsteinFamily::STABLE_SUB;
    }
    double mu_density(double s) const {
        if (s <= 0.0) throw std::domain_error("mu_density: s must be > 0");
        switch (family) {
            case BernsteinFamily::GAMMA:
                return std::exp(-s) / s;
            case BernsteinFamily::STABLE_SUB:
                return gamma_exp / std::tgamma(1.0 - gamma_exp) * std::pow(s, -1.0 - gamma_exp);
            case BernsteinFamily::GEOM_SUB:
                throw std::domain_error("mu_density: not available for this family");
        }
        return 0.0;
    }
};

namespace detail {

// Spherical mean of cos(<v e1, theta>) over the unit sphere in R^d,
// j_d(v) = Gamma(d/2) (2/v)^{d/2-1} J_{d/2-1}(v); j_d(0) = 1.
inline double sphere_cos_mean(int d, double v) {
    if (d == 1) return std::cos(v);
    if (v < 1e-4) {
        const double q = 0.25 * v * v;
        return 1.0 - q / (0.5 * d) * (1.0 - q / (d + 2.0) * ( 1.0 - q /(1.5*d+6.0)));
    }
    const double nu = 0.5 * d - 1.0;
    return std::tgamma(0.5 * d) * std::pow(2.0 / v, nu) * special::bessel_j(nu, v);
}

// int_x^infinity j_d(v)/v dv for d >= 2, by Bessel-zero cells with epsilon
// acceleration (the integrand decays like v^{-(d+1)/2}).
inline double sphere_cos_mean_tail(int d, double x) {
    const double nu = 0.5 * d - 1.0;
    auto f = [&](double v) { return sphere_cos_mean(d, v) / v; };
    std::vector<double> zs = special::bessel_j_zeros(nu, 80);
    size_t first = 0;
    while (first < zs.size() && zs[first] <= x) ++first;
    WynnEpsilon eps;
    double partial = 0.0;
    double prev_best = 0.0, best = 0.0;
    int stable = 0;
    double a = x;
    for (size_t k = first; k < zs.size(); ++k) {
        const double b = zs[k];
        partial += quad::gk15(f, a, b).value;
        a = b;
        best = eps.push(partial);
        if (k > first + 3 && std::abs(best - prev_best) <= 1e-12 * (std::abs(best) + 1e-30)) {
            if (++stable >= 2) break;
        } else {
            stable = 0;
        }
        prev_best = best;
    }
    return best;
}

// Phi_d(u) = int_0^u (1 - j_d(v))/v dv; psi of the unit-ball |x|^{-d} Levy
// density equals surface_area(d) * Phi_d.
inline double truncated_log_profile(int d, double u) {
    if (u <= 0.0) return 0.0;
    if (d == 1) return special::cosine_integral_cin(u);
    auto f = [&](double v) {
        if (v < 1e-8) return v / (2.0 * d);
        return (1.0 - sphere_cos_mean(d, v)) / v;
    };
    const double cut = 50.0;
    if (u <= cut) {
        const int npan = (int)std::ceil(u / special::kPi);
        double total = 0.0;
        for (int p = 0; p < npan; ++p) {
            total += quad::gk15(f, u * p / npan, u * (p + 1) / npan).value;
        }
        return total;
    }
    return truncated_log_profile(d, cut) + std::log(u / cut) -
           (sphere_cos_mean_tail(d, cut) - sphere_cos_mean_tail(d, u));
}

// lim_{u->inf} (Phi_d(u) - ln u); for d = 1 this is Euler's gamma.
inline double truncated_log_profile_offset(int d) {
    if (d == 1) return special::kEulerGamma;
    return truncated_log_profile(d, 50.0) - std::log(50.0) - sphere_cos_mean_tail(d, 50.0);
}

}  // namespace detail

// An isotropic Levy-Khintchine exponent family.
struct SymbolSpec {
    Family family = Family::STABLE;
    int d = 1;
    double alpha = 1.0;  // GEOMETRIC_STABLE / ITERATED_GEOMETRIC / STABLE
    double beta = 1.0;   // ITERATED_GEOMETRIC
    BernsteinSpec bernstein{};
    std::function<double(double)> custom;      // CUSTOM psi
    std::function<double(double)> custom_ell;  // CUSTOM auxiliary, optional
    bool custom_unimodal = false;
    bool custom_nondecreasing = false;

    SymbolSpec() = default;
    SymbolSpec(Family f, int dim, double a = 1.0, double b = 1.0)
        : family(f), d(dim), alpha(a), beta(b) {}

    void validate() const {
        if (d < 1) throw std::invalid_argument("SymbolSpec: d must be >= 1");
        switch (family) {
            case Family::GEOMETRIC_STABLE:
                if (!(alpha > 0.0 && alpha <= 2.0))
                    throw std::invalid_argument("GEOMETRIC_STABLE: alpha must be in (0,2]");
                break;
            case Family::ITERATED_GEOMETRIC:
                if (!(alpha > 0.0 && alpha <= 2.0) || !(beta > 0.0 && beta <= 1.0))
                    throw std::invalid_argument("ITERATED_GEOMETRIC: need 0<alpha<=2, 0<beta<=1");
                break;
            case Family::STABLE:
                if (!(alpha > 0.0 && alpha <= 2.0))
                    throw std::invalid_argument("STABLE: alpha must be in (0,2]");
                break;
            case Family::CUSTOM:
                if (!custom) throw std::invalid_argument("CUSTOM symbol lacks a callable");
                break;
            default:
                break;
        }
    }

    double psi(double u) const {
        if (u < 0.0) throw std::domain_error("psi: u must be >= 0");
        switch (family) {
            case Family::GEOMETRIC_STABLE:
                return std::log1p(std::pow(u, alpha));
            case Family::ITERATED_GEOMETRIC:
                return std::pow(std::log1p(std::pow(u, alpha)), beta);
            case Family::TRUNCATED_LOG:
                return special::surface_area(d) * detail::truncated_log_profile(d, u);
            case Family::STABLE:
                return std::pow(u, alpha);
            case Family::GAUSSIAN:
                return u * u;
            case Family::SUBORDINATE_BM:
                return bernstein.phi(u * u);
            case Family::CUSTOM:
                if (!custom) throw std::invalid_argument("CUSTOM symbol lacks a callable");
                return custom(u);
        }
        return 0.0;
    }

    // psi(e^w); stable for arbitrarily large w on the slowly-varying families
    double psi_log(double w) const {
        auto softplus = [](double a) {
            return (a > 0.0) ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
        };
        switch (family) {
            case Family::GEOMETRIC_STABLE:
                return softplus(alpha * w);
            case Family::ITERATED_GEOMETRIC:
                return std::pow(softplus(alpha * w), beta);
            case Family::TRUNCATED_LOG:
                if (w > 45.0) {
                    return special::surface_area(d) *
                           (w + detail::truncated_log_profile_offset(d));
                }
                return psi(std::exp(w));
            case Family::STABLE:
                return std::exp(alpha * w);
            case Family::GAUSSIAN:
                return std::exp(2.0 * w);
            case Family::SUBORDINATE_BM:
                return bernstein.phi_log(2.0 * w);
            case Family::CUSTOM:
                return psi(std::exp(w));
        }
        return 0.0;
    }

    // psi(e^{w+dw}) - psi(e^w), computed without catastrophic cancellation
    double psi_log_increment(double w, double dw) const {
        auto softplus = [](double a) {
            return (a > 0.0) ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
        };
        auto softplus_inc = [&](double a, double da) {
            // softplus(a + da) - softplus(a)
            if (a > 0.0 && a + da > 0.0) {
                return da + std::log1p(std::exp(-(a + da))) - std::log1p(std::exp(-a));
            }
            return softplus(a + da) - softplus(a);
        };
        switch (family) {
            case Family::GEOMETRIC_STABLE:
                return softplus_inc(alpha * w, alpha * dw);
            case Family::ITERATED_GEOMETRIC: {
                const double A = softplus(alpha * w);
                const double dA = softplus_inc(alpha * w, alpha * dw);
                if (A <= 0.0) return psi_log(w + dw) - psi_log(w);
                // A^b applied to A and A + dA
                return std::pow(A, beta) * std::expm1(beta * std::log1p(dA / A));
            }
            case Family::TRUNCATED_LOG:
                if (w > 50.0 && w + dw > 50.0) return special::surface_area(d) * dw;
                return psi_log(w + dw) - psi_log(w);
            case Family::STABLE:
                return std::exp(alpha * w) * std::expm1(alpha * dw);
            case Family::GAUSSIAN:
                return std::exp(2.0 * w) * std::expm1(2.0 * dw);
            case Family::SUBORDINATE_BM:
                switch (bernstein.family) {
                    case BernsteinFamily::GAMMA:
                        return softplus_inc(2.0 * w, 2.0 * dw);
                    case BernsteinFamily::GEOM_SUB: {
                        const double a = bernstein.alpha, b = bernstein.beta;
                        const double A = softplus(a * w);
                        const double dA = softplus_inc(a * w, a * dw);
                        if (A <= 0.0) return psi_log(w + dw) - psi_log(w);
                        return std::pow(A, b) * std::expm1(b * std::log1p(dA / A));
                    }
                    case BernsteinFamily::STABLE_SUB:
                        return std::exp(2.0 * bernstein.gamma_exp * w) *
                               std::expm1(2.0 * bernstein.gamma_exp * dw);
                }
                return psi_log(w + dw) - psi_log(w);
            case Family::CUSTOM:
                return psi_log(w + dw) - psi_log(w);
        }
        return 0.0;
    }

    bool radially_nondecreasing() const {
        return family != Family::CUSTOM || custom_nondecreasing;
    }
    bool unimodal() const { return family != Family::CUSTOM || custom_unimodal; }

    bool has_exact_ell() const {
        switch (family) {
            case Family::GEOMETRIC_STABLE:
            case Family::ITERATED_GEOMETRIC:
            case Family::TRUNCATED_LOG:
                return true;
            case Family::SUBORDINATE_BM:
                return bernstein.family == BernsteinFamily::GAMMA ||
                       bernstein.family == BernsteinFamily::GEOM_SUB;
            case Family::CUSTOM:
                return static_cast<bool>(custom_ell);
            default:
                return false;
        }
    }

    // The known de Haan auxiliary function of the family, where it has one.
    double ell(double u) const { return ell_log(std::log(u)); }

    double ell_log(double w) const {
        auto softplus = [](double a) {
            return (a > 0.0) ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
        };
        switch (family) {
            case Family::GEOMETRIC_STABLE:
                return alpha;
            case Family::ITERATED_GEOMETRIC:
                // alpha beta (log(1+u^alpha))^{beta-1}: the normalization the
                // increment quotient (psi(lam u)-psi(u))/log(lam) converges to
                return alpha * beta * std::pow(softplus(alpha * w), beta - 1.0);
            case Family::TRUNCATED_LOG:
                return special::surface_area(d);
            case Family::SUBORDINATE_BM:
                if (bernstein.family == BernsteinFamily::GAMMA) return 2.0;
                if (bernstein.family == BernsteinFamily::GEOM_SUB) {
                    const double a = bernstein.alpha, b = bernstein.beta;
                    return a * b * std::pow(softplus(a * w), b - 1.0);
                }
                break;
            case Family::CUSTOM:
                if (custom_ell) return custom_ell(std::exp(w));
                break;
            default:
                break;
        }
        throw std::domain_error("ell: no known auxiliary function for this family");
    }
};

inline double psi_eval(const SymbolSpec& sym, double u) { return sym.psi(u); }

// Running supremum sup_{s in [0,u]} psi(s).  Monotone built-ins short-circuit
// to psi(u); a CUSTOM symbol gets a 256-point grid supremum refined by
// golden-section search around the best cell.
inline double psi_star(const SymbolSpec& sym, double u) {
    if (u < 0.0) throw std::domain_error("psi_star: u must be >= 0");
    if (u == 0.0) return sym.psi(0.0);
    if (sym.radially_nondecreasing()) return sym.psi(u);
    const int n = 256;
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i <= n; ++i) {
        const double v = sym.psi(u * i / n);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double lo = u * std::max(0, best_i - 1) / n;
    double hi = u * std::min(n, best_i + 1) / n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = sym.psi(x1), f2 = sym.psi(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-14 * u; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = sym.psi(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = sym.psi(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

// Finite-difference estimate of the de Haan auxiliary,
// (psi(lam x) - psi(x)) / log(lam).  Default lam = e makes the divisor 1.
inline double ell_estimate(const SymbolSpec& sym, double x, double lam = std::exp(1.0)) {
    if (!(x > 0.0)) throw std::domain_error("ell_estimate: x must be > 0");
    if (!(lam > 0.0)) throw std::domain_error("ell_estimate: lam must be > 0");
    const double ll = std::log(lam);
    if (std::abs(ll) < 1e-9) throw std::domain_error("ell_estimate: lambda too close to 1");
    return sym.psi_log_increment(std::log(x), ll) / ll;
}

// Weak-scaling index report: fitted lower/upper indices with the constants
// achieving the one-sided bounds on the sampled grid.
struct ScalingReport {
    double lower_index = 0.0;   // 5% quantile of pairwise log-log slopes
    double upper_index = 0.0;   // 95% quantile
    double raw_min = 0.0;
    double raw_max = 0.0;
    double threshold = 0.0;     // smallest sampled argument
    double c_lower = 1.0;       // f(lam x) >= c lam^lower f(x) on the grid
    double c_upper = 1.0;       // f(lam x) <= C lam^upper f(x) on the grid
    double fit_residual = 0.0;  // RMS residual of the single-slope LS fit
};

inline ScalingReport scaling_exponents(const RadialFunction& f, double x_lo, double x_hi,
                                       int n) {
    if (!(x_lo > 0.0 && x_hi > x_lo)) {
        throw std::domain_error("scaling_exponents: need 0 < x_lo < x_hi");
    }
    if (n < 3) throw std::domain_error("scaling_exponents: need n >= 3");
    std::vector<double> lx(n), lf(n);
    for (int i = 0; i < n; ++i) {
        const double x = x_lo * std::pow(x_hi / x_lo, double(i) / (n - 1));
        const double v = f(x);
        if (!(v > 0.0)) {
            throw std::domain_error("scaling_exponents: f must be positive on the grid");
        }
        lx[i] = std::log(x);
        lf[i] = std::log(v);
    }
    std::vector<double> slopes;
    slopes.reserve((size_t)n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            slopes.push_back((lf[j] - lf[i]) / (lx[j] - lx[i]));
        }
    }
    std::sort(slopes.begin(), slopes.end());
    auto quantile = [&](double q) {
        const double pos = q * (slopes.size() - 1);
        const size_t k = (size_t)pos;
        const double frac = pos - k;
        if (k + 1 >= slopes.size()) return slopes.back();
        return slopes[k] * (1.0 - frac) + slopes[k + 1] * frac;
    };
    ScalingReport rep;
    rep.lower_index = quantile(0.05);
    rep.upper_index = quantile(0.95);
    rep.raw_min = slopes.front();
    rep.raw_max = slopes.back();
    rep.threshold = x_lo;
    // constants achieving the bounds with the quantile indices
    double cmin = std::numeric_limits<double>::infinity();
    double cmax = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dl = lx[j] - lx[i];
            const double ratio = lf[j] - lf[i];
            cmin = std::min(cmin, std::exp(ratio - rep.lower_index * dl));
            cmax = std::max(cmax, std::exp(ratio - rep.upper_index * dl));
        }
    }
    rep.c_lower = std::min(1.0, cmin);
    rep.c_upper = std::max(1.0, cmax);
    // least squares single slope for the residual report
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += lf[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * lf[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = lf[i] - slope * lx[i] - icept;
        rss += r * r;
    }
    rep.fit_residual = std::sqrt(rss / n);
    return rep;
}

struct SymbolIneqReport {
    bool doubling_bound_ok = true;       // psi(ru) <= psi*(ru) <= 2(r^2+1) psi*(u)
    double doubling_worst_slack = 0.0;   // min of 2(r^2+1)psi*(u) - psi*(ru)
    bool unimodal_bound_ok = true;       // psi*(u) <= pi^2 psi(u)
    double unimodal_worst_ratio = 0.0;   // max psi*/psi
    bool unimodal_checked = false;
    bool potter_ok = true;               // ell(x) <= C ell(y) max{x/y,y/x}^eps
    double potter_constant = 0.0;        // smallest C at eps = 0.25
    bool potter_checked = false;
};

inline SymbolIneqReport check_symbol_inequalities(const SymbolSpec& sym,
                                                  const std::vector<double>& grid) {
    if (grid.empty()) throw std::domain_error("check_symbol_inequalities: empty grid");
    SymbolIneqReport rep;
    rep.doubling_worst_slack = std::numeric_limits<double>::infinity();
    for (double u : grid) {
        const double star_u = psi_star(sym, u);
        for (double r : grid) {
            const double ru = r * u;
            const double p_ru = sym.psi(ru);
            const double star_ru = psi_star(sym, ru);
            if (p_ru > star_ru * (1.0 + 1e-12) + 1e-300) rep.doubling_bound_ok = false;
            const double rhs = 2.0 * (r * r + 1.0) * star_u;
            rep.doubling_worst_slack = std::min(rep.doubling_worst_slack, rhs - star_ru);
            if (star_ru > rhs * (1.0 + 1e-12)) rep.doubling_bound_ok = false;
        }
    }
    if (sym.unimodal()) {
        rep.unimodal_checked = true;
        const double pi2 = special::kPi * special::kPi;
        for (double u : grid) {
            const double p = sym.psi(u);
            if (p <= 0.0) continue;
            const double ratio = psi_star(sym, u) / p;
            rep.unimodal_worst_ratio = std::max(rep.unimodal_worst_ratio, ratio);
            if (ratio > pi2 * (1.0 + 1e-12)) rep.unimodal_bound_ok = false;
        }
    }
    if (sym.has_exact_ell()) {
        rep.potter_checked = true;
        const double eps = 0.25;
        double worst = 0.0;
        for (double x : grid) {
            for (double y : grid) {
                const double need =
                    sym.ell(x) / (sym.ell(y) * std::pow(std::max(x / y, y / x), eps));
                worst = std::max(worst, need);
            }
        }
        rep.potter_constant = worst;
        rep.potter_ok = std::isfinite(worst);
    }
    return rep;
}

struct BernsteinCheckReport {
    bool concavity_ok = true;        // u phi'(u) <= phi(u)
    double concavity_worst = 0.0;    // max of u phi' / phi
    bool u2phi_monotone_ok = true;   // u^2 phi'(u) nondecreasing
};

inline BernsteinCheckReport check_bernstein(const BernsteinSpec& b,
                                            const std::vector<double>& grid) {
    BernsteinCheckReport rep;
    for (double u : grid) {
        const double ratio = u * b.phi_prime(u) / b.phi(u);
        rep.concavity_worst = std::max(rep.concavity_worst, ratio);
        if (ratio > 1.0 + 1e-10) rep.concavity_ok = false;
    }
    auto m = [&](double u) { return u * u * b.phi_prime(u); };
    for (double u : grid) {
        for (double h : {0.01 * u, 0.005 * u}) {
            if (m(u + h) < m(u) * (1.0 - 1e-10)) rep.u2phi_monotone_ok = false;
        }
    }
    return rep;
}

// --- JSON (de)serialization --------------------------------------------------
//
// {"family": "...", "d": int, "params": {...}}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::GEOMETRIC_STABLE: return "geometric_stable";
        case Family::ITERATED_GEOMETRIC: return "iterated_geometric";
        case Family::TRUNCATED_LOG: return "truncated_log";
        case Family::STABLE: return "stable";
        case Family::GAUSSIAN: return "gaussian";
        case Family::SUBORDINATE_BM: return "subordinate_bm";
        case Family::CUSTOM: return "custom";
    }
    return "?";
}

inline nlohmann::json symbol_to_json(const SymbolSpec& sym) {
    if (sym.family == Family::CUSTOM) {
        throw std::invalid_argument("CUSTOM symbols are not serializable");
    }
    nlohmann::json j;
    j["family"] = family_name(sym.family);
    j["d"] = sym.d;
    nlohmann::json p = nlohmann::json::object();
    switch (sym.family) {
        case Family::GEOMETRIC_STABLE:
        case Family::STABLE:
            p["alpha"] = sym.alpha;
            break;
        case Family::ITERATED_GEOMETRIC:
            p["alpha"] = sym.alpha;
            p["beta"] = sym.beta;
            break;
        case Family::SUBORDINATE_BM:
            switch (sym.bernstein.family) {
                case BernsteinFamily::GAMMA:
                    p["bernstein"] = "gamma";
                    break;
                case BernsteinFamily::STABLE_SUB:
                    p["bernstein"] = "stable";
                    p["gamma"] = sym.bernstein.gamma_exp;
                    break;
                case BernsteinFamily::GEOM_SUB:
                    p["bernstein"] = "geometric";
                    p["alpha"] = sym.bernstein.alpha;
                    p["beta"] = sym.bernstein.beta;
                    break;
            }
            break;
        default:
            break;
    }
    j["params"] = p;
    return j;
}

inline SymbolSpec symbol_from_json(const nlohmann::json& j) {
    SymbolSpec sym;
    const std::string fam = j.at("family").get<std::string>();
    sym.d = j.at("d").get<int>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    if (fam == "geometric_stable") {
        sym.family = Family::GEOMETRIC_STABLE;
        sym.alpha = p.at("alpha").get<double>();
    } else if (fam == "iterated_geometric") {
        sym.family = Family::ITERATED_GEOMETRIC;
        sym.alpha = p.at("alpha").get<double>();
        sym.beta = p.at("beta").get<double>();
    } else if (fam == "truncated_log") {
        sym.family = Family::TRUNCATED_LOG;
    } else if (fam == "stable") {
        sym.family = Family::STABLE;
        sym.alpha = p.at("alpha").get<double>();
    } else if (fam == "gaussian") {
        sym.family = Family::GAUSSIAN;
    } else if (fam == "subordinate_bm") {
        sym.family = Family::SUBORDINATE_BM;
        const std::string b = p.value("bernstein", "gamma");
        if (b == "gamma") {
            sym.bernstein.family = BernsteinFamily::GAMMA;
        } else if (b == "stable") {
            sym.bernstein.family = BernsteinFamily::STABLE_SUB;
            sym.bernstein.gamma_exp = p.at("gamma").get<double>();
        } else if (b == "geometric") {
            sym.bernstein.family = BernsteinFamily::GEOM_SUB;
            sym.bernstein.alpha = p.at("alpha").get<double>();
            sym.bernstein.beta = p.at("beta").get<double>();
        } else {
            throw std::invalid_argument("unknown bernstein family: " + b);
        }
    } else {
        throw std::invalid_argument("unknown symbol family: " + fam);
    }
    sym.validate();
    return sym;
}

}  // namespace levyheat
