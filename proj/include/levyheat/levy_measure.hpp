// Levy densities nu and their lower-dimensional marginals nu_j, the
// concentration functions h_j and truncated second moments K_j, and the
// structural relations tying them to the symbol.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "levyheat/quadrature.hpp"
#include "levyheat/special.hpp"
#include "levyheat/symbols.hpp"

namespace levyheat {

struct MissingNuError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class NuSource { CLOSED_FORM, SUBORDINATION };

// Radial Levy density with its provenance.  `eval` must be nonincreasing
// (unimodality); construction from a built-in family guarantees that.
struct LevyDensity {
    NuSource source = NuSource::CLOSED_FORM;
    int d = 1;
    std::function<double(double)> eval;
    bool singular_at_origin = true;
    bool compact_support = false;  // true when nu vanishes beyond radius 1

    double operator()(double r) const { return eval(r); }
};

namespace detail {

// integral of f over the whole line, centered where the integrand lives
template <typename F>
double integrate_real_line(F&& f, double center, double scale, double rel_tol) {
    auto right = quad::integrate_to_inf([&](double y) { return f(center + y); }, 0.0,
                                        scale, {rel_tol, 0.0, 2000});
    auto left = quad::integrate_to_inf([&](double y) { return f(center - y); }, 0.0,
                                       scale, {rel_tol, 0.0, 2000});
    return right.value + left.value;
}

// nu(r) = int_0^inf (4 pi s)^{-d/2} e^{-r^2/(4s)} mu(s) ds in log-substituted
// form (the integrand peaks near s = r/2 for the gamma subordinator and has
// superexponential flanks after the substitution)
inline double subordination_nu(const BernsteinSpec& bern, int d, double r,
                               double rel_tol = 1e-10) {
    auto f = [&](double y) {
        const double s = std::exp(y);
        const double e = -r * r / (4.0 * s);
        if (e < -700.0) return 0.0;
        const double v = std::pow(4.0 * special::kPi * s, -0.5 * d) * std::exp(e) *
                         bern.mu_density(s) * s;
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate_real_line(f, std::log(0.5 * r + 1e-300), 2.0, rel_tol);
}

}  // namespace detail

// The Levy density of a built-in symbol family, where one is available:
// closed forms for the unit-ball |x|^{-d} measure and the stable family, a
// gamma-mixture of Cauchy kernels for the geometric 1-stable family, and the
// subordination quadrature for subordinate Brownian motions whose
// subordinator has a known Levy density.  Throws MissingNuError otherwise.
inline LevyDensity levy_density_for(const SymbolSpec& sym) {
    LevyDensity ld;
    ld.d = sym.d;
    const int d = sym.d;
    switch (sym.family) {
        case Family::TRUNCATED_LOG:
            ld.source = NuSource::CLOSED_FORM;
            ld.compact_support = true;
            ld.eval = [d](double r) {
                return (r <= 1.0) ? std::pow(r, -double(d)) : 0.0;
            };
            return ld;
        case Family::STABLE: {
            if (sym.alpha >= 2.0) {
                throw MissingNuError("stable alpha = 2 has no jump part");
            }
            const double c = special::stable_asym_constant(d, sym.alpha);
            const double a = sym.alpha;
            ld.source = NuSource::CLOSED_FORM;
            ld.eval = [c, a, d](double r) { return c * std::pow(r, -double(d) - a); };
            return ld;
        }
        case Family::GEOMETRIC_STABLE: {
            if (sym.alpha == 2.0) {
                BernsteinSpec gamma;  // psi = log(1+u^2) is the gamma-subordinate BM
                ld.source = NuSource::SUBORDINATION;
                ld.eval = [gamma, d](double r) {
                    return detail::subordination_nu(gamma, d, r);
                };
                return ld;
            }
            if (sym.alpha == 1.0) {
                // gamma mixture of Cauchy kernels: single smooth quadrature
                const double c =
                    std::tgamma(0.5 * (d + 1)) * std::pow(special::kPi, -0.5 * (d + 1));
                ld.source = NuSource::SUBORDINATION;
                ld.eval = [c, d](double r) {
                    auto q = quad::integrate_to_inf(
                        [&](double u) {
                            return std::exp(-u) * std::pow(u * u + r * r, -0.5 * (d + 1));
                        },
                        0.0, std::max(r, 1.0), {1e-10, 0.0, 2000});
                    return c * q.value;
                };
                return ld;
            }
            throw MissingNuError(
                "geometric stable Levy density implemented for alpha in {1, 2} only");
        }
        case Family::SUBORDINATE_BM: {
            if (!sym.bernstein.has_mu_density()) {
                throw MissingNuError("subordinator has no Levy density in closed form");
            }
            const BernsteinSpec bern = sym.bernstein;
            ld.source = NuSource::SUBORDINATION;
            ld.eval = [bern, d](double r) { return detail::subordination_nu(bern, d, r); };
            return ld;
        }
        default:
            throw MissingNuError("no Levy density available for family " +
                                 family_name(sym.family));
    }
}

inline double nu_eval(const LevyDensity& ld, double r) {
    if (!(r > 0.0)) throw std::domain_error("nu_eval: r must be > 0");
    return ld.eval(r);
}

// j-dimensional marginal density at radius r: integrates out d - j
// coordinates through the one-dimensional spherical reduction
// nu_j(r) = sigma_{d-j} int_0^inf nu(sqrt(s^2 + r^2)) s^{d-j-1} ds.
inline double nu_marginal(const LevyDensity& ld, int j, double r) {
    if (j < 1 || j > ld.d) throw std::domain_error("nu_marginal: need 1 <= j <= d");
    if (!(r > 0.0)) throw std::domain_error("nu_marginal: r must be > 0");
    if (j == ld.d) return ld.eval(r);
    const int m = ld.d - j;
    const double sigma = special::surface_area(m);
    auto f = [&](double s) {
        return ld.eval(std::hypot(s, r)) * std::pow(s, m - 1.0);
    };
    if (ld.compact_support) {
        if (r >= 1.0) return 0.0;
        const double top = std::sqrt(1.0 - r * r);
        auto q = quad::integrate(f, 0.0, top, {1e-10, 0.0, 2000});
        return sigma * q.value;
    }
    auto q = quad::integrate_to_inf(f, 0.0, std::max(r, 0.5), {1e-10, 0.0, 2000});
    if (q.flag != EvalFlag::OK) {
        throw std::runtime_error("nu_marginal: quadrature failed to converge");
    }
    return sigma * q.value;
}

namespace detail {

// int_0^r u^{p} g(u) du on a dyadically graded mesh (g may blow up like
// u^{-j} ell(1/u) at the origin; the weight keeps every panel finite for a
// genuine Levy density).  Panels that keep growing toward the origin signal
// a non-integrable moment and raise an error.
template <typename G>
double graded_moment_integral(G&& g, double r, double p, double rel_tol) {
    double total = 0.0, peak = 0.0;
    int small = 0, growing = 0;
    double prev = 0.0;
    double hi = r;
    for (int k = 0; k < 60; ++k) {
        const double lo = r * std::pow(0.5, k + 1);
        auto q = quad::integrate([&](double u) { return std::pow(u, p) * g(u); }, lo, hi,
                                 {rel_tol, 0.0, 200});
        total += q.value;
        peak = std::max(peak, std::abs(q.value));
        if (k > 0 && std::abs(q.value) > std::abs(prev) * 1.02 && std::abs(q.value) > 0.0) {
            if (++growing >= 10) {
                throw std::runtime_error(
                    "moment integral diverges toward the origin (panels keep growing)");
            }
        } else {
            growing = 0;
        }
        prev = q.value;
        // only once a nonzero panel has set the scale may trailing panels be
        // declared negligible (the support may start well below r)
        if (peak > 0.0 && std::abs(q.value) <= 1e-3 * rel_tol * peak) {
            if (++small >= 2) break;
        } else {
            small = 0;
        }
        hi = lo;
    }
    if (small < 2 && std::abs(prev) > 1e-3 * peak) {
        throw std::runtime_error("moment integral did not settle within the graded mesh");
    }
    return total;
}

}  // namespace detail

// K_j(r) = r^{-2} int_{|y| <= r, y in R^j} |y|^2 nu_j(y) dy.  (The membrane
// is |y| <= r; the occasionally-seen r^2 cutoff is inconsistent with the
// derivative identity h' = -2K/r and is not used.)
inline double k_fn(const LevyDensity& ld, int j, double r, double rel_tol = 1e-9) {
    if (!(r > 0.0)) throw std::domain_error("k_fn: r must be > 0");
    if (j < 1 || j > ld.d) throw std::domain_error("k_fn: need 1 <= j <= d");
    if (ld.compact_support && j == ld.d) {
        // closed form for the unit-ball |x|^{-d} density
        const double w = special::surface_area(ld.d);
        const double m = std::min(r, 1.0);
        return 0.5 * w * m * m / (r * r);
    }
    auto nu_j = [&](double u) { return nu_marginal(ld, j, u); };
    const double sigma = special::surface_area(j);
    return sigma * detail::graded_moment_integral(nu_j, r, j + 1.0, rel_tol) / (r * r);
}

// h_j(r) = int min{1, |y|^2/r^2} nu_j(y) dy = K_j(r) + sigma_j
// int_r^inf u^{j-1} nu_j(u) du.
inline double h_fn(const LevyDensity& ld, int j, double r, double rel_tol = 1e-9) {
    if (!(r > 0.0)) throw std::domain_error("h_fn: r must be > 0");
    if (j < 1 || j > ld.d) throw std::domain_error("h_fn: need 1 <= j <= d");
    if (ld.compact_support && j == ld.d) {
        const double w = special::surface_area(ld.d);
        if (r >= 1.0) return 0.5 * w / (r * r);
        return w * (0.5 + std::log(1.0 / r));
    }
    auto nu_j = [&](double u) { return nu_marginal(ld, j, u); };
    const double sigma = special::surface_area(j);
    double tail;
    if (ld.compact_support) {
        tail = (r >= 1.0) ? 0.0
                          : quad::integrate([&](double u) { return std::pow(u, j - 1.0) * nu_j(u); },
                                            r, 1.0, {rel_tol, 0.0, 400})
                                .value;
    } else {
        tail = quad::integrate_to_inf(
                   [&](double u) { return std::pow(u, j - 1.0) * nu_j(u); }, r,
                   std::max(r, 1.0), {rel_tol, 0.0, 2000})
                   .value;
    }
    return k_fn(ld, j, r, rel_tol) + sigma * tail;
}

enum class ConcRelation {
    EQ46,          // h_j' = -2 K_j / r (central differences)
    HCOMP,         // h(r) comparable to psi(1/r); reports the empirical interval
    EQ55,          // lam^2 h_j(lam r) >= h_j(r)
    KSC1,          // lam^2 K_j(lam r) >= K_j(r)
    KSC2,          // lam^{-j} K_j(lam r) <= K_j(r)
    KSC3,          // nu(r) <= C r^{-d} K_d(r), proven C from monotonicity
    K1_INCREMENT,  // |psi(lam x) - psi(x)| <= 3 K_1(1/|x|), lam in [1,2]
    KD_LE_K1,      // K_d(r) <= d K_1(r)
    LEM3,          // C K_1(r) <= K_d(r) + r int_r^inf s^{d-2} nu(s) ds
};

struct ConcReport {
    ConcRelation relation;
    bool pass = true;
    int points = 0;
    int violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();  // min slack
    double worst_residual = 0.0;  // EQ46: max relative residual
    double c_min = std::numeric_limits<double>::infinity();  // HCOMP / LEM3
    double c_max = 0.0;
};

inline ConcReport check_concentration_relations(const LevyDensity& ld,
                                                const SymbolSpec& sym, ConcRelation rel,
                                                const std::vector<double>& grid,
                                                unsigned seed = 12345) {
    if (grid.empty()) throw std::domain_error("check_concentration_relations: empty grid");
    ConcReport rep;
    rep.relation = rel;
    const int d = ld.d;
    const double quad_tol = 1e-9;
    const std::vector<double> lambdas = {1.0, 1.5, 2.0, 4.0, 10.0};

    auto note = [&](double slack, double err_scale) {
        rep.points += 1;
        rep.worst_margin = std::min(rep.worst_margin, slack);
        if (slack < -10.0 * err_scale) {
            rep.violations += 1;
            rep.pass = false;
        }
    };

    switch (rel) {
        case ConcRelation::EQ46: {
            for (double r : grid) {
                const double k = k_fn(ld, d, r, quad_tol);
                const double want = -2.0 * k / r;
                double resid = 0.0;
                for (double frac : {1e-3, 5e-4}) {  // step-halving confirmation
                    const double dr = frac * r;
                    const double hd =
                        (h_fn(ld, d, r + dr, quad_tol) - h_fn(ld, d, r - dr, quad_tol)) /
                        (2.0 * dr);
                    resid = std::max(resid, std::abs(hd - want) / std::abs(want));
                }
                rep.points += 1;
                rep.worst_residual = std::max(rep.worst_residual, resid);
            }
            rep.pass = true;  // caller judges the residual against its tolerance
            break;
        }
        case ConcRelation::HCOMP: {
            for (double r : grid) {
                const double ratio = h_fn(ld, d, r, quad_tol) / sym.psi(1.0 / r);
                rep.points += 1;
                rep.c_min = std::min(rep.c_min, ratio);
                rep.c_max = std::max(rep.c_max, ratio);
            }
            rep.pass = rep.c_min > 0.0 && std::isfinite(rep.c_max);
            break;
        }
        case ConcRelation::EQ55: {
            for (double r : grid) {
                const double base = h_fn(ld, d, r, quad_tol);
                for (double lam : lambdas) {
                    note(lam * lam * h_fn(ld, d, lam * r, quad_tol) - base,
                         quad_tol * base + 1e-14 * base);
                }
            }
            break;
        }
        case ConcRelation::KSC1: {
            for (double r : grid) {
                const double base = k_fn(ld, d, r, quad_tol);
                for (double lam : lambdas) {
                    note(lam * lam * k_fn(ld, d, lam * r, quad_tol) - base,
                         quad_tol * base);
                }
            }
            break;
        }
        case ConcRelation::KSC2: {
            for (double r : grid) {
                const double base = k_fn(ld, d, r, quad_tol);
                for (double lam : lambdas) {
                    note(base - std::pow(lam, -double(d)) * k_fn(ld, d, lam * r, quad_tol),
                         quad_tol * base);
                }
            }
            break;
        }
        case ConcRelation::KSC3: {
            // monotonicity gives nu(r) r^d omega_d (1 - 2^{-d-2})/(d+2) <= K_d(r)
            const double C = (d + 2.0) /
                             (special::surface_area(d) * (1.0 - std::pow(2.0, -d - 2.0)));
            for (double r : grid) {
                const double lhs = nu_eval(ld, r);
                const double rhs = C * std::pow(r, -double(d)) * k_fn(ld, d, r, quad_tol);
                note(rhs - lhs, quad_tol * rhs);
                rep.c_max = std::max(rep.c_max, lhs * std::pow(r, double(d)) /
                                                    k_fn(ld, d, r, quad_tol));
            }
            break;
        }
        case ConcRelation::K1_INCREMENT: {
            std::mt19937 rng(seed);
            std::uniform_real_distribution<double> unif(1.0, 2.0);
            for (double x : grid) {
                const double lam = unif(rng);
                const double lhs = std::abs(sym.psi(lam * x) - sym.psi(x));
                const double rhs = 3.0 * k_fn(ld, 1, 1.0 / x, quad_tol);
                note(rhs - lhs, quad_tol * rhs);
            }
            break;
        }
        case ConcRelation::KD_LE_K1: {
            for (double r : grid) {
                const double rhs = d * k_fn(ld, 1, r, quad_tol);
                note(rhs - k_fn(ld, d, r, quad_tol), quad_tol * rhs);
            }
            break;
        }
        case ConcRelation::LEM3: {
            for (double r : grid) {
                const double k1 = k_fn(ld, 1, r, quad_tol);
                double tail;
                if (ld.compact_support) {
                    tail = (r >= 1.0)
                               ? 0.0
                               : quad::integrate(
                                     [&](double s) {
                                         return std::pow(s, d - 2.0) * nu_eval(ld, s);
                                     },
                                     r, 1.0, {quad_tol, 0.0, 400})
                                     .value;
                } else {
                    tail = quad::integrate_to_inf(
                               [&](double s) {
                                   return std::pow(s, d - 2.0) * nu_eval(ld, s);
                               },
                               r, std::max(r, 1.0), {quad_tol, 0.0, 2000})
                               .value;
                }
                const double rhs = k_fn(ld, d, r, quad_tol) + r * tail;
                rep.points += 1;
                rep.c_min = std::min(rep.c_min, rhs / k1);
                rep.c_max = std::max(rep.c_max, rhs / k1);
            }
            rep.pass = rep.c_min > 0.0;
            break;
        }
    }
    return rep;
}

enum class ProfileVerdict { SLOW, SCALING, INCONCLUSIVE };

struct KdOverHProfile {
    std::vector<std::pair<double, double>> points;  // (r, K_d(r)/h(r)), ascending r
    ProfileVerdict verdict = ProfileVerdict::INCONCLUSIVE;
};

// Diagnostic ratio K_d(r)/h(r) over a log grid.  A vanishing trend toward
// small r indicates a slowly varying symbol; a ratio bounded away from zero
// indicates genuine lower scaling.
inline KdOverHProfile kd_over_h_profile(const LevyDensity& ld, double r_lo, double r_hi,
                                        int n) {
    if (!(r_lo > 0.0 && r_hi > r_lo)) {
        throw std::domain_error("kd_over_h_profile: need 0 < r_lo < r_hi");
    }
    if (n < 4) throw std::domain_error("kd_over_h_profile: need n >= 4");
    KdOverHProfile prof;
    for (int i = 0; i < n; ++i) {
        const double r = r_lo * std::pow(r_hi / r_lo, double(i) / (n - 1));
        prof.points.emplace_back(r, k_fn(ld, ld.d, r) / h_fn(ld, ld.d, r));
    }
    const double first = prof.points.front().second;  // smallest r
    const double last = prof.points.back().second;
    double lo = first, hi = first;
    for (auto& [r, v] : prof.points) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (first < 0.15 && first <= 0.5 * last) {
        prof.verdict = ProfileVerdict::SLOW;
    } else if (lo >= 0.1 && first >= 0.5 * last) {
        prof.verdict = ProfileVerdict::SCALING;
    }
    return prof;
}

}  // namespace levyheat
