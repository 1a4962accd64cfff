// Radial Fourier (Hankel) inversion of e^{-t psi} and (lambda+psi)^{-1}, the
// Gaussian-weighted Laplace functionals, and the Tauberian diagnostic ratios.
//
// The oscillatory half-line integrals are computed Longman-style: partition
// at the scaled Bessel zeros, integrate each cell with adaptive
// Gauss-Kronrod, and accelerate the alternating cell-sum sequence with
// Wynn's epsilon algorithm.  For slowly varying symbols the integrand's
// envelope decays only logarithmically (or even grows), so the accelerated
// antilimit is the whole point: it reproduces the Gauss-regularized Fourier
// inversion that defines the density off the origin.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "levyheat/quadrature.hpp"
#include "levyheat/special.hpp"
#include "levyheat/symbols.hpp"

namespace levyheat {

struct InversionConfig {
    double rel_tol = 1e-9;
    long max_zeros = 10000;
    enum class Accel { NONE, EULER, WYNN_EPS } acceleration = Accel::WYNN_EPS;
    double split_radius = 0.0;  // 0 = first Bessel zero / |x|
    bool force_numeric = false; // bypass closed-form density fast paths

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
            throw std::invalid_argument("InversionConfig: rel_tol must be in (0, 1e-2]");
        }
        if (max_zeros < 8) {
            throw std::invalid_argument("InversionConfig: max_zeros must be >= 8");
        }
    }
};

namespace detail {

// Positive zeros of J_nu on demand: Newton-polished for the first batch,
// McMahon beyond (boundary placement only needs a few digits there).
class BesselZeroSeq {
  public:
    explicit BesselZeroSeq(double nu) : nu_(nu) {}

    double operator()(size_t k) {  // k >= 1
        if (nu_ == -0.5) return (k - 0.5) * special::kPi;
        if (nu_ == 0.5) return k * special::kPi;
        if (k <= kExact) {
            if (cache_.empty()) cache_ = special::bessel_j_zeros(nu_, kExact);
            return cache_[k - 1];
        }
        const double mu = 4.0 * nu_ * nu_;
        const double beta = (k + 0.5 * nu_ - 0.25) * special::kPi;
        const double e = 8.0 * beta;
        return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
    }

  private:
    static constexpr size_t kExact = 64;
    double nu_;
    std::vector<double> cache_;
};

// int_0^infinity v^{d/2} G(v) J_{d/2-1}(v) dv.
//
// `head_end` overrides the end of the non-oscillatory head region (defaults
// to the first Bessel zero).  The head is integrated on a dyadically graded
// mesh so sharply localized G (an inversion evaluated far into a kernel's
// analytic regime) cannot slip between quadrature nodes.
template <typename G>
QuadratureResult fourier_bessel_core(G&& g, int d, const InversionConfig& cfg,
                                     double head_end = 0.0) {
    cfg.validate();
    const double nu = 0.5 * d - 1.0;
    QuadratureResult out;
    BesselZeroSeq zero(nu);

    auto f = [&](double v) { return std::pow(v, 0.5 * d) * g(v) * special::bessel_j(nu, v); };

    // divergence probe: v^{d-1} G(v) must not grow as v -> 0
    {
        double prev = std::abs(std::pow(1e-2, d) * g(1e-2));
        int growing = 0;
        for (double v : {1e-4, 1e-6, 1e-8}) {
            const double q = std::abs(std::pow(v, d) * g(v));
            if (q > prev * 1.2 && q > 1e-280) ++growing;
            prev = q;
        }
        if (growing >= 3) {
            out.flag = EvalFlag::DIVERGENT_HEAD;
            return out;
        }
    }

    const double z1 = zero(1);
    if (head_end <= 0.0) head_end = z1;

    // head on a graded mesh
    double head = 0.0, head_err = 0.0;
    {
        double peak = 0.0;
        int small_count = 0;
        double hi = head_end;
        for (int k = 0; k < 52; ++k) {
            const double lo = (k == 51) ? 0.0 : head_end * std::pow(0.5, k + 1);
            auto r = quad::integrate(f, lo, hi, {1e-13, 0.0, 64});
            out.nodes += r.nodes;
            head += r.value;
            head_err += r.abs_err;
            peak = std::max(peak, std::abs(r.value));
            // the integrand may live far below head_end; panels only count as
            // negligible once a nonzero one has set the scale
            if (peak > 0.0 && std::abs(r.value) <= 0.125 * cfg.rel_tol * peak) {
                if (++small_count >= 2 && k >= 6) break;
            } else {
                small_count = 0;
            }
            hi = lo;
        }
    }

    // oscillatory cells between consecutive zeros
    WynnEpsilon eps;
    EulerAccel euler;
    double raw = head;
    double raw_peak = std::abs(head);
    double best = head, best_prev = head;
    double cell_prev = std::numeric_limits<double>::max();
    double cell_err_sum = 0.0;
    int accel_stable = 0, decay_stable = 0;
    long k = 1;
    // first boundary where cells start: the first zero >= head_end
    double a = head_end;
    while (zero(k) < head_end * (1.0 + 1e-12) && k < cfg.max_zeros) ++k;
    bool converged = false;
    bool use_raw = false;
    for (; k <= cfg.max_zeros; ++k) {
        const double b = zero(k);
        if (b <= a) continue;
        auto r = quad::integrate(f, a, b, {1e-13, 0.0, 40});
        out.nodes += r.nodes;
        cell_err_sum += r.abs_err;
        raw += r.value;
        raw_peak = std::max(raw_peak, std::abs(raw));
        a = b;
        out.tail_terms += 1;

        // raw-decay exit: tail already negligible
        if (std::abs(r.value) <= 0.5 * cfg.rel_tol * std::abs(raw) + 1e-300 &&
            std::abs(cell_prev) <= 0.5 * cfg.rel_tol * std::abs(raw) + 1e-300) {
            if (++decay_stable >= 2) {
                best = raw;
                converged = true;
                use_raw = true;
                break;
            }
        } else {
            decay_stable = 0;
        }
        cell_prev = r.value;

        switch (cfg.acceleration) {
            case InversionConfig::Accel::NONE:
                best = raw;
                break;
            case InversionConfig::Accel::EULER:
                best = euler.push(raw);
                break;
            case InversionConfig::Accel::WYNN_EPS:
                best = eps.push(raw);
                break;
        }
        if (cfg.acceleration != InversionConfig::Accel::NONE && out.tail_terms >= 8) {
            if (std::abs(best - best_prev) <= cfg.rel_tol * std::abs(best) + 1e-300) {
                if (++accel_stable >= 2) {
                    converged = true;
                    break;
                }
            } else {
                accel_stable = 0;
            }
        }
        best_prev = best;
    }

    out.value = best;
    if (use_raw) {
        out.abs_err = head_err + cell_err_sum;
    } else {
        // antilimit path: quadrature noise on the (possibly large, cancelling)
        // partial sums plus the last acceleration increment
        const double cancel_noise =
            2.3e-16 * raw_peak * std::sqrt(double(std::max<long>(out.tail_terms, 1)));
        out.abs_err = head_err + cancel_noise + std::abs(best - best_prev);
    }
    out.rel_err = (best != 0.0) ? out.abs_err / std::abs(best) : out.abs_err;
    out.converged = converged && out.rel_err <= std::max(cfg.rel_tol, 1e-15);
    if (!out.converged) out.flag = EvalFlag::NON_CONVERGED;
    return out;
}

// increment-ratio divergence rule shared by the p(t,0) and transience checks:
// the integral sum_k Delta_k is declared divergent when five consecutive
// dyadic increments fail to contract by at least 1e-3
template <typename F>
bool dyadic_increments_diverge(F&& block, int max_levels) {
    double prev = block(0);
    int streak = 0;
    for (int k = 1; k < max_levels; ++k) {
        const double cur = block(k);
        if (!(prev > 1e-300)) return false;  // increments died out: convergent
        const double ratio = cur / prev;
        if (ratio > 1.0 - 1e-3) {
            if (++streak >= 5) return true;
        } else {
            streak = 0;
        }
        prev = cur;
    }
    return false;
}

}  // namespace detail

// Whether int_1^inf s^{d-1} e^{-t psi(s)} ds converges, i.e. whether the
// density is finite at the origin.
inline bool density_finite_at_origin(const SymbolSpec& sym, double t) {
    auto block = [&](int k) {
        const double lo = std::pow(2.0, k), hi = std::pow(2.0, k + 1);
        auto r = quad::integrate(
            [&](double s) { return std::pow(s, sym.d - 1.0) * std::exp(-t * sym.psi(s)); },
            lo, hi, {1e-10, 0.0, 24});
        return std::abs(r.value);
    };
    return !detail::dyadic_increments_diverge(block, 60);
}

// Whether int_0^1 s^{d-1} / psi(s) ds converges (transience precheck for the
// lambda = 0 resolvent).
inline bool symbol_transient(const SymbolSpec& sym) {
    auto block = [&](int k) {
        const double hi = std::pow(2.0, -k), lo = std::pow(2.0, -k - 1);
        auto r = quad::integrate(
            [&](double s) {
                const double p = sym.psi(s);
                return (p > 0.0) ? std::pow(s, sym.d - 1.0) / p : 0.0;
            },
            lo, hi, {1e-10, 0.0, 24});
        return std::abs(r.value);
    };
    return !detail::dyadic_increments_diverge(block, 60);
}

// Radial inverse Fourier transform of F at radius x_norm in dimension d:
// (2 pi)^{-d/2} x^{1-d/2} int_0^inf s^{d/2} F(s) J_{d/2-1}(x s) ds.
inline QuadratureResult hankel_inverse(const RadialFunction& F, int d, double x_norm,
                                       const InversionConfig& cfg = {}) {
    if (!(x_norm > 0.0)) throw std::domain_error("hankel_inverse: x_norm must be > 0");
    const double head_end = cfg.split_radius > 0.0 ? cfg.split_radius * x_norm : 0.0;
    auto res = detail::fourier_bessel_core([&](double v) { return F(v / x_norm); }, d, cfg,
                                           head_end);
    const double scale = std::pow(2.0 * special::kPi, -0.5 * d) * std::pow(x_norm, -d);
    res.value *= scale;
    res.abs_err *= scale;
    return res;
}

// Transition density p(t, x); x_norm = 0 is served by the direct radial
// integral after the finiteness check (flag P0_INFINITE when divergent).
//
// The Gaussian symbol (psi = u^2, including STABLE with alpha = 2) evaluates
// through its heat kernel: deep in the Gaussian tail the density is
// exponentially smaller than the Fourier integrand, so no real-axis
// quadrature can reach it in doubles.  All other families go through the
// oscillatory pipeline.
inline QuadratureResult density_from_symbol(const SymbolSpec& sym, double t, double x_norm,
                                            const InversionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("density_from_symbol: t must be > 0");
    if (x_norm < 0.0) throw std::domain_error("density_from_symbol: x_norm must be >= 0");
    const bool gaussian =
        sym.family == Family::GAUSSIAN || (sym.family == Family::STABLE && sym.alpha == 2.0);
    if (gaussian && !cfg.force_numeric) {
        QuadratureResult out;
        out.value = std::pow(4.0 * special::kPi * t, -0.5 * sym.d) *
                    std::exp(-x_norm * x_norm / (4.0 * t));
        out.abs_err = 4e-16 * out.value;
        out.rel_err = 4e-16;
        out.converged = true;
        return out;
    }
    if (x_norm == 0.0) {
        QuadratureResult out;
        if (!density_finite_at_origin(sym, t)) {
            out.flag = EvalFlag::P0_INFINITE;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        auto r = quad::integrate_to_inf(
            [&](double s) { return std::pow(s, sym.d - 1.0) * std::exp(-t * sym.psi(s)); },
            0.0, 1.0, {0.1 * cfg.rel_tol, 0.0, 2000});
        const double scale =
            std::pow(2.0 * special::kPi, -sym.d) * special::surface_area(sym.d);
        r.value *= scale;
        r.abs_err *= scale;
        return r;
    }
    RadialFunction F{[&](double s) { return std::exp(-t * sym.psi(s)); }};
    return hankel_inverse(F, sym.d, x_norm, cfg);
}

// e^{t psi(1/x)} |x|^d p(t, x) evaluated at log(1/x) = L, entirely in
// log-argument form.  This keeps the deep large-t-psi regime reachable when
// 1/x overflows a double (slowly varying symbols need astronomically small x
// to make t psi large while t stays small).
inline QuadratureResult density_scaled_deep(const SymbolSpec& sym, double t, double L,
                                            const InversionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("density_scaled_deep: t must be > 0");
    auto g = [&](double v) {
        return std::exp(-t * sym.psi_log_increment(L, std::log(v)));
    };
    auto res = detail::fourier_bessel_core(g, sym.d, cfg);
    const double scale = std::pow(2.0 * special::kPi, -0.5 * sym.d);
    res.value *= scale;
    res.abs_err *= scale;
    return res;
}

// lambda-resolvent G^lambda(x), the Hankel inverse of (lambda + psi)^{-1}.
// lambda = 0 (the Green function) requires the transience precheck.
inline QuadratureResult resolvent_from_symbol(const SymbolSpec& sym, double lam,
                                              double x_norm,
                                              const InversionConfig& cfg = {}) {
    if (lam < 0.0) throw std::domain_error("resolvent_from_symbol: lambda must be >= 0");
    if (!(x_norm > 0.0)) throw std::domain_error("resolvent_from_symbol: x_norm must be > 0");
    if (lam == 0.0 && !symbol_transient(sym)) {
        QuadratureResult out;
        out.flag = EvalFlag::NOT_TRANSIENT;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    RadialFunction F{[&](double s) {
        const double p = lam + sym.psi(s);
        return (p > 0.0) ? 1.0 / p : 0.0;
    }};
    return hankel_inverse(F, sym.d, x_norm, cfg);
}

// Gaussian-weighted Laplace functional
// 2^{1-d}/Gamma(d/2) int_0^inf e^{-t psi(r sqrt(lam))} e^{-r^2/4} r^{d-1} dr.
// The atom term is zero for every built-in family (non-atomic laws at t > 0).
inline double laplace_U(const SymbolSpec& sym, double t, double lam) {
    if (t < 0.0) throw std::domain_error("laplace_U: t must be >= 0");
    if (!(lam > 0.0)) throw std::domain_error("laplace_U: lam must be > 0");
    const double sq = std::sqrt(lam);
    auto r = quad::integrate(
        [&](double u) {
            return std::exp(-t * sym.psi(u * sq)) * std::exp(-0.25 * u * u) *
                   std::pow(u, sym.d - 1.0);
        },
        0.0, 42.0, {1e-13, 0.0, 2000});
    return r.value * std::pow(2.0, 1.0 - sym.d) / std::tgamma(0.5 * sym.d);
}

// Laplace functional of the Green measure of balls,
// 2^{1-d}/Gamma(d/2) int_0^inf e^{-r^2/4} r^{d-1} / psi(r sqrt(lam)) dr,
// i.e. lambda L f(lambda) for f(r) = G(B_{sqrt r}).  Transient symbols only.
inline double laplace_green_mass(const SymbolSpec& sym, double lam) {
    if (!(lam > 0.0)) throw std::domain_error("laplace_green_mass: lam must be > 0");
    if (!symbol_transient(sym)) {
        throw std::domain_error("laplace_green_mass: symbol is not transient");
    }
    const double sq = std::sqrt(lam);
    auto r = quad::integrate(
        [&](double u) {
            if (u <= 0.0) return 0.0;
            const double p = sym.psi(u * sq);
            return (p > 0.0)
                       ? std::exp(-0.25 * u * u) * std::pow(u, sym.d - 1.0) / p
                       : 0.0;
        },
        0.0, 42.0, {1e-12, 0.0, 2000});
    return r.value * std::pow(2.0, 1.0 - sym.d) / std::tgamma(0.5 * sym.d);
}

// The same functional scaled by e^{t psi(e^w)} and parameterized by
// w = log(sqrt(lambda)) plus a multiplicative shift of lambda:
// e^{t psi(e^w)} L{dU_t}(e^{2w} * e^{2 shift}).
inline double laplace_U_scaled(const SymbolSpec& sym, double t, double w, double shift) {
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double inc = sym.psi_log_increment(w, std::log(u) + shift);
        const double e = -t * inc - 0.25 * u * u;
        return (e < -700.0) ? 0.0 : std::exp(e) * std::pow(u, sym.d - 1.0);
    };
    auto r = quad::integrate(f, 0.0, 42.0, {1e-13, 0.0, 2000});
    return r.value * std::pow(2.0, 1.0 - sym.d) / std::tgamma(0.5 * sym.d);
}

// Q_t(r) = omega_d int_0^{sqrt r} u^{d+1} p(t,u) du and the distribution
// function U_t(r) = omega_d int_0^{sqrt r} u^{d-1} p(t,u) du.  The sphere
// factor keeps the Laplace identities dQ = -(dU)' exact, which is what the
// Tauberian ratios are normalized against.
namespace detail {
template <typename W>
QuadratureResult radial_density_integral(const SymbolSpec& sym, double t, double r,
                                         W&& weight, const InversionConfig& cfg) {
    QuadratureResult out;
    const double top = std::sqrt(r);
    double total = 0.0, err = 0.0;
    double peak = 0.0;
    int small = 0;
    bool entry_failed = false;  // propagate density-evaluation failures
    double hi = top;
    for (int k = 0; k < 40; ++k) {
        const double lo = top * std::pow(0.5, k + 1);
        auto f = [&](double u) {
            auto p = density_from_symbol(sym, t, u, cfg);
            if (p.flag != EvalFlag::OK) entry_failed = true;
            return weight(u) * p.value;
        };
        auto q = quad::gk15(f, lo, hi);
        total += q.value;
        err += q.err;
        out.nodes += 15;
        peak = std::max(peak, std::abs(q.value));
        if (peak > 0.0 && std::abs(q.value) <= 1e-6 * peak) {
            if (++small >= 2) break;
        } else {
            small = 0;
        }
        hi = lo;
    }
    out.value = total * special::surface_area(sym.d);
    out.abs_err = err * special::surface_area(sym.d);
    out.rel_err = (total != 0.0) ? err / std::abs(total) : err;
    out.converged = !entry_failed;
    if (entry_failed) out.flag = EvalFlag::NON_CONVERGED;
    return out;
}
}  // namespace detail

inline QuadratureResult Q_t(const SymbolSpec& sym, double t, double r,
                            const InversionConfig& cfg = {}) {
    if (!(t > 0.0 && r > 0.0)) throw std::domain_error("Q_t: t and r must be > 0");
    const double p = sym.d + 1.0;
    return detail::radial_density_integral(
        sym, t, r, [p](double u) { return std::pow(u, p); }, cfg);
}

inline QuadratureResult U_t(const SymbolSpec& sym, double t, double r,
                            const InversionConfig& cfg = {}) {
    if (!(t > 0.0 && r > 0.0)) throw std::domain_error("U_t: t and r must be > 0");
    const double p = sym.d - 1.0;
    return detail::radial_density_integral(
        sym, t, r, [p](double u) { return std::pow(u, p); }, cfg);
}

enum class TauberianRegime { SMALL, LARGE };

struct TauberianResult {
    double ratio = 0.0;    // midpoint of the bracket, normalized
    double lower = 0.0;    // bracket from the difference quotients
    double upper = 0.0;
    double t_psi = 0.0;    // t psi(sqrt(lambda)), the regime variable
    bool regime_mismatch = false;
};

// The ratio lambda L{dQ_t}(lambda) / (t ell(sqrt(lambda))), additionally
// divided by e^{-t psi(sqrt(lambda))} in the LARGE regime; its limit is 1/2.
// lambda L{dQ_t}(lambda) is bracketed by difference quotients of L{dU_t} at
// multiplicative steps a.
//
// The LARGE variant takes w = log(sqrt(lambda)) so the regime stays
// reachable when lambda overflows; the common factor e^{t psi} is pulled
// through the integrals analytically.
inline TauberianResult tauberian_ratio(const SymbolSpec& sym, double t, double lam_or_w,
                                       TauberianRegime regime, double a = 1.05) {
    if (!(a > 1.0)) throw std::domain_error("tauberian_ratio: a must be > 1");
    TauberianResult res;
    double w, ell;
    if (regime == TauberianRegime::SMALL) {
        const double lam = lam_or_w;
        if (!(lam > 0.0)) throw std::domain_error("tauberian_ratio: lambda must be > 0");
        w = 0.5 * std::log(lam);
        const double u0 = laplace_U(sym, t, lam);
        const double up = laplace_U(sym, t, lam * a);
        const double dn = laplace_U(sym, t, lam / a);
        res.lower = (u0 - up) / (a - 1.0);
        res.upper = a * (dn - u0) / (a - 1.0);
    } else {
        w = lam_or_w;
        const double sh = 0.5 * std::log(a);
        const double u0 = laplace_U_scaled(sym, t, w, 0.0);
        const double up = laplace_U_scaled(sym, t, w, sh);
        const double dn = laplace_U_scaled(sym, t, w, -sh);
        res.lower = (u0 - up) / (a - 1.0);
        res.upper = a * (dn - u0) / (a - 1.0);
    }
    ell = sym.has_exact_ell() ? sym.ell_log(w) : ell_estimate(sym, std::exp(w));
    res.t_psi = t * sym.psi_log(w);
    res.regime_mismatch = (res.t_psi > 0.1 && res.t_psi < 10.0);
    const double denom = t * ell;  // LARGE: the e^{-t psi} factor is already pulled out
    res.lower /= denom;
    res.upper /= denom;
    res.ratio = 0.5 * (res.lower + res.upper);
    return res;
}

}  // namespace levyheat
