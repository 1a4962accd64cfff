// Kernel front-ends: stable reference densities, the gamma-time
// subordination route for geometric-stable processes, closed and
// semi-closed comparability envelopes, and dense kernel tables.
#pragma once

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "levyheat/transforms.hpp"

namespace levyheat {

// Density of the isotropic alpha-stable process.  Closed forms short-circuit
// alpha in {1, 2}; other orders go through the Fourier inversion of
// e^{-t s^alpha}.
inline QuadratureResult stable_density(double alpha, int d, double t, double x_norm,
                                       const InversionConfig& cfg = {}) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::domain_error("stable_density: alpha must be in (0, 2]");
    }
    if (!(t > 0.0)) throw std::domain_error("stable_density: t must be > 0");
    QuadratureResult out;
    if (alpha == 2.0 && !cfg.force_numeric) {
        out.value = std::pow(4.0 * special::kPi * t, -0.5 * d) *
                    std::exp(-x_norm * x_norm / (4.0 * t));
        out.abs_err = 4e-16 * out.value;
        out.converged = true;
        return out;
    }
    if (alpha == 1.0 && !cfg.force_numeric) {
        out.value = std::tgamma(0.5 * (d + 1)) * std::pow(special::kPi, -0.5 * (d + 1)) *
                    t * std::pow(t * t + x_norm * x_norm, -0.5 * (d + 1));
        out.abs_err = 4e-16 * out.value;
        out.converged = true;
        return out;
    }
    SymbolSpec sym{Family::STABLE, d, alpha};
    return density_from_symbol(sym, t, x_norm, cfg);
}

namespace detail {

// stable density at the origin, s_alpha(t, 0) = t^{-d/alpha} s_alpha(1, 0)
inline double stable_density_at_zero(double alpha, int d, double t) {
    const double s10 = std::pow(2.0 * special::kPi, -double(d)) *
                       special::surface_area(d) * std::tgamma(double(d) / alpha) / alpha;
    return std::pow(t, -double(d) / alpha) * s10;
}

}  // namespace detail

// Geometric alpha-stable density by gamma-time subordination,
// p(t, x) = 1/Gamma(t) int_0^inf e^{-u} u^{t-1} s_alpha(u, x) du.
// The (0,1] piece integrates in u = e^y to absorb the u^{t-1} endpoint
// singularity at small t.  At x = 0 the density is finite only for
// t > d/alpha, where it collapses to s_alpha(1,0) Gamma(t-d/alpha)/Gamma(t).
inline QuadratureResult geometric_stable_density(double alpha, int d, double t,
                                                 double x_norm,
                                                 const InversionConfig& cfg = {}) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::domain_error("geometric_stable_density: alpha must be in (0, 2)");
    }
    if (!(t > 0.0)) throw std::domain_error("geometric_stable_density: t must be > 0");
    QuadratureResult out;
    if (x_norm == 0.0) {
        if (t <= double(d) / alpha) {
            out.flag = EvalFlag::P0_INFINITE;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        out.value = detail::stable_density_at_zero(alpha, d, 1.0) *
                    std::tgamma(t - double(d) / alpha) / std::tgamma(t);
        out.converged = true;
        return out;
    }
    auto s = [&](double u) { return stable_density(alpha, d, u, x_norm, cfg).value; };
    const double tol = std::min(1e-10, 0.1 * cfg.rel_tol);
    // u in (0, 1]: substitute u = e^y, y in (-inf, 0]
    auto low = quad::integrate_to_inf(
        [&](double y) {
            const double u = std::exp(-y);  // y runs positive, u = e^{-y} in (0,1]
            return std::exp(-u) * std::pow(u, t) * s(u);
        },
        0.0, 3.0, {tol, 0.0, 2000});
    // u in [1, inf)
    auto high = quad::integrate_to_inf(
        [&](double u) { return std::exp(-u) * std::pow(u, t - 1.0) * s(u); }, 1.0, 2.0,
        {tol, 0.0, 2000});
    out.value = (low.value + high.value) / std::tgamma(t);
    out.abs_err = (low.abs_err + high.abs_err) / std::tgamma(t);
    out.rel_err = (out.value != 0.0) ? out.abs_err / std::abs(out.value) : out.abs_err;
    out.nodes = low.nodes + high.nodes;
    out.converged = low.converged && high.converged;
    if (!out.converged) out.flag = EvalFlag::NON_CONVERGED;
    return out;
}

// --- printed comparability envelopes ----------------------------------------

enum class ExampleId { EX1, EX2, EX3, EX4 };

struct ExampleEstimate {
    double value = 0.0;
    std::string regime;
    bool in_regime = false;
};

struct ExampleParams {
    int d = 1;
    double alpha = 1.0;
    double beta = 0.5;
    double t0 = 1.0;  // validity ceiling in t where one applies
};

// The piecewise envelope of the worked kernel families:
//   EX1 unit-ball |x|^{-d} measure:      t |x|^{2 omega_d t - d}
//   EX2 iterated geometric (alpha,beta): t|x|^{-d} log-power * exp factor
//   EX3 geometric alpha-stable:          case split in t vs d/alpha
//   EX4 half-iterated geometric:         case split with log-scale exponent
inline ExampleEstimate example_estimate(ExampleId id, const ExampleParams& p, double t,
                                        double x_norm) {
    ExampleEstimate est;
    const double x = x_norm;
    const int d = p.d;
    switch (id) {
        case ExampleId::EX1: {
            if (!(t > 0.0 && t < p.t0) || !(x > 0.0 && x <= 1.0)) return est;
            const double w = special::surface_area(d);
            est.value = t * std::pow(x, 2.0 * w * t - d);
            est.regime = "bulk";
            est.in_regime = true;
            return est;
        }
        case ExampleId::EX2: {
            if (!(t > 0.0 && t < p.t0) || !(x > 0.0 && x <= 1.0)) return est;
            const double a = p.alpha, b = p.beta;
            est.value = t * std::pow(x, -double(d)) *
                        std::pow(std::log1p(1.0 / x), b - 1.0) *
                        std::exp(-t * std::pow(std::log1p(std::pow(x, -a)), b));
            est.regime = "bulk";
            est.in_regime = true;
            return est;
        }
        case ExampleId::EX3: {
            const double a = p.alpha;
            const double t1 = 3.0 * d / a;
            if (!(t > 0.0 && x >= 0.0)) return est;
            if (t >= t1) {
                est.value = std::min(std::pow(t, -double(d) / a),
                                     t * std::pow(x, -double(d) - a));
                est.regime = "stable-like";
                est.in_regime = true;
                return est;
            }
            if (x >= 1.0) {
                est.value = t * std::pow(x, -double(d) - a);
                est.regime = "tail";
                est.in_regime = true;
                return est;
            }
            if (x <= 0.0) return est;
            const double lg = std::log(2.0 * std::pow(x, -a));
            if (t > double(d) / a) {
                est.value = t * std::min(lg, 1.0 / (t - double(d) / a));
                est.regime = "interior-finite";
            } else {
                est.value = t * (lg + std::pow(x, a * t - d));
                est.regime = "interior-singular";
            }
            est.in_regime = true;
            return est;
        }
        case ExampleId::EX4: {
            const double a = p.alpha;
            if (!(t > 0.0 && x > 0.0)) return est;
            if (x >= 0.5) {
                est.value = std::min(t * std::pow(x, -double(d) - 0.5 * a),
                                     std::pow(t, -2.0 * d / a));
                est.regime = "tail";
                est.in_regime = true;
                return est;
            }
            const double root = std::sqrt(-double(d) * std::log(x));
            if (t * std::sqrt(a / d) <= 1.0 + 2.0 * root) {
                const double la = -a * std::log(x);
                est.value = t * std::pow(x, -double(d)) / std::sqrt(la) *
                                std::exp(-t * std::sqrt(la)) -
                            t * a * std::log(x);
                est.regime = "interior";
            } else {
                est.value = std::pow(t, -2.0 * d / a);
                est.regime = "flat";
            }
            est.in_regime = true;
            return est;
        }
    }
    return est;
}

// --- dense kernel tables -----------------------------------------------------

struct KernelTable {
    SymbolSpec sym;
    std::vector<double> t_values;
    std::vector<double> x_values;            // strictly positive, sorted
    std::vector<double> values;              // row-major [t][x]
    std::vector<double> abs_err;
    std::vector<EvalFlag> flags;
    std::vector<double> p0_row;              // +inf where infinite
    std::vector<EvalFlag> p0_flags;

    double at(size_t it, size_t ix) const { return values[it * x_values.size() + ix]; }
    EvalFlag flag_at(size_t it, size_t ix) const {
        return flags[it * x_values.size() + ix];
    }
};

// Dense p(t, x) table with per-entry error estimates.  Entry failures are
// recorded in the flag matrix without aborting the table.  `jobs` threads
// split the entries; results land by index so the table is independent of
// the schedule.
inline KernelTable build_kernel_table(const SymbolSpec& sym,
                                      std::vector<double> t_values,
                                      std::vector<double> x_values,
                                      const InversionConfig& cfg = {}, int jobs = 1) {
    for (size_t i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] > 0.0) || (i && t_values[i] <= t_values[i - 1])) {
            throw std::invalid_argument("build_kernel_table: t grid must be positive, sorted");
        }
    }
    for (size_t i = 0; i < x_values.size(); ++i) {
        if (!(x_values[i] > 0.0) || (i && x_values[i] <= x_values[i - 1])) {
            throw std::invalid_argument("build_kernel_table: x grid must be positive, sorted");
        }
    }
    KernelTable table;
    table.sym = sym;
    table.t_values = std::move(t_values);
    table.x_values = std::move(x_values);
    const size_t nt = table.t_values.size(), nx = table.x_values.size();
    table.values.assign(nt * nx, 0.0);
    table.abs_err.assign(nt * nx, 0.0);
    table.flags.assign(nt * nx, EvalFlag::OK);
    table.p0_row.assign(nt, 0.0);
    table.p0_flags.assign(nt, EvalFlag::OK);

    auto entry = [&](size_t idx) {
        const size_t it = idx / nx, ix = idx % nx;
        try {
            auto r = density_from_symbol(sym, table.t_values[it], table.x_values[ix], cfg);
            table.values[idx] = r.value;
            table.abs_err[idx] = r.abs_err;
            table.flags[idx] = r.flag;
        } catch (const std::exception&) {
            table.flags[idx] = EvalFlag::NON_CONVERGED;
            table.values[idx] = std::numeric_limits<double>::quiet_NaN();
        }
    };
    const size_t total = nt * nx;
    if (jobs <= 1) {
        for (size_t i = 0; i < total; ++i) entry(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
                    entry(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (size_t it = 0; it < nt; ++it) {
        auto r = density_from_symbol(sym, table.t_values[it], 0.0, cfg);
        table.p0_row[it] = r.value;
        table.p0_flags[it] = r.flag;
    }
    return table;
}

}  // namespace levyheat
