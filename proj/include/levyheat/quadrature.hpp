// Adaptive Gauss-Kronrod quadrature and sequence acceleration.
//
// Everything here is deterministic: for a fixed integrand, interval and
// tolerance the node set (and hence the result, bit for bit) does not depend
// on the caller's thread count.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace levyheat {

enum class EvalFlag {
    OK,
    NON_CONVERGED,
    DIVERGENT_HEAD,
    P0_INFINITE,
    NOT_TRANSIENT,
};

inline const char* to_string(EvalFlag f) {
    switch (f) {
        case EvalFlag::OK: return "OK";
        case EvalFlag::NON_CONVERGED: return "NON_CONVERGED";
        case EvalFlag::DIVERGENT_HEAD: return "DIVERGENT_HEAD";
        case EvalFlag::P0_INFINITE: return "P0_INFINITE";
        case EvalFlag::NOT_TRANSIENT: return "NOT_TRANSIENT";
    }
    return "?";
}

// Value plus error accounting for any transform evaluation.  `tail_terms`
// counts the oscillatory cells (Bessel-zero partitions) consumed.
struct QuadratureResult {
    double value = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    long nodes = 0;
    bool converged = false;
    long tail_terms = 0;
    EvalFlag flag = EvalFlag::OK;
};

namespace quad {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double err;
};

// One 15-point Kronrod panel on [a, b] with embedded 7-point Gauss error.
template <typename F>
PanelResult gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fv = f(c - dx) + f(c + dx);
        resk += kWgk[i] * fv;
        if (i % 2 == 1) resg += kWg[i / 2] * fv;
    }
    const double value = resk * h;
    double err = std::abs((resk - resg) * h);
    // QUADPACK-style error sharpening
    const double scale = std::abs(value) + err;
    if (scale > 0.0 && err > 0.0) {
        const double r = err / scale;
        err = scale * std::min(1.0, 200.0 * r * std::sqrt(r));
    }
    return {value, err};
}

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 2000;
};

// Globally adaptive bisection.  The panel with the largest error estimate is
// split first; ties resolve to the leftmost panel so the node set is a pure
// function of (f, a, b, opt).
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, Options opt = {}) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    struct Panel {
        double a, b, value, err;
    };
    std::vector<Panel> panels;
    PanelResult first = gk15(f, a, b);
    panels.push_back({a, b, first.value, first.err});
    out.nodes = 15;
    double total = first.value, toterr = first.err;
    while ((int)panels.size() < opt.max_panels) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= tol) break;
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].err > panels[worst].err) worst = i;
        }
        Panel p = panels[worst];
        if (p.b - p.a <= std::abs(p.a) * 1e-15 + 1e-300) break;  // cannot refine further
        const double m = 0.5 * (p.a + p.b);
        PanelResult l = gk15(f, p.a, m);
        PanelResult r = gk15(f, m, p.b);
        out.nodes += 30;
        total += l.value + r.value - p.value;
        toterr += l.err + r.err - p.err;
        panels[worst] = {p.a, m, l.value, l.err};
        panels.push_back({m, p.b, r.value, r.err});
    }
    // tidy re-sum in interval order for reproducible rounding
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    total = 0.0;
    toterr = 0.0;
    for (const Panel& p : panels) {
        total += p.value;
        toterr += p.err;
    }
    out.value = total;
    out.abs_err = toterr;
    out.rel_err = (total != 0.0) ? toterr / std::abs(total) : toterr;
    out.converged = toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return out;
}

// Semi-infinite integral with a caller-supplied decay scale: integrates
// [a, a+L], [a+L, a+2L], [a+2L, a+4L], ... doubling the span until the
// remaining tail is negligible.  Under span doubling a power-law tail gives
// exactly geometric blocks, so a geometric closure term finishes off
// polynomially decaying integrands that would otherwise need hundreds of
// octaves.  Intended for smooth single-signed integrands.
template <typename F>
QuadratureResult integrate_to_inf(F&& f, double a, double scale, Options opt = {}) {
    QuadratureResult out;
    double left = a;
    double span = scale;
    double total = 0.0, toterr = 0.0;
    long nodes = 0;
    bool converged = false;
    double prev_block = 0.0, prev_ratio = -1.0, closure = 0.0;
    for (int block = 0; block < 200; ++block) {
        Options sub = opt;
        sub.abs_tol = std::max(opt.abs_tol, 0.25 * opt.rel_tol * std::abs(total));
        QuadratureResult r = integrate(f, left, left + span, sub);
        total += r.value;
        toterr += r.abs_err;
        nodes += r.nodes;
        left += span;
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (block > 0 && std::abs(r.value) <= tol) {
            converged = true;
            break;
        }
        if (block >= 3 && prev_block != 0.0 && r.value * prev_block > 0.0) {
            const double q = r.value / prev_block;
            if (q > 0.0 && q < 0.97 && prev_ratio > 0.0 &&
                std::abs(q - prev_ratio) < 0.02) {
                closure = r.value * q / (1.0 - q);
                if (std::abs(closure) * 0.05 <= tol) {
                    total += closure;
                    toterr += 0.05 * std::abs(closure);
                    converged = true;
                    break;
                }
            }
            prev_ratio = q;
        } else if (prev_block != 0.0) {
            prev_ratio = r.value / prev_block;
        }
        prev_block = r.value;
        if (block >= 2) span *= 2.0;
    }
    out.value = total;
    out.abs_err = toterr;
    out.rel_err = (total != 0.0) ? toterr / std::abs(total) : toterr;
    out.nodes = nodes;
    out.converged =
        converged && out.rel_err <= std::max({opt.rel_tol, 1e-15,
                                              (total != 0.0) ? opt.abs_tol / std::abs(total)
                                                             : 0.0});
    if (!out.converged) out.flag = EvalFlag::NON_CONVERGED;
    return out;
}

}  // namespace quad

// Wynn's epsilon algorithm applied to a sequence of partial sums.  Keeps the
// last antidiagonal of the epsilon table, so each push costs O(n).  Works as
// an antilimit extractor for alternating series whose terms decay slowly or
// even grow with a smooth envelope, which is exactly what the oscillatory
// Fourier-Bessel cell sums produce.
class WynnEpsilon {
  public:
    explicit WynnEpsilon(size_t max_columns = 60) : max_cols_(max_columns) {}

    double push(double s) {
        const size_t n = std::min(prev_.size() + 1, max_cols_ + 1);
        cur_.assign(n, 0.0);
        cur_[0] = s;
        const double huge = std::numeric_limits<double>::max();
        for (size_t j = 1; j < n; ++j) {
            const double denom = cur_[j - 1] - prev_[j - 1];
            double inv;
            if (std::abs(denom) < 1e-300 || !std::isfinite(denom)) {
                inv = huge;
            } else {
                inv = 1.0 / denom;
            }
            const double lower = (j >= 2) ? prev_[j - 2] : 0.0;
            cur_[j] = lower + inv;
            if (!std::isfinite(cur_[j])) cur_[j] = huge;
        }
        prev_.swap(cur_);
        // best estimate: highest even column of the antidiagonal that was not
        // poisoned by a degenerate denominator
        best_ = prev_[0];
        const double poisoned = 0.5 * huge;
        size_t k = prev_.size() - 1;
        if (k % 2 == 1) k -= 1;
        for (;; k -= 2) {
            if (std::abs(prev_[k]) < poisoned) {
                best_ = prev_[k];
                break;
            }
            if (k < 2) break;
        }
        return best_;
    }
    double best() const { return best_; }
    size_t count() const { return prev_.size(); }

  private:
    size_t max_cols_;
    std::vector<double> prev_, cur_;
    double best_ = 0.0;
};

// Euler transform of an alternating-ish sequence of partial sums (van
// Wijngaarden averaging).  Offered as a cheaper alternative to Wynn's
// epsilon; does not handle growing envelopes.
class EulerAccel {
  public:
    double push(double s) {
        row_.push_back(s);
        for (size_t j = row_.size() - 1; j >= 1; --j) {
            row_[j - 1] = 0.5 * (row_[j - 1] + row_[j]);
        }
        return row_.front();
    }
    double best() const { return row_.empty() ? 0.0 : row_.front(); }

  private:
    std::vector<double> row_;
};

}  // namespace levyheat
