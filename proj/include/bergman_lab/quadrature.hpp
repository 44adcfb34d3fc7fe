#pragma once
//
// Quadrature primitives: Gauss-Legendre rules, a globally adaptive
// Gauss-Kronrod integrator, and the radial rule with dyadic boundary layers
// that every derived quantity of a radial weight is integrated with.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <queue>
#include <vector>

#include "core.hpp"

namespace bergman_lab::quad {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussLegendreRule make_gauss_legendre(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
        }
        dp = n * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Cached rules for the orders used throughout the lab.
inline const GaussLegendreRule& gauss_legendre(int n)
{
    static std::mutex mutex;
    static std::array<GaussLegendreRule, 129> cache;
    if (n < 1 || n > 128)
        fail(ErrorKind::parameter, "gauss_legendre: order must be in [1,128]");
    std::lock_guard lock(mutex);
    if (cache[n].nodes.empty())
        cache[n] = make_gauss_legendre(n);
    return cache[n];
}

template <class F>
double gl_integrate(F&& f, double a, double b, int order = 20)
{
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < order; ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod (7/15)

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = true;
};

namespace detail {

template <class F>
double gk15(F& f, double a, double b, double& err)
{
    static constexpr double xk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * wk[7];
    double g = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double x = h * xk[j];
        const double s = f(c - x) + f(c + x);
        k += wk[j] * s;
        if (j % 2 == 1)
            g += wg[j / 2] * s;
    }
    k *= h;
    g *= h;
    err = std::abs(k - g);
    return k;
}

} // namespace detail

/// Globally adaptive GK15 on [a, b]: bisects the interval with the largest
/// error estimate until the total error is below max(atol, rtol*|value|).
template <class F>
AdaptiveResult adaptive_integrate(F&& f, double a, double b, double rtol = 1e-10,
                                  double atol = 1e-300, int max_intervals = 4000)
{
    struct Piece {
        double a, b, value, err;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    AdaptiveResult out;
    if (a == b)
        return out;
    std::priority_queue<Piece> heap;
    double e0;
    const double v0 = detail::gk15(f, a, b, e0);
    heap.push({a, b, v0, e0});
    double total = v0, total_err = e0;
    while (total_err > std::max(atol, rtol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= max_intervals) {
            out.converged = false;
            break;
        }
        const Piece top = heap.top();
        heap.pop();
        const double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) {
            out.converged = false;
            heap.push(top);
            break;
        }
        double el, er;
        const double vl = detail::gk15(f, top.a, mid, el);
        const double vr = detail::gk15(f, mid, top.b, er);
        heap.push({top.a, mid, vl, el});
        heap.push({mid, top.b, vr, er});
        total += vl + vr - top.value;
        total_err += el + er - top.err;
    }
    // re-sum from the pieces to avoid drift in the running totals
    out.intervals = static_cast<int>(heap.size());
    out.value = 0.0;
    out.error = 0.0;
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.error += heap.top().err;
        heap.pop();
    }
    return out;
}

// ---------------------------------------------------------------------------
// radial rule with dyadic boundary layers

/// Options for integrals of the form  int_{r0}^1 h(t) dt  whose integrand
/// concentrates at t -> 1 (and, optionally, near t = r0).
struct RadialOptions {
    int depth = 40;          ///< dyadic layers [1 - g 2^-m, 1 - g 2^-(m+1)]
    int order = 20;          ///< Gauss-Legendre points per panel
    bool grade_low = false;  ///< geometric grading toward t = r0
    int low_depth = 40;
};

/// Nodes of the composite rule. The gap u = 1 - t is stored separately so
/// that integrands written in terms of the distance to the circle keep full
/// relative precision near t = 1.
struct RadialRule {
    std::vector<double> t, u, w;
    std::vector<int> layer;  ///< boundary layer index, -1 for interior panels
    int layers = 0;          ///< number of boundary layers
    double tail_gap = 0.0;   ///< [1 - tail_gap, 1) is not covered by nodes
};

inline RadialRule make_radial_rule(double r0, const RadialOptions& opt = {})
{
    RadialRule rule;
    const auto& gl = gauss_legendre(opt.order);
    auto add_panel_t = [&](double a, double b, int layer) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < opt.order; ++i) {
            const double t = mid + half * gl.nodes[i];
            rule.t.push_back(t);
            rule.u.push_back(1.0 - t);
            rule.w.push_back(half * gl.weights[i]);
            rule.layer.push_back(layer);
        }
    };
    auto add_panel_u = [&](double ulo, double uhi, int layer) {
        const double mid = 0.5 * (ulo + uhi), half = 0.5 * (uhi - ulo);
        for (int i = 0; i < opt.order; ++i) {
            const double u = mid + half * gl.nodes[i];
            rule.t.push_back(1.0 - u);
            rule.u.push_back(u);
            rule.w.push_back(half * gl.weights[i]);
            rule.layer.push_back(layer);
        }
    };

    double gap_top = 1.0 - r0;
    if (r0 < 0.5) {
        gap_top = 0.5;
        const double span = 0.5 - r0;
        if (opt.grade_low) {
            double d = span;
            for (int i = 0; i < opt.low_depth; ++i) {
                add_panel_t(r0 + 0.5 * d, r0 + d, -1);
                d *= 0.5;
            }
            add_panel_t(r0, r0 + d, -1);
        } else {
            add_panel_t(r0, r0 + 0.5 * span, -1);
            add_panel_t(r0 + 0.5 * span, 0.5, -1);
        }
    }
    double g = gap_top;
    for (int m = 0; m < opt.depth; ++m) {
        add_panel_u(0.5 * g, g, m);
        g *= 0.5;
    }
    rule.layers = opt.depth;
    rule.tail_gap = g;
    return rule;
}

/// Splits [lo, hi] into panels graded geometrically away from `focus`
/// (smallest panel ~ h) with every panel no longer than `max_len`.
inline std::vector<std::pair<double, double>> graded_panels(double lo, double hi, double focus,
                                                            double h, double max_len)
{
    std::vector<std::pair<double, double>> out;
    h = std::max(h, 1e-15);
    auto walk = [&](double from, double to) {
        // from is the end nearest to the focus
        const double dir = to > from ? 1.0 : -1.0;
        const double total = std::abs(to - from);
        double pos = 0.0;
        double dist0 = std::abs(from - focus);
        while (pos < total) {
            double len = std::max(h, 0.5 * (dist0 + pos));
            len = std::min({len, max_len, total - pos});
            if (total - pos - len < 1e-3 * len)
                len = total - pos;
            const double a = from + dir * pos, b = from + dir * (pos + len);
            out.emplace_back(std::min(a, b), std::max(a, b));
            pos += len;
        }
    };
    if (focus > lo && focus < hi) {
        walk(focus, hi);
        walk(focus, lo);
    } else if (focus <= lo) {
        walk(lo, hi);
    } else {
        walk(hi, lo);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Composite Gauss-Legendre over graded panels.
template <class F>
double graded_integrate(F&& f, double lo, double hi, double focus, double h, double max_len,
                        int order = 16)
{
    double sum = 0.0;
    for (const auto& [a, b] : graded_panels(lo, hi, focus, h, max_len))
        sum += gl_integrate(f, a, b, order);
    return sum;
}

/// Neumaier-compensated accumulator; keeps reductions deterministic and
/// accurate regardless of magnitude ordering.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0, c_ = 0.0;
};

} // namespace bergman_lab::quad
