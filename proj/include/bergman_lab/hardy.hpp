#pragma once
//
// Hardy space H^2: norms, the G_k function, operator matrices in the basis
// z^j, and the Toeplitz and Schatten criteria with w^ replaced by 1.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "criteria.hpp"
#include "growth.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "series.hpp"

namespace bergman_lab {

struct HardyNormResult {
    double value = 0.0;
    bool divergent = false;
    std::string route;
    std::vector<double> gaps, means;   ///< M_p(1 - gap)^p along the boundary approach
    double tail_estimate = 0.0;        ///< p = 2: coefficient tail beyond the truncation
};

namespace detail {

/// Tail of sum |c_j|^2 beyond the truncation from a power fit of the
/// nonzero coefficients over the upper half; infinite when |c_j|^2 does not
/// decay faster than j^{-1.05}.
inline double coefficient_tail2(const AnalyticFn& f)
{
    if (f.is_polynomial())
        return 0.0;
    const int N = f.truncation();
    if (f.tail().kind == TailKind::geometric) {
        const double q = f.tail().ratio, M = f.tail().bound;
        return M * M * std::pow(q, 2.0 * (N + 1)) / (1.0 - q * q);
    }
    std::vector<double> x, y;
    for (int j = N / 2; j <= N; ++j) {
        const double c2 = std::norm(f.coeff(j));
        if (c2 > 0.0) {
            x.push_back(j);
            y.push_back(c2);
        }
    }
    if (x.size() < 4)
        return std::numeric_limits<double>::infinity();
    const PowerFit fit = fit_power(x, y);
    const double a = -fit.exponent;
    if (a < 1.05)
        return std::numeric_limits<double>::infinity();
    return std::exp(fit.log_constant) * std::pow(N + 0.5, 1.0 - a) / (a - 1.0);
}

} // namespace detail

/// ||f||_{H^p}. p = 2 sums |f_j|^2 (with a tail estimate for series);
/// otherwise the integral means M_p(r)^p at r = 1 - 2^-m are followed until
/// they stabilize or their increments stop decaying.
inline HardyNormResult hardy_norm(const AnalyticFn& f, double p, int max_depth = 40)
{
    if (!(p > 0.0))
        fail(ErrorKind::parameter, "hardy_norm requires p > 0");
    HardyNormResult out;
    if (p == 2.0) {
        out.route = "coefficients";
        quad::CompensatedSum s;
        for (int j = 0; j <= f.truncation(); ++j)
            s.add(std::norm(f.coeff(j)));
        out.tail_estimate = detail::coefficient_tail2(f);
        out.divergent = !std::isfinite(out.tail_estimate);
        out.value = out.divergent ? std::numeric_limits<double>::infinity()
                                  : std::sqrt(s.value() + out.tail_estimate);
        return out;
    }
    if (f.is_polynomial() && !f.closed_form()) {
        out.route = "boundary trapezoid";
        const int m = std::max(4096, detail::trapezoid_nodes(std::max(0, f.degree()), p));
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            s += std::pow(std::abs(f.evaluate_series(std::polar(1.0, 2.0 * pi * i / m))), p);
        out.value = std::pow(s / m, 1.0 / p);
        return out;
    }
    out.route = "integral means at 1 - 2^-m";
    std::vector<double> increments;
    double prev = angular_mean(f, 0.5, p, 0.5);
    const double first = prev;
    out.gaps.push_back(0.5);
    out.means.push_back(prev);
    for (int m = 2; m <= max_depth; ++m) {
        const double gap = std::ldexp(1.0, -m);
        if (!f.closed_form() && !f.reliable_at(1.0 - gap))
            break;
        const double v = angular_mean(f, 1.0 - gap, p, gap);
        out.gaps.push_back(gap);
        out.means.push_back(v);
        increments.push_back(std::max(v - prev, 0.0));
        prev = v;
        if (layers_diverge(increments, first)) {
            out.divergent = true;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        if (v - out.means[out.means.size() - 2] <= 1e-13 * v)
            break;
    }
    double tail = 0.0;
    if (increments.size() >= 2) {
        const double a = increments[increments.size() - 2], b = increments.back();
        if (a > 0.0 && b > 0.0 && b < a)
            tail = b * (b / a) / (1.0 - b / a);
    }
    out.value = std::pow(prev + tail, 1.0 / p);
    return out;
}

/// (int G_k(f)^p dsigma)^{1/p}, G_k(f)(e^{it})^2 = int_0^1 |f^(k)(r e^{it})|^2 (1-r)^{2k-1} dr.
inline double gk_norm(const AnalyticFn& f, double p, int k, int angular = 4096)
{
    if (k < 1)
        fail(ErrorKind::parameter, "gk_norm requires k >= 1");
    if (!(p > 0.0))
        fail(ErrorKind::parameter, "gk_norm requires p > 0");
    for (int j = 0; j < k && j <= f.truncation(); ++j)
        if (f.coeff(j) != Complex(0.0, 0.0))
            fail(ErrorKind::parameter, "gk_norm requires f^(i)(0) = 0 for i < k");
    const AnalyticFn d = derivative(f, k);
    const bool poly = f.is_polynomial() && !f.closed_form();
    const int deg = poly ? std::max(0, d.degree()) : 0;
    const int order = std::min(128, deg + k + 2);
    const int m = std::max(angular, 2 * deg + 2);
    const double e = 2.0 * k - 1.0;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double th = 2.0 * pi * i / m;
        auto radial = [&](double r) {
            const Complex v = poly ? d.evaluate_series(std::polar(r, th)) : d.at_gap(1.0 - r, th);
            return std::norm(v) * std::pow(1.0 - r, e);
        };
        const double g2 = poly ? quad::gl_integrate(radial, 0.0, 1.0, order)
                               : quad::graded_integrate(radial, 0.0, 1.0, 1.0, 1e-12, 0.25, 16);
        total += std::pow(g2, 0.5 * p);
    }
    return std::pow(total / m, 1.0 / p);
}

/// |f(0)|^2 + 2 int |f'|^2 log(1/|z|) dA, equal to ||f||^2_{H^2} (dA(D) = 1).
inline double hardy_littlewood_paley(const AnalyticFn& f)
{
    double value = std::norm(f.coeff(0));
    if (f.truncation() < 1 || (f.is_polynomial() && f.degree() < 1))
        return value;
    const AnalyticFn df = derivative(f, 1);
    LayerOptions lo;
    lo.grade_low = true;
    auto h = [&](double t, double u) {
        if (t <= 0.0)
            return 0.0;
        const double tau = t > 0.5 ? -std::log1p(-u) : -std::log(t);
        return 2.0 * t * tau * angular_mean(df, t, 2.0, u);
    };
    return value + 2.0 * layered_radial(h, lo).value();
}

// ---------------------------------------------------------------------------
// operators and criteria

inline OperatorMatrix assemble_hardy_volterra(const AnalyticFn& g, int n, int k, int N)
{
    return assemble_volterra(g, Space::hardy(), n, k, N);
}

inline OperatorMatrix assemble_hardy_toeplitz(const MeasureSpec& mu, int k, int N)
{
    return assemble_toeplitz(mu, Space::hardy(), k, N);
}

/// The Toeplitz lattice evaluator on H^2 (w^ replaced by 1).
inline CriterionReport thm54_hardy_toeplitz(const MeasureSpec& mu, int k, std::optional<double> p,
                                            const Lattice& lat, const ToeplitzOptions& opt = {})
{
    return toeplitz_lattice_criterion("thm54", mu, Space::hardy(), k, p, lat, opt);
}

/// T_g^{n,k} in S_p(H^2) iff g in B_{p,n-k}.
inline CriterionReport cor52_hardy_schatten(const AnalyticFn& g, double p, int n, int k,
                                            const SchattenOptions& opt = {})
{
    return schatten_volterra_criterion("cor52", g, Space::hardy(), p, n, k, opt);
}

} // namespace bergman_lab
