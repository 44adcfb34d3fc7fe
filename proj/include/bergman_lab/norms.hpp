#pragma once
//
// Norms, seminorms and boundary functionals on the disk.
//
// Area integrals are split into an angular mean (trapezoid for polynomials,
// graded Gauss-Legendre around the singular direction for closed forms)
// and a radial integral over dyadic boundary layers whose per-layer
// contributions feed the divergence detector.
//

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"
#include "growth.hpp"
#include "quadrature.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman_lab {

// ---------------------------------------------------------------------------
// angular means

namespace detail {

inline int trapezoid_nodes(int degree, double p)
{
    const int mult = std::max(1, static_cast<int>(std::ceil(p / 2.0)));
    int m = 64;
    while (m < 4 * (degree + 1) * mult)
        m *= 2;
    return m;
}

} // namespace detail

/// (1/2pi) int |F(theta)| d theta for an integrand concentrated around
/// theta0 at angular scale `scale`.
template <class F>
double graded_angular_mean(F&& f, double theta0, double scale)
{
    const double h = std::max(scale, 1e-15) / 4.0;
    return quad::graded_integrate(f, theta0 - pi, theta0 + pi, theta0, h, 0.2, 16) / (2.0 * pi);
}

/// Mean of |f(r e^{i theta})|^p over the circle of radius r = 1 - u.
inline double angular_mean(const AnalyticFn& f, double r, double p, double u = -1.0)
{
    if (u < 0.0)
        u = 1.0 - r;
    if (f.closed_form()) {
        const double theta0 = f.singular_direction();
        return graded_angular_mean(
            [&](double th) { return std::pow(std::abs(f.at_gap(u, th)), p); }, theta0, u);
    }
    const int deg = f.is_polynomial() ? std::max(0, f.degree()) : f.truncation();
    const int m = detail::trapezoid_nodes(deg, p);
    quad::CompensatedSum sum;
    for (int i = 0; i < m; ++i)
        sum.add(std::pow(std::abs(f.evaluate_series(std::polar(r, 2.0 * pi * i / m))), p));
    return sum.value() / m;
}

// ---------------------------------------------------------------------------
// radial layering

struct LayerOptions {
    double r0 = 0.0;        ///< lower radius
    int depth = 40;
    int order = 20;
    bool grade_low = false; ///< grade the interior toward r0 (log singularities)
};

/// int_{r0}^1 h(t, u) dt split into an interior part and dyadic layers.
/// `closure(g)`, when given, returns the remainder over [1 - g, 1).
template <class H, class C>
LayeredIntegral layered_radial(H&& h, const LayerOptions& opt, C&& closure)
{
    quad::RadialOptions ro;
    ro.depth = opt.depth;
    ro.order = opt.order;
    ro.grade_low = opt.grade_low;
    const auto rule = quad::make_radial_rule(opt.r0, ro);
    LayeredIntegral li;
    li.layers.assign(rule.layers, 0.0);
    quad::CompensatedSum interior;
    std::vector<quad::CompensatedSum> layer_sums(rule.layers);
    for (std::size_t i = 0; i < rule.t.size(); ++i) {
        const double v = rule.w[i] * h(rule.t[i], rule.u[i]);
        if (rule.layer[i] < 0)
            interior.add(v);
        else
            layer_sums[rule.layer[i]].add(v);
    }
    li.interior = interior.value();
    for (int m = 0; m < rule.layers; ++m)
        li.layers[m] = layer_sums[m].value();
    finalize_layers(li);
    if (!li.divergent) {
        const std::optional<double> closed = closure(rule.tail_gap);
        if (closed)
            li.tail = *closed;
    }
    return li;
}

template <class H>
LayeredIntegral layered_radial(H&& h, const LayerOptions& opt)
{
    return layered_radial(h, opt, [](double) { return std::optional<double>{}; });
}

// ---------------------------------------------------------------------------
// disk quadrature

/// Tensor rule on the disk: layered radial nodes times a uniform angular
/// grid; integrates f(z) w(|z|) dA.
struct DiskQuadrature {
    quad::RadialRule radial;
    int angular = 64;

    static DiskQuadrature make(int angular = 64, int depth = 40, int order = 20)
    {
        quad::RadialOptions ro;
        ro.depth = depth;
        ro.order = order;
        return {quad::make_radial_rule(0.0, ro), angular};
    }

    template <class F>
    double integrate(const Weight& w, F&& f) const
    {
        quad::CompensatedSum sum;
        for (std::size_t i = 0; i < radial.t.size(); ++i) {
            const double t = radial.t[i];
            double mean = 0.0;
            for (int k = 0; k < angular; ++k)
                mean += f(std::polar(t, 2.0 * pi * k / angular));
            mean /= angular;
            sum.add(2.0 * t * radial.w[i] * w.density_gap(radial.u[i]) * mean);
        }
        double mean = 0.0;
        for (int k = 0; k < angular; ++k)
            mean += f(std::polar(1.0, 2.0 * pi * k / angular));
        sum.add(2.0 * mean / angular * w.tail_mass(radial.tail_gap));
        return sum.value();
    }
};

// ---------------------------------------------------------------------------
// Bergman norms

struct NormResult {
    double value = 0.0;
    bool divergent = false;
    bool accuracy_warning = false;
    double coefficient_value = std::numeric_limits<double>::quiet_NaN();  ///< p = 2 cross-check
    LayeredIntegral integral;
    std::string note;
};

namespace detail {

inline LayeredIntegral bergman_power_integral(const AnalyticFn& f, const Weight& w, double p, int order)
{
    LayerOptions lo;
    lo.order = order;
    auto h = [&](double t, double u) { return 2.0 * t * w.density_gap(u) * angular_mean(f, t, p, u); };
    // f continuous on the closed disk: |f|^p is flat across the last gap
    auto closure = [&](double g) -> std::optional<double> {
        if (f.is_polynomial())
            return 2.0 * angular_mean(f, 1.0, p) * w.tail_mass(g);
        if (f.tail().kind == TailKind::geometric && f.tail().ratio < 1.0)
            return 2.0 * angular_mean(f, 1.0 - g, p, g) * w.tail_mass(g);
        return std::nullopt;
    };
    return layered_radial(h, lo, closure);
}

} // namespace detail

/// ||f||_{A^p_w} = (int |f|^p w dA)^{1/p}; two radial orders are compared and
/// a warning is attached when they disagree beyond 1e-8.
inline NormResult bergman_norm(const AnalyticFn& f, const Weight& w, double p)
{
    if (!(p > 0.0))
        fail(ErrorKind::parameter, "bergman_norm requires p > 0");
    NormResult out;
    out.integral = detail::bergman_power_integral(f, w, p, 20);
    if (out.integral.divergent) {
        out.divergent = true;
        out.value = std::numeric_limits<double>::infinity();
        out.note = "layer contributions non-decreasing";
        return out;
    }
    const double v20 = out.integral.value();
    const double v14 = detail::bergman_power_integral(f, w, p, 14).value();
    out.accuracy_warning = std::abs(v20 - v14) > 1e-8 * std::abs(v20);
    out.value = std::pow(v20, 1.0 / p);
    if (p == 2.0) {
        quad::CompensatedSum s;
        for (int j = 0; j <= f.truncation(); ++j)
            s.add(std::norm(f.coeff(j)) * w.monomial_norm2(j));
        out.coefficient_value = std::sqrt(s.value());
        if (!f.is_polynomial())
            out.note = "coefficient value covers the retained coefficients only";
    }
    return out;
}

/// Sum |f_j|^2 2w_{2j+1}.
inline double coefficient_norm2(const AnalyticFn& f, const Weight& w)
{
    quad::CompensatedSum s;
    for (int j = 0; j <= f.truncation(); ++j)
        if (f.coeff(j) != Complex(0.0, 0.0))
            s.add(std::norm(f.coeff(j)) * w.monomial_norm2(j));
    return s.value();
}

/// w(D)|f(0)|^2 + 4 int |f'|^2 w* dA.
inline double littlewood_paley_p2(const AnalyticFn& f, const Weight& w)
{
    const AnalyticFn df = derivative(f, f.truncation() >= 1 ? 1 : 0);
    const bool constant = f.truncation() < 1 || (f.is_polynomial() && f.degree() < 1);
    double value = w.mass() * std::norm(f.coeff(0));
    if (constant)
        return value;
    LayerOptions lo;
    lo.grade_low = true;
    auto h = [&](double t, double u) {
        if (t <= 0.0)
            return 0.0;
        return 2.0 * t * w.star(t) * angular_mean(df, t, 2.0, u);
    };
    const LayeredIntegral li = layered_radial(h, lo);
    return value + 4.0 * li.value();
}

/// int (Nf)^p w dA with Nf(z) = sup over the cone Gamma_z of |f|. By the
/// maximum principle the sup is taken on the two edges of the cone.
inline double nontangential_norm(const AnalyticFn& f, const Weight& w, double p, int angular = 64,
                                 int edge_samples = 48)
{
    if (!(p > 0.0))
        fail(ErrorKind::parameter, "nontangential_norm requires p > 0");
    auto nf = [&](Complex z) {
        const double rz = std::abs(z);
        double best = std::abs(f(z));
        if (rz == 0.0)
            return best;
        const double az = std::arg(z);
        for (int i = 0; i <= edge_samples; ++i) {
            const double rho = rz * i / edge_samples;
            const double half = 0.5 * (1.0 - rho / rz);
            best = std::max(best, std::abs(f(std::polar(rho, az + half))));
            best = std::max(best, std::abs(f(std::polar(rho, az - half))));
        }
        return best;
    };
    const auto dq = DiskQuadrature::make(angular, 30, 12);
    const double integral = dq.integrate(w, [&](Complex z) { return std::pow(nf(z), p); });
    return std::pow(integral, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Bloch-type seminorms

struct SupResult {
    double value = 0.0;
    Complex argmax{0.0, 0.0};
    bool lower_bound_only = false;
    std::vector<double> gaps, profile;   ///< per-radius sup on the dyadic grid
    ProfileFit fit;
};

namespace detail {

/// Dyadic radii 1 - 2^-m, m = 0..max_m, with 2^(ceil(m/2)+4) angles each.
template <class F>
SupResult sup_on_dyadic_grid(F&& value_at, double singular_direction, int max_m, bool refine)
{
    SupResult out;
    double best = -1.0;
    Complex best_z{0.0, 0.0};
    for (int m = 0; m <= max_m; ++m) {
        const double gap = std::ldexp(1.0, -m);
        const double r = 1.0 - gap;
        const int count = 1 << ((m + 1) / 2 + 4);
        double ring_best = 0.0;
        auto consider = [&](double th) {
            const Complex z = std::polar(r, th);
            const double v = value_at(z);
            ring_best = std::max(ring_best, v);
            if (v > best) {
                best = v;
                best_z = z;
            }
        };
        for (int i = 0; i < count; ++i)
            consider(2.0 * pi * i / count);
        consider(singular_direction);
        if (m > 0) {
            out.gaps.push_back(gap);
            out.profile.push_back(ring_best);
        }
    }
    if (refine && best > 0.0) {
        // pattern search in (r, theta) from the best grid point
        double r = std::abs(best_z), th = std::arg(best_z);
        double dr = std::max(0.25 * (1.0 - r), 1e-3), dth = 0.1;
        const double r_max = 1.0 - std::ldexp(1.0, -max_m);
        while (dr > 1e-13 || dth > 1e-13) {
            bool moved = false;
            const double cand[4][2] = {{r + dr, th}, {r - dr, th}, {r, th + dth}, {r, th - dth}};
            for (const auto& c : cand) {
                if (c[0] < 0.0 || c[0] > r_max)
                    continue;
                const double v = value_at(std::polar(c[0], c[1]));
                if (v > best) {
                    best = v;
                    r = c[0];
                    th = c[1];
                    moved = true;
                }
            }
            if (!moved) {
                dr *= 0.5;
                dth *= 0.5;
            }
        }
        best_z = std::polar(r, th);
    }
    out.value = std::max(best, 0.0);
    out.argmax = best_z;
    out.fit = classify_profile(out.gaps, out.profile);
    return out;
}

} // namespace detail

/// sup (1 - |z|^2)^m |g^(m)(z)| over the dyadic grid with local refinement.
inline SupResult bloch_seminorm(const AnalyticFn& g, int m, int max_depth = 20)
{
    if (m < 1)
        fail(ErrorKind::parameter, "bloch_seminorm requires m >= 1");
    if (m > g.truncation() && !g.is_polynomial())
        fail(ErrorKind::parameter, "bloch_seminorm order exceeds the truncation");
    const AnalyticFn d = (g.is_polynomial() && m > g.truncation()) ? AnalyticFn::polynomial({0.0}) : derivative(g, m);
    auto value_at = [&](Complex z) {
        const double s = 1.0 - std::norm(z);
        return std::pow(s, m) * std::abs(d(z));
    };
    SupResult out = detail::sup_on_dyadic_grid(value_at, d.singular_direction(), max_depth, true);
    out.lower_bound_only = !d.reliable_at(1.0 - std::ldexp(1.0, -max_depth));
    return out;
}

/// sum_{j<m} |g^(j)(0)| + bloch_seminorm(g, m).
inline double bloch_equivalent_norm(const AnalyticFn& g, int m)
{
    double s = 0.0;
    for (int j = 0; j < m; ++j)
        s += factorial(j) * std::abs(g.coeff(j));
    return s + bloch_seminorm(g, m).value;
}

// ---------------------------------------------------------------------------
// C^1(w*) functional

struct C1StarResult {
    std::vector<Complex> apexes;
    std::vector<double> quotients;
    double sup = 0.0;
    std::vector<std::string> notes;
    ProfileFit fit;   ///< along the apex gaps, for the vanishing test
};

/// Lower radius used where w* would be evaluated at the origin.
inline constexpr double star_origin_clamp = 1e-8;

/// int_{S_a} |g'|^2 w* dA / w(S_a).
inline double c1_star_quotient(const AnalyticFn& g, const Weight& w, Complex a)
{
    const double ma = std::abs(a);
    if (ma == 0.0)
        fail(ErrorKind::domain, "Carleson square apex must be nonzero");
    const AnalyticFn dg = derivative(g, 1);
    const double half = 0.5 * (1.0 - ma);
    const double theta_a = std::arg(a);
    const double sing = dg.singular_direction();
    const bool singular_inside = dg.closed_form() && std::abs(wrap_angle(sing - theta_a)) < half;
    auto angular = [&](double, double u) {
        auto f = [&](double th) { return std::norm(dg.at_gap(u, th)); };
        if (singular_inside) {
            const double focus = theta_a + wrap_angle(sing - theta_a);
            return quad::graded_integrate(f, theta_a - half, theta_a + half, focus, std::max(u, 1e-15) / 4.0,
                                          half / 2.0, 16);
        }
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double lo = theta_a - half + i * half / 2.0;
            s += quad::gl_integrate(f, lo, lo + half / 2.0, 20);
        }
        return s;
    };
    LayerOptions lo;
    lo.r0 = std::max(ma, star_origin_clamp);
    lo.grade_low = true;
    auto h = [&](double t, double u) { return t * w.star(t) * angular(t, u); };
    const double num = layered_radial(h, lo).value() / pi;
    return num / weighted_square_measure_gap(w, 1.0 - ma);
}

inline C1StarResult c1_star_functional(const AnalyticFn& g, const Weight& w, const std::vector<Complex>& apexes)
{
    C1StarResult out;
    std::vector<double> gaps;
    for (const Complex a : apexes) {
        if (std::abs(a) == 0.0) {
            out.notes.push_back("apex 0 skipped");
            continue;
        }
        const double q = c1_star_quotient(g, w, a);
        out.apexes.push_back(a);
        out.quotients.push_back(q);
        out.sup = std::max(out.sup, q);
        gaps.push_back(1.0 - std::abs(a));
    }
    out.fit = classify_profile(gaps, out.quotients);
    return out;
}

/// Apexes 1 - 2^-m on the ray through `theta`, m = 1..max_m.
inline std::vector<Complex> dyadic_apexes(int max_m = 10, double theta = 0.0)
{
    std::vector<Complex> out;
    for (int m = 1; m <= max_m; ++m)
        out.push_back(std::polar(1.0 - std::ldexp(1.0, -m), theta));
    return out;
}

// ---------------------------------------------------------------------------
// Besov seminorm

struct BesovResult {
    double value = 0.0;
    bool infinite = false;
    bool degenerate_rule = false;   ///< decided by the mp <= 1 rule
    LayeredIntegral integral;
};

/// (int |g^(m)|^p (1-|z|)^{mp-2} dA)^{1/p}.
inline BesovResult besov_seminorm(const AnalyticFn& g, double p, int m)
{
    if (!(p > 0.0) || m < 1)
        fail(ErrorKind::parameter, "besov_seminorm requires p > 0 and m >= 1");
    BesovResult out;
    const bool vanishes = g.is_polynomial() && g.degree() < m;
    if (vanishes)
        return out;
    if (m * p <= 1.0) {
        out.infinite = true;
        out.degenerate_rule = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const AnalyticFn d = derivative(g, m);
    const double e = m * p - 2.0;
    auto h = [&](double t, double u) { return 2.0 * t * std::pow(u, e) * angular_mean(d, t, p, u); };
    LayerOptions lo;
    out.integral = layered_radial(h, lo);
    out.infinite = out.integral.divergent;
    out.value = out.infinite ? std::numeric_limits<double>::infinity() : std::pow(out.integral.value(), 1.0 / p);
    return out;
}

} // namespace bergman_lab
