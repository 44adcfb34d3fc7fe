#pragma once
//
// Truncated reproducing kernels of A^2_w and H^2 and the reproducing
// integral <f, K_z> evaluated by quadrature on the disk or the circle.
//

#include <cmath>
#include <vector>

#include "core.hpp"
#include "quadrature.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman_lab {

/// sum_{j<=N} (conj(z) zeta)^j / (2 w_{2j+1}).
inline Complex bergman_kernel(const Weight& w, int N, Complex z, Complex zeta)
{
    const Complex x = std::conj(z) * zeta;
    Complex s(0.0, 0.0), pw(1.0, 0.0);
    for (int j = 0; j <= N; ++j) {
        s += pw / w.monomial_norm2(j);
        pw *= x;
    }
    return s;
}

/// sum_{j<=N} (conj(z) zeta)^j.
inline Complex hardy_kernel(int N, Complex z, Complex zeta)
{
    const Complex x = std::conj(z) * zeta;
    Complex s(0.0, 0.0), pw(1.0, 0.0);
    for (int j = 0; j <= N; ++j) {
        s += pw;
        pw *= x;
    }
    return s;
}

namespace detail {

/// Radial nodes and weights for int_0^1 F(t) w(t) dt with F polynomial of
/// high degree: uniform panels up to 1 - 2^-6, then dyadic layers.
inline void kernel_radial_rule(const Weight& w, std::vector<double>& t, std::vector<double>& wt)
{
    const auto& gl = quad::gauss_legendre(20);
    const int panels = 64;
    const double edge = 1.0 - 1.0 / 64.0;
    for (int p = 0; p < panels; ++p) {
        const double a = edge * p / panels, b = edge * (p + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 20; ++i) {
            const double x = mid + half * gl.nodes[i];
            t.push_back(x);
            wt.push_back(half * gl.weights[i] * w.eval(x));
        }
    }
    for (int m = 6; m < 52; ++m) {
        const double ua = std::ldexp(1.0, -m), ub = std::ldexp(1.0, -m - 1);
        const double mid = 0.5 * (ua + ub), half = 0.5 * (ua - ub);
        for (int i = 0; i < 20; ++i) {
            const double u = mid + half * gl.nodes[i];
            t.push_back(1.0 - u);
            wt.push_back(half * gl.weights[i] * w.density_gap(u));
        }
    }
}

} // namespace detail

/// int_D f(zeta) conj(K^N_z(zeta)) w dA(zeta) with dA(D) = 1. Exact in the
/// angle (trapezoid above the polynomial degree); radial composite rule.
inline Complex reproduce_bergman(const AnalyticFn& f, const Weight& w, int N, Complex z)
{
    if (!f.is_polynomial())
        fail(ErrorKind::parameter, "reproduce_bergman expects a polynomial");
    const int deg = std::max(0, f.degree());
    const int M = deg + N + 2;
    std::vector<double> t, wt;
    detail::kernel_radial_rule(w, t, wt);
    Complex total(0.0, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        Complex ang(0.0, 0.0);
        for (int a = 0; a < M; ++a) {
            const Complex zeta = std::polar(t[i], 2.0 * pi * a / M);
            ang += f.evaluate_series(zeta) * std::conj(bergman_kernel(w, N, z, zeta));
        }
        total += 2.0 * t[i] * wt[i] * ang / static_cast<double>(M);
    }
    return total;
}

/// (1/2pi) int f(e^{it}) conj(K^N_z(e^{it})) dt by the trapezoid rule.
inline Complex reproduce_hardy(const AnalyticFn& f, int N, Complex z)
{
    if (!f.is_polynomial())
        fail(ErrorKind::parameter, "reproduce_hardy expects a polynomial");
    const int M = std::max(0, f.degree()) + N + 2;
    Complex s(0.0, 0.0);
    for (int a = 0; a < M; ++a) {
        const Complex xi = std::polar(1.0, 2.0 * pi * a / M);
        s += f.evaluate_series(xi) * std::conj(hardy_kernel(N, z, xi));
    }
    return s / static_cast<double>(M);
}

} // namespace bergman_lab
