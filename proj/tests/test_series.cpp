#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bergman_lab/operators.hpp"
#include "bergman_lab/series.hpp"

using namespace bergman_lab;

namespace {

AnalyticFn poly(std::vector<Complex> c) { return AnalyticFn::polynomial(std::move(c)); }

double max_coeff_diff(const AnalyticFn& a, const AnalyticFn& b)
{
    const int n = std::max(a.truncation(), b.truncation());
    double d = 0.0;
    for (int j = 0; j <= n; ++j)
        d = std::max(d, std::abs(a.coeff(j) - b.coeff(j)));
    return d;
}

// hand-rolled oracle: I^n(f^(k) h) directly on coefficient arrays
std::vector<Complex> oracle_tgnk(const std::vector<Complex>& g, const std::vector<Complex>& f, int n, int k)
{
    const int m = n - k;
    std::vector<Complex> fk, gm;
    for (std::size_t j = k; j < f.size(); ++j) {
        double c = 1.0;
        for (int i = 0; i < k; ++i)
            c *= static_cast<double>(j - i);
        fk.push_back(c * f[j]);
    }
    for (std::size_t j = m; j < g.size(); ++j) {
        double c = 1.0;
        for (int i = 0; i < m; ++i)
            c *= static_cast<double>(j - i);
        gm.push_back(c * g[j]);
    }
    std::vector<Complex> prod(fk.size() + gm.size(), 0.0);
    for (std::size_t a = 0; a < fk.size(); ++a)
        for (std::size_t b = 0; b < gm.size(); ++b)
            prod[a + b] += fk[a] * gm[b];
    std::vector<Complex> out(prod.size() + n, 0.0);
    for (std::size_t j = 0; j < prod.size(); ++j) {
        double c = 1.0;
        for (int i = 1; i <= n; ++i)
            c *= static_cast<double>(j + i);
        out[j + n] = prod[j] / c;
    }
    return out;
}

} // namespace

TEST(Derivative, Examples)
{
    EXPECT_EQ(max_coeff_diff(derivative(AnalyticFn::monomial(2), 1), poly({0.0, 2.0})), 0.0);
    EXPECT_EQ(max_coeff_diff(derivative(AnalyticFn::monomial(3), 2), poly({0.0, 6.0})), 0.0);
    std::vector<Complex> e(21);
    double fact = 1.0;
    for (int j = 0; j <= 20; ++j) {
        if (j > 0)
            fact *= j;
        e[j] = 1.0 / fact;
    }
    const AnalyticFn d = derivative(poly(e), 1);
    for (int j = 0; j < 19; ++j)
        EXPECT_NEAR(std::abs(d.coeff(j) - e[j]), 0.0, 1e-15);
    EXPECT_THROW(derivative(symbol_log(10), 20), Error);
    EXPECT_TRUE(derivative(poly({1.0, 2.0}), 5).is_zero());
}

TEST(Integrate, Examples)
{
    EXPECT_EQ(max_coeff_diff(integrate(poly({1.0}), 1), poly({0.0, 1.0})), 0.0);
    EXPECT_NEAR(max_coeff_diff(integrate(poly({0.0, 2.0}), 2), poly({0.0, 0.0, 0.0, 1.0 / 3.0})), 0.0, 1e-16);
}

TEST(CauchyProduct, Examples)
{
    EXPECT_EQ(max_coeff_diff(cauchy_product(poly({1.0, 1.0}), poly({1.0, -1.0})), poly({1.0, 0.0, -1.0})), 0.0);
    std::vector<Complex> geo(31, 1.0);
    const AnalyticFn p = cauchy_product(poly(geo), poly({1.0, -1.0}));
    EXPECT_EQ(p.coeff(0), Complex(1.0, 0.0));
    for (int j = 1; j <= 30; ++j)
        EXPECT_EQ(p.coeff(j), Complex(0.0, 0.0)) << j;
    EXPECT_TRUE(cauchy_product(poly({1.0, 2.0}), poly({0.0})).is_zero());
}

TEST(ApplyTgnk, Examples)
{
    EXPECT_EQ(max_coeff_diff(apply_tgnk(AnalyticFn::monomial(1), poly({1.0}), 1, 0), poly({0.0, 1.0})), 0.0);
    EXPECT_NEAR(max_coeff_diff(apply_tgnk(AnalyticFn::monomial(2), AnalyticFn::monomial(1), 2, 1),
                               poly({0.0, 0.0, 0.0, 1.0 / 3.0})),
                0.0, 1e-16);
    EXPECT_THROW(apply_tgnk(AnalyticFn::monomial(1), poly({1.0}), 1, 1), Error);
}

TEST(ApplyTgnk, MatchesHandOracle)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const AnalyticFn f = detail::random_polynomial(8, rng), g = detail::random_polynomial(6, rng);
        for (int n = 1; n <= 4; ++n)
            for (int k = 0; k < n; ++k) {
                const AnalyticFn t = apply_tgnk(g, f, n, k);
                const auto o = oracle_tgnk(g.coeffs(), f.coeffs(), n, k);
                for (std::size_t j = 0; j < o.size(); ++j)
                    EXPECT_NEAR(std::abs(t.coeff(static_cast<int>(j)) - o[j]), 0.0, 1e-12 * (1.0 + std::abs(o[j])));
            }
    }
}

TEST(SeriesProperty, TgnkLinearInF)
{
    std::mt19937_64 rng(41);
    const Complex alpha(0.7, -1.3);
    for (int trial = 0; trial < 10; ++trial) {
        const AnalyticFn f1 = detail::random_polynomial(7, rng), f2 = detail::random_polynomial(9, rng);
        const AnalyticFn g = detail::random_polynomial(5, rng);
        for (int n = 1; n <= 3; ++n)
            for (int k = 0; k < n; ++k) {
                const AnalyticFn lhs = apply_tgnk(g, add(f2, f1, alpha), n, k);
                const AnalyticFn rhs = add(apply_tgnk(g, f2, n, k), apply_tgnk(g, f1, n, k), alpha);
                EXPECT_LT(max_coeff_diff(lhs, rhs), 1e-12);
            }
    }
}

TEST(SeriesProperty, ThreeTermRecurrence)
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const AnalyticFn f = detail::random_polynomial(10, rng), g = detail::random_polynomial(7, rng);
        for (int n = 3; n <= 4; ++n)
            for (int k = 2; k < n; ++k) {
                const AnalyticFn lhs = apply_tgnk(g, f, n, k);
                // add(a, b, c) = c a + b
                AnalyticFn rhs = add(apply_tgnk(g, f, n, k - 1), apply_tgnk(g, f, n - 1, k - 1), -1.0);
                // boundary term f^(k-1)(0) g^(n-k)(0) z^(n-1)/(n-1)!
                const Complex c = factorial(k - 1) * f.coeff(k - 1) * factorial(n - k) * g.coeff(n - k) /
                                  factorial(n - 1);
                rhs = add(AnalyticFn::monomial(n - 1, c), rhs, -1.0);
                EXPECT_LT(max_coeff_diff(lhs, rhs), 1e-12) << n << " " << k;
            }
    }
}

TEST(Symbols, CoefficientExamples)
{
    EXPECT_NEAR(std::abs(symbol_carleson(0.5, 2.0).coeff(1) - 0.25), 0.0, 1e-15);
    const AnalyticFn lg = symbol_log();
    EXPECT_EQ(lg.coeff(0), Complex(0.0, 0.0));
    for (int j = 1; j <= 512; ++j)
        EXPECT_NEAR(std::abs(lg.coeff(j) - 1.0 / j), 0.0, 1e-16);
    const AnalyticFn one = symbol_power(1.0);
    for (int j = 0; j <= 512; ++j)
        EXPECT_NEAR(std::abs(one.coeff(j) - 1.0), 0.0, 1e-13);
    EXPECT_THROW(symbol_power(0.0), Error);
    EXPECT_THROW(symbol_carleson(1.0, 2.0), Error);
    EXPECT_THROW(symbol_carleson(0.5, -1.0), Error);
}

TEST(SymbolsProperty, SeriesAgreesWithClosedForms)
{
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Complex a(0.6, 0.0);
    const AnalyticFn lg = symbol_log(), pw = symbol_power(0.35), cs = symbol_carleson(a, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Complex z = std::polar(0.9 * std::sqrt(U(rng)), 2.0 * pi * U(rng));
        EXPECT_NEAR(std::abs(lg.evaluate_series(z) + std::log(1.0 - z)), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(pw.evaluate_series(z) - std::pow(1.0 - z, -0.35)), 0.0, 1e-10);
        const Complex f = std::pow((1.0 - std::abs(a)) / (1.0 - std::conj(a) * z), 3.0);
        EXPECT_NEAR(std::abs(cs.evaluate_series(z) - f), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(lg(z) - lg.evaluate_series(z)), 0.0, 1e-10);
    }
}

TEST(Symbols, LacunaryIsBlochCandidate)
{
    const AnalyticFn lac = symbol_lacunary();
    int nonzero = 0;
    for (int j = 0; j <= lac.truncation(); ++j)
        if (lac.coeff(j) != Complex(0.0, 0.0)) {
            ++nonzero;
            EXPECT_EQ(j & (j - 1), 0) << j;
        }
    EXPECT_GE(nonzero, 9);
}

TEST(Series, TruncationRecorded)
{
    EXPECT_EQ(symbol_log(200).truncation(), 200);
    EXPECT_EQ(symbol_log().truncation(), default_truncation);
    EXPECT_EQ(symbol_log().tail().kind, TailKind::unknown);
    EXPECT_EQ(symbol_carleson(0.5, 2.0).tail().kind, TailKind::geometric);
    EXPECT_TRUE(poly({1.0, 2.0}).is_polynomial());
}
