#include <cmath>
#include <random>

#include <boost/math/quadrature/trapezoidal.hpp>
#include <gtest/gtest.h>

#include "bergman_lab/hardy.hpp"
#include "bergman_lab/kernels.hpp"

using namespace bergman_lab;

namespace {

AnalyticFn poly(std::vector<Complex> c) { return AnalyticFn::polynomial(std::move(c)); }

} // namespace

TEST(HardyNorm, Examples)
{
    EXPECT_NEAR(hardy_norm(poly({1.0, 1.0}), 2.0).value, std::sqrt(2.0), 1e-15);
    for (int k : {0, 1, 5})
        for (double p : {1.0, 2.0, 3.0})
            EXPECT_NEAR(hardy_norm(AnalyticFn::monomial(k), p).value, 1.0, 1e-12) << k << " " << p;
    EXPECT_THROW(hardy_norm(poly({1.0}), 0.0), Error);
}

TEST(HardyNorm, PowerSymbolMatchesGaussSum)
{
    // sum ((s)_j / j!)^2 = 2F1(s, s; 1; 1) = Gamma(1-2s) / Gamma(1-s)^2
    const double s = 0.4;
    const double expect = std::sqrt(std::tgamma(1.0 - 2.0 * s) / std::pow(std::tgamma(1.0 - s), 2));
    const HardyNormResult r = hardy_norm(symbol_power(s), 2.0);
    EXPECT_FALSE(r.divergent);
    EXPECT_NEAR(r.value, expect, 1e-3 * expect);
    EXPECT_TRUE(hardy_norm(symbol_power(0.6), 2.0).divergent);
}

TEST(HardyNorm, IntegralMeansMatchBoundaryOracle)
{
    // F = (1-a)/(1-az): ||F||_4^4 = ||F^2||_2^2 = (1-a)^4 (1+a^2)/(1-a^2)^3
    const double a = 0.5;
    const double expect4 = std::pow(1.0 - a, 4) * (1.0 + a * a) / std::pow(1.0 - a * a, 3);
    EXPECT_NEAR(hardy_norm(symbol_carleson(a, 1.0), 4.0).value, std::pow(expect4, 0.25), 1e-9);
    // p = 3 against a boundary trapezoid of the closed form
    const double t = boost::math::quadrature::trapezoidal(
        [&](double th) { return std::pow(std::abs((1.0 - a) / (1.0 - a * std::polar(1.0, th))), 3.0); }, 0.0,
        2.0 * pi, 1e-14);
    EXPECT_NEAR(hardy_norm(symbol_carleson(a, 1.0), 3.0).value, std::cbrt(t / (2.0 * pi)), 1e-9);
}

TEST(GkNorm, Examples)
{
    EXPECT_NEAR(std::pow(gk_norm(AnalyticFn::monomial(1), 2.0, 1), 2), 0.5, 1e-12);
    EXPECT_NEAR(std::pow(gk_norm(AnalyticFn::monomial(2), 2.0, 1), 2), 1.0 / 3.0, 1e-12);
    EXPECT_THROW(gk_norm(poly({1.0, 1.0}), 2.0, 1), Error);
    EXPECT_THROW(gk_norm(AnalyticFn::monomial(2), 2.0, 0), Error);
}

TEST(HardyProperty, GkEquivalenceBand)
{
    std::mt19937_64 rng(61);
    double lo = 1e300, hi = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        AnalyticFn f = detail::random_polynomial(8, rng);
        for (int k : {1, 2}) {
            std::vector<Complex> c = f.coeffs();
            for (int j = 0; j < k; ++j)
                c[j] = 0.0;
            const AnalyticFn fk = poly(c);
            for (double p : {1.0, 2.0, 4.0}) {
                const double ratio = std::pow(gk_norm(fk, p, k, 512), p) / std::pow(hardy_norm(fk, p).value, p);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
    }
    EXPECT_GE(lo, 0.05);
    EXPECT_LE(hi, 20.0);
}

TEST(HardyProperty, LittlewoodPaleyIdentity)
{
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const AnalyticFn f = detail::random_polynomial(10, rng);
        const double n2 = std::pow(hardy_norm(f, 2.0).value, 2);
        EXPECT_NEAR(hardy_littlewood_paley(f), n2, 1e-9 * n2);
    }
    const AnalyticFn c = symbol_carleson(Complex(0.3, 0.6), 2.0);
    const double n2 = std::pow(hardy_norm(c, 2.0).value, 2);
    EXPECT_NEAR(hardy_littlewood_paley(c), n2, 1e-8 * n2);
}

TEST(HardyOperators, VolterraSpectrum)
{
    const OperatorMatrix m = assemble_hardy_volterra(AnalyticFn::monomial(1), 1, 0, 60);
    for (int j = 0; j <= 60; ++j)
        EXPECT_NEAR(std::abs(m(j + 1, j)), 1.0 / (j + 1.0), 1e-15);
    const auto sv = singular_values(m);
    for (int j = 0; j <= 60; ++j)
        EXPECT_NEAR(sv[j], 1.0 / (j + 1.0), 1e-12);
}

TEST(HardyOperators, AtomAtOriginRankOne)
{
    const auto sv = singular_values(assemble_hardy_toeplitz(MeasureSpec::atoms({{Complex(0.0, 0.0), 1.0}}), 0, 30));
    EXPECT_NEAR(sv[0], 1.0, 1e-14);
    EXPECT_LT(sv[1], 1e-14);
    EXPECT_THROW(assemble_hardy_toeplitz(MeasureSpec::star_density(AnalyticFn::monomial(1), 1, 0), 0, 10), Error);
}

TEST(HardyProperty, AdjointIdentity)
{
    const OperatorMatrix v = assemble_hardy_volterra(AnalyticFn::monomial(1), 1, 0, 48);
    const OperatorMatrix t =
        assemble_hardy_toeplitz(MeasureSpec::hardy_star_density(AnalyticFn::monomial(1), 1, 0), 0, 48);
    const OperatorMatrix g = gram(v);
    for (int i = 0; i <= 48; ++i)
        for (int j = 0; j <= 48; ++j)
            EXPECT_NEAR(std::abs(g(i, j) - t(i, j)), 0.0, 1e-8) << i << " " << j;
    for (int j = 0; j <= 48; ++j)
        EXPECT_NEAR(t(j, j).real(), 1.0 / ((j + 1.0) * (j + 1.0)), 1e-8);
}

TEST(HardyProperty, ReproducingKernel)
{
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const AnalyticFn f = detail::random_polynomial(12, rng);
        const Complex z = std::polar(0.95 * U(rng), 2.0 * pi * U(rng));
        EXPECT_NEAR(std::abs(reproduce_hardy(f, 12, z) - f.evaluate_series(z)), 0.0, 1e-12);
    }
}

TEST(Thm54, Examples)
{
    const Lattice lat = make_lattice(1.0, 1e-7);
    const CriterionReport atom = thm54_hardy_toeplitz(MeasureSpec::atoms({{Complex(0.0, 0.0), 1.0}}), 0, 0.3, lat);
    EXPECT_EQ(atom.part("bounded"), Verdict::holds);
    EXPECT_EQ(atom.part("compact"), Verdict::holds);
    EXPECT_EQ(atom.part("schatten"), Verdict::holds);

    const MeasureSpec gap1 = MeasureSpec::radial_power(1.0);
    const LatticeQuotients lq = lattice_quotients(gap1, Space::hardy(), 0, lat);
    const CriterionReport b = toeplitz_lattice_report("thm54", lq, std::nullopt);
    EXPECT_EQ(b.part("bounded"), Verdict::holds);
    EXPECT_EQ(b.part("compact"), Verdict::holds);
    // mu(ball) ~ gap^3, quotient ~ gap^2: the ring sums converge iff p > 1/2
    EXPECT_NEAR(b.evidence.front().second, 2.0, 0.1);
    EXPECT_EQ(toeplitz_lattice_report("thm54", lq, 0.4).verdict, Verdict::fails);
    EXPECT_EQ(toeplitz_lattice_report("thm54", lq, 0.6).verdict, Verdict::holds);
    EXPECT_EQ(toeplitz_lattice_report("thm54", lq, 1.3).verdict, Verdict::holds);
    // spectral side: diagonal 2 int r^{2j+1} (1-r) dr = 1/((j+1)(2j+3)) ~ j^-2
    const OperatorMatrix t = assemble_hardy_toeplitz(gap1, 0, 40);
    for (int j = 0; j <= 40; ++j)
        EXPECT_NEAR(t(j, j).real(), 1.0 / ((j + 1.0) * (2.0 * j + 3.0)), 1e-10);

    const CriterionReport half = thm54_hardy_toeplitz(MeasureSpec::radial_power(-0.5), 0, std::nullopt, lat);
    EXPECT_EQ(half.part("bounded"), Verdict::holds);
    EXPECT_EQ(half.part("compact"), Verdict::holds);
}

TEST(Thm54, SameEvaluatorAsTheWeightedCase)
{
    const Lattice lat = make_lattice(1.0, 1e-4);
    const MeasureSpec mu = MeasureSpec::radial_power(0.5);
    const CriterionReport a = thm54_hardy_toeplitz(mu, 0, 0.7, lat);
    const CriterionReport b = toeplitz_lattice_criterion("thm54", mu, Space::hardy(), 0, 0.7, lat);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.profile, b.profile);
    EXPECT_EQ(a.params, b.params);
}

TEST(Cor52, Examples)
{
    SchattenOptions opt;
    opt.cross.enabled = true;
    const CriterionReport above = cor52_hardy_schatten(AnalyticFn::monomial(1), 1.1, 1, 0, opt);
    EXPECT_EQ(above.verdict, Verdict::holds);
    EXPECT_TRUE(above.cross_check->agrees);
    const CriterionReport below = cor52_hardy_schatten(AnalyticFn::monomial(1), 0.9, 1, 0, opt);
    EXPECT_EQ(below.verdict, Verdict::fails);
    EXPECT_TRUE(below.cross_check->agrees);
}
