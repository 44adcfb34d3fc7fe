#include <cmath>
#include <fstream>
#include <filesystem>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "bergman_lab/weights.hpp"

using namespace bergman_lab;

namespace {

// independent oracles: Boost quadrature on the explicit densities
double density(double alpha, double r) { return std::pow(1.0 - r * r, alpha); }

double oracle_hat(double alpha, double r)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double s) { return density(alpha, s); }, r, 1.0);
}

double oracle_star(double alpha, double r)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double s) { return s * std::log(s / r) * density(alpha, s); }, r, 1.0);
}

double beta_moment(double alpha, int j) { return 0.5 * std::beta((j + 1) / 2.0, alpha + 1.0); }

} // namespace

TEST(Weight, EvalExamples)
{
    EXPECT_DOUBLE_EQ(Weight::standard_alpha(1.0).eval(0.5), 0.75);
    EXPECT_DOUBLE_EQ(Weight::standard_alpha(0.0).eval(0.9), 1.0);
    EXPECT_NEAR(Weight::log_doubling(2.0).eval(0.0), 1.0, 1e-15);
    EXPECT_THROW(Weight::standard_alpha(0.0).eval(1.0), Error);
}

TEST(Weight, HatExamples)
{
    EXPECT_NEAR(Weight::standard_alpha(0.0).hat(0.5), 0.5, 1e-14);
    EXPECT_NEAR(Weight::standard_alpha(1.0).hat(0.0), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(Weight::standard_alpha(1.0).hat(0.5), 0.5 - (1.0 - 0.125) / 3.0, 1e-14);
}

TEST(Weight, HatMatchesQuadratureOracle)
{
    for (double alpha : {0.0, 0.5, 1.0, 3.0})
        for (double r : {0.0, 0.3, 0.9, 0.999}) {
            const double expect = oracle_hat(alpha, r);
            EXPECT_NEAR(Weight::standard_alpha(alpha).hat(r), expect, 1e-11 * std::max(1.0, expect))
                << alpha << " " << r;
        }
}

TEST(Weight, StarExamples)
{
    const Weight w = Weight::standard_alpha(0.0);
    // closed form (r^2 - 1)/4 - ln(r)/2
    const double closed = (0.25 - 1.0) / 4.0 - std::log(0.5) / 2.0;
    EXPECT_NEAR(w.star(0.5), closed, 1e-13);
    EXPECT_NEAR(w.star(0.5), 0.15907359, 1e-8);
    EXPECT_THROW(w.star(0.0), Error);
    EXPECT_THROW(w.star(1.0), Error);
    const double r = 1.0 - 1e-4;
    EXPECT_NEAR(w.star(r) / ((1.0 - r) * w.hat(r)), 0.5, 1e-3);
}

TEST(Weight, StarMatchesQuadratureOracle)
{
    for (double alpha : {0.0, 1.0, 2.5})
        for (double r : {0.1, 0.5, 0.9, 0.99}) {
            const double expect = oracle_star(alpha, r);
            EXPECT_NEAR(Weight::standard_alpha(alpha).star(r), expect, 1e-10 * expect) << alpha << " " << r;
        }
}

TEST(Weight, StarSanityBandNearBoundary)
{
    for (const Weight& w : {Weight::standard_alpha(0.0), Weight::standard_alpha(2.0), Weight::log_doubling(2.0),
                            Weight::exponential(0.01)}) {
        const double s = w.star(0.999);
        EXPECT_GT(s, 0.0) << w.spec();
        EXPECT_LT(s, w.hat(0.999) * 0.001 * 10.0) << w.spec();
    }
}

TEST(Weight, ExponentialUnderflowsAtTheBoundary)
{
    // exp(-1/(1-r)) at r = 0.999 is e^-1000, below the double range
    const Weight w = Weight::exponential(1.0);
    EXPECT_EQ(w.hat(0.999), 0.0);
    EXPECT_EQ(w.star(0.999), 0.0);
    EXPECT_GT(w.star(0.99), 0.0);
}

TEST(Weight, MomentExamples)
{
    EXPECT_NEAR(Weight::standard_alpha(0.0).moment(1), 0.5, 1e-15);
    EXPECT_NEAR(Weight::standard_alpha(0.0).moment(3), 0.25, 1e-15);
    EXPECT_NEAR(Weight::standard_alpha(1.0).moment(1), 0.25, 1e-15);
    EXPECT_NEAR(Weight::standard_alpha(0.0).mass(), 1.0, 1e-15);
}

TEST(Weight, MomentsMatchBetaOracle)
{
    for (double alpha : {0.0, 0.5, 1.0, 3.0}) {
        const Weight w = Weight::standard_alpha(alpha);
        for (int j = 0; j <= 200; ++j) {
            const double expect = beta_moment(alpha, j);
            EXPECT_NEAR(w.moment(j), expect, 1e-12 * expect) << alpha << " " << j;
        }
    }
}

TEST(WeightProperty, HatAndStarMonotone)
{
    for (const Weight& w : {Weight::standard_alpha(0.0), Weight::standard_alpha(1.5), Weight::log_doubling(3.0),
                            Weight::exponential(0.5)}) {
        double prev_hat = w.hat(0.0), prev_star = w.star(0.1);
        for (int i = 1; i <= 40; ++i) {
            const double r = 0.1 + 0.8999 * i / 40.0;
            const double h = w.hat(r), s = w.star(r);
            EXPECT_LE(h, prev_hat + 1e-15) << w.spec() << " r=" << r;
            EXPECT_LE(s, prev_star + 1e-15) << w.spec() << " r=" << r;
            prev_hat = h;
            prev_star = s;
        }
        EXPECT_LT(w.hat(1.0 - 1e-9), 0.01 * w.hat(0.0)) << w.spec();
    }
}

TEST(WeightProperty, MomentsStrictlyDecreasingToZero)
{
    for (const Weight& w : {Weight::standard_alpha(0.0), Weight::log_doubling(2.0), Weight::exponential(1.0)}) {
        double prev = w.moment(0);
        for (int j = 1; j <= 400; ++j) {
            const double m = w.moment(j);
            EXPECT_LT(m, prev) << w.spec() << " j=" << j;
            prev = m;
        }
    }
    EXPECT_LT(Weight::standard_alpha(0.0).moment(400), 0.01 * Weight::standard_alpha(0.0).moment(0));
    EXPECT_LT(Weight::exponential(1.0).moment(400), 0.01 * Weight::exponential(1.0).moment(0));
    // log-doubling mass sits at the boundary: moments decay like 1/log j
    const Weight lw = Weight::log_doubling(2.0);
    EXPECT_LT(lw.moment(1 << 16), 0.5 * lw.moment(1 << 4));
}

TEST(Doubling, StandardProfiles)
{
    const DoublingProfile p0 = doubling_profile(Weight::standard_alpha(0.0), 10);
    ASSERT_EQ(p0.ratios.size(), 10u);
    for (double r : p0.ratios)
        EXPECT_NEAR(r, 2.0, 1e-12);
    EXPECT_TRUE(p0.doubling_like);
    for (double alpha : {1.0, 2.0}) {
        const DoublingProfile p = doubling_profile(Weight::standard_alpha(alpha), 16);
        EXPECT_NEAR(p.ratios.back(), std::pow(2.0, alpha + 1.0), 1e-3 * std::pow(2.0, alpha + 1.0));
        EXPECT_TRUE(p.doubling_like);
    }
}

TEST(Doubling, ExponentialIsNotDoubling)
{
    const DoublingProfile p = doubling_profile(Weight::exponential(1.0), 12);
    EXPECT_FALSE(p.doubling_like);
    for (std::size_t i = 1; i < p.ratios.size(); ++i)
        EXPECT_GT(p.ratios[i], p.ratios[i - 1]);
}

TEST(Upsilon, StandardAlphaZeroKOne)
{
    // density 1 - t^2: 2 v_{2j-1} = 1/(j(j+1))
    const Weight v = upsilon_transform(Weight::standard_alpha(0.0), 1);
    for (double t : {0.0, 0.3, 0.8})
        EXPECT_NEAR(v.eval(t), 1.0 - t * t, 1e-10);
    for (int j = 1; j <= 20; ++j)
        EXPECT_NEAR(2.0 * v.moment(2 * j - 1), 1.0 / (j * (j + 1.0)), 1e-12);
}

TEST(Upsilon, MomentIdentityTwoOrders)
{
    for (double alpha : {0.0, 1.0})
        for (int k : {1, 2}) {
            const Weight w = Weight::standard_alpha(alpha);
            const Weight v = upsilon_transform(w, k);
            for (int m = 0; m <= 50; ++m) {
                const double lhs = v.moment(2 * m + 1) * falling_factorial(m + k, k);
                const double rhs = w.moment(2 * m + 2 * k + 1);
                EXPECT_NEAR(lhs, rhs, 1e-9 * rhs) << alpha << " " << k << " " << m;
            }
        }
}

TEST(Upsilon, KZeroIsIdentityAndRegular)
{
    const Weight w = Weight::standard_alpha(1.0);
    EXPECT_EQ(upsilon_transform(w, 0).identity(), w.identity());
    EXPECT_TRUE(regular_ratio_check(upsilon_transform(w, 2), 0.5, 0.999).bounded);
}

TEST(Weight, TabulatedFromFile)
{
    const auto path = std::filesystem::temp_directory_path() / "bergman_lab_weight_test.csv";
    {
        std::ofstream os(path);
        os << "r,w\n";
        for (int i = 0; i <= 200; ++i) {
            const double r = 0.999 * i / 200.0;
            os << r << ',' << (1.0 - r * r) << '\n';
        }
    }
    const Weight w = Weight::from_file(path.string());
    EXPECT_NEAR(w.moment(1), beta_moment(1.0, 1), 2e-3);
    std::filesystem::remove(path);
    EXPECT_THROW(Weight::from_file("/nonexistent/weight.csv"), Error);
}
