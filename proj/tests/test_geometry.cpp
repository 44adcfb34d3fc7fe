#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "bergman_lab/geometry.hpp"

using namespace bergman_lab;

namespace {

Complex random_point(std::mt19937_64& rng, double max_modulus = 0.99)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    return std::polar(max_modulus * std::sqrt(U(rng)), 2.0 * pi * U(rng));
}

} // namespace

TEST(Distance, PseudohyperbolicExamples)
{
    EXPECT_NEAR(pseudohyperbolic(Complex(0.0, 0.0), Complex(0.3, 0.4)), 0.5, 1e-15);
    EXPECT_NEAR(pseudohyperbolic(Complex(0.5, 0.0), Complex(-0.5, 0.0)), 0.8, 1e-15);
    EXPECT_EQ(pseudohyperbolic(Complex(0.2, -0.7), Complex(0.2, -0.7)), 0.0);
}

TEST(Distance, BergmanExamples)
{
    EXPECT_NEAR(bergman_distance(Complex(0.0, 0.0), Complex(0.5, 0.0)), 0.5 * std::log(3.0), 1e-15);
    EXPECT_EQ(bergman_distance(Complex(0.6, 0.1), Complex(0.6, 0.1)), 0.0);
}

TEST(DistanceProperty, MobiusInvariance)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const Complex a = random_point(rng), z = random_point(rng), w = random_point(rng);
        EXPECT_NEAR(pseudohyperbolic(mobius(a, z), mobius(a, w)), pseudohyperbolic(z, w), 1e-12);
    }
}

TEST(Regions, Examples)
{
    const DiskPoint half(0.5, 0.0);
    EXPECT_TRUE(region_contains(CarlesonSquare{half}, DiskPoint(0.75, 0.0)));
    EXPECT_FALSE(region_contains(CarlesonSquare{half}, DiskPoint(std::polar(0.75, 0.3))));
    EXPECT_TRUE(region_contains(Cone{Complex(0.8, 0.0)}, DiskPoint(0.4, 0.0)));
    EXPECT_THROW(region_contains(CarlesonSquare{DiskPoint(0.0, 0.0)}, half), Error);
    EXPECT_THROW(region_contains(Cone{Complex(0.0, 0.0)}, half), Error);
}

TEST(RegionsProperty, TentInsideCarlesonSquare)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    long long inside = 0;
    for (int i = 0; i < 50; ++i) {
        const double mu = 0.2 + 0.79 * U(rng);
        const DiskPoint u(std::polar(mu, 2.0 * pi * U(rng)));
        for (int s = 0; s < 10000; ++s) {
            const DiskPoint z(random_point(rng, 0.9999));
            if (region_contains(Tent{u}, z)) {
                ++inside;
                EXPECT_TRUE(region_contains(CarlesonSquare{u}, z));
            }
        }
    }
    EXPECT_GT(inside, 0);
}

TEST(Regions, TentIsDualToCone)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 5000; ++i) {
        const Complex u = random_point(rng), z = random_point(rng);
        if (std::abs(z) < 1e-3)
            continue;
        EXPECT_EQ(region_contains(Tent{DiskPoint(u)}, DiskPoint(z)), region_contains(Cone{z}, DiskPoint(u)));
    }
}

TEST(SquareMeasure, StandardExampleAndOracle)
{
    const Weight w0 = Weight::standard_alpha(0.0);
    EXPECT_NEAR(weighted_square_measure(w0, DiskPoint(0.5, 0.0)), 0.5 / pi * 0.375, 1e-13);
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double a : {0.3, 0.9, 0.999}) {
        // (1/pi) * angular width (1-a) * int_a^1 r (1-r^2) dr
        const double expect = (1.0 - a) / pi * ts.integrate([](double r) { return r * (1.0 - r * r); }, a, 1.0);
        EXPECT_NEAR(weighted_square_measure(Weight::standard_alpha(1.0), DiskPoint(a, 0.0)), expect, 1e-12 * expect);
    }
    EXPECT_LT(weighted_square_measure(w0, DiskPoint(0.999999, 0.0)), 1e-11);
    EXPECT_THROW(weighted_square_measure(w0, DiskPoint(0.0, 0.0)), Error);
}

TEST(Lattice, FirstPointAndSeparation)
{
    const Lattice lat = make_lattice(1.0);
    const auto pts = lat.points(500);
    ASSERT_EQ(pts.size(), 500u);
    EXPECT_EQ(std::abs(pts[0]), 0.0);
    // independent all-pairs scan
    double min_beta = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            min_beta = std::min(min_beta, bergman_distance(pts[i], pts[j]));
    EXPECT_GE(min_beta, 0.2);
}

TEST(Lattice, CoveringByBruteForceNearestPoint)
{
    const Lattice lat = make_lattice(1.0);
    const auto pts = lat.points(200000);
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int s = 0; s < 300; ++s) {
        const Complex z = random_point(rng, 0.95);
        double best = 1e300;
        for (const Complex& p : pts)
            best = std::min(best, bergman_distance(z, p));
        EXPECT_LT(best, 5.0);
        EXPECT_NEAR(lat.nearest_distance(z), best, 1e-12);
        ++checked;
    }
    EXPECT_EQ(checked, 300);
}

TEST(LatticeProperty, BothInvariantsForThreeRadii)
{
    for (double r : {0.5, 1.0, 2.0}) {
        const LatticeCheck c = check_lattice(make_lattice(r));
        EXPECT_TRUE(c.separated) << r;
        EXPECT_TRUE(c.covering) << r;
        EXPECT_GE(c.min_separation, 0.2 * r - 1e-12) << r;
        EXPECT_LT(c.max_cover_distance, 5.0 * r) << r;
    }
}

TEST(Lattice, RejectsUncoverableRadius)
{
    EXPECT_THROW(make_lattice(0.0), Error);
    EXPECT_THROW(make_lattice(5.0), Error);
}

TEST(Lattice, CsvExport)
{
    std::ostringstream os;
    write_lattice_csv(os, make_lattice(1.0), 10);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "re,im,modulus,ring");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    EXPECT_EQ(rows, 10);
}
