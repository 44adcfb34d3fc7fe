#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "bergman_lab/criteria.hpp"

using namespace bergman_lab;

namespace {

const Weight w0 = Weight::standard_alpha(0.0);

double evidence(const CriterionReport& rep, const std::string& key)
{
    for (const auto& [k, v] : rep.evidence)
        if (k == key)
            return v;
    ADD_FAILURE() << "missing evidence " << key;
    return std::nan("");
}

} // namespace

TEST(Thm31, Examples)
{
    const CriterionReport poly = thm31_boundedness(AnalyticFn::monomial(2), w0, 1.0, 2.0, 1, 0);
    EXPECT_EQ(poly.verdict, Verdict::holds);
    EXPECT_EQ(poly.part("bounded"), Verdict::holds);

    const CriterionReport pw = thm31_boundedness(symbol_power(0.5), w0, 1.0, 2.0, 1, 0);
    EXPECT_EQ(pw.verdict, Verdict::fails);
    EXPECT_NEAR(evidence(pw, "fit_exponent"), -1.5, 0.05);
    // closed form on the axis: 0.5 gap^-1.5 against the profile
    for (const auto& [gap, v] : pw.profile)
        if (gap < 1e-3)
            EXPECT_NEAR(v / (0.5 * std::pow(gap, -1.5)), 1.0, 0.05) << gap;

    const CriterionReport lg = thm31_boundedness(symbol_log(), w0, 1.0, 2.0, 2, 1);
    EXPECT_EQ(lg.verdict, Verdict::fails);
    EXPECT_NEAR(evidence(lg, "fit_exponent"), -1.0, 0.05);

    EXPECT_THROW(thm31_boundedness(AnalyticFn::monomial(1), w0, 2.0, 1.0, 1, 0), Error);
    EXPECT_THROW(thm31_boundedness(AnalyticFn::monomial(1), w0, 1.0, 2.0, 1, 1), Error);
}

TEST(CriteriaProperty, Thm31CompactImpliesBounded)
{
    const std::vector<AnalyticFn> symbols{AnalyticFn::monomial(3), symbol_power(0.3), symbol_log(),
                                          symbol_carleson(0.9, 2.0)};
    for (const AnalyticFn& g : symbols)
        for (const Weight& w : {w0, Weight::standard_alpha(1.0), Weight::log_doubling(2.0)})
            for (auto [n, k] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}}) {
                const CriterionReport rep = thm31_boundedness(g, w, 1.0, 3.0, n, k);
                if (rep.part("compact") == Verdict::holds)
                    EXPECT_EQ(rep.part("bounded"), Verdict::holds) << g.label() << " " << w.spec();
            }
}

TEST(Thm32, Examples)
{
    const CriterionReport lg = thm32_fixed_p(symbol_log(), w0, 2.0, 2, 1);
    EXPECT_EQ(lg.verdict, Verdict::holds);
    EXPECT_EQ(lg.part("compact"), Verdict::fails);
    EXPECT_NEAR(evidence(lg, "seminorm"), 2.0, 1e-4);

    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k < n; ++k) {
            const CriterionReport p5 = thm32_fixed_p(AnalyticFn::monomial(5), w0, 2.0, n, k);
            EXPECT_EQ(p5.part("bounded"), Verdict::holds) << n << " " << k;
            EXPECT_EQ(p5.part("compact"), Verdict::holds) << n << " " << k;
        }

    const CriterionReport c1 = thm32_fixed_p(symbol_log(), w0, 2.0, 1, 0);
    EXPECT_EQ(c1.verdict, Verdict::holds);
    EXPECT_EQ(c1.part("compact"), Verdict::fails);
}

TEST(Thm32, IndependentOfP)
{
    const auto a = thm32_fixed_p(symbol_log(), w0, 1.0, 2, 1);
    const auto b = thm32_fixed_p(symbol_log(), w0, 4.0, 2, 1);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.profile, b.profile);
}

TEST(Thm33, Examples)
{
    const CriterionReport lo = thm33_downward(symbol_power(0.25), w0, 4.0, 2.0, 1, 0);
    EXPECT_EQ(lo.verdict, Verdict::holds);
    const CriterionReport hi = thm33_downward(symbol_power(0.75), w0, 4.0, 2.0, 1, 0);
    EXPECT_EQ(hi.verdict, Verdict::fails);
    // q >= 2 and k = 0: necessity certified
    EXPECT_EQ(hi.part("bounded"), Verdict::fails);
    // s = pq/(p-q) = 7.2/2.2, 0.75 s > 2; q < 2 certifies sufficiency only
    const CriterionReport weak = thm33_downward(symbol_power(0.75), w0, 4.0, 1.8, 1, 0);
    EXPECT_EQ(weak.part("membership"), Verdict::fails);
    EXPECT_EQ(weak.part("bounded"), Verdict::inconclusive);
    const CriterionReport poly = thm33_downward(AnalyticFn::polynomial({1.0, -2.0, 0.5}), w0, 3.0, 1.0, 2, 1);
    EXPECT_EQ(poly.verdict, Verdict::holds);
    EXPECT_THROW(thm33_downward(symbol_log(), w0, 2.0, 2.0, 1, 0), Error);
}

TEST(Thm42, AtomAtOrigin)
{
    const MeasureSpec mu = MeasureSpec::atoms({{Complex(0.0, 0.0), 1.0}});
    for (double p : {0.25, 1.0, 3.0}) {
        const CriterionReport rep = thm42_toeplitz(mu, w0, 0, p, make_lattice(1.0));
        EXPECT_EQ(rep.part("bounded"), Verdict::holds);
        EXPECT_EQ(rep.part("compact"), Verdict::holds);
        EXPECT_EQ(rep.part("schatten"), Verdict::holds) << p;
    }
    EXPECT_THROW(thm42_toeplitz(mu, w0, 0, -1.0, make_lattice(1.0)), Error);
}

class StarDensityLattice : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        const MeasureSpec mu = MeasureSpec::star_density(AnalyticFn::monomial(1), 1, 0);
        lq = std::make_unique<LatticeQuotients>(lattice_quotients(mu, Space::bergman(w0), 0, make_lattice(1.0, 1e-8)));
    }
    static void TearDownTestSuite() { lq.reset(); }
    static std::unique_ptr<LatticeQuotients> lq;
};

std::unique_ptr<LatticeQuotients> StarDensityLattice::lq;

TEST_F(StarDensityLattice, SchattenThresholdAtOneHalf)
{
    EXPECT_EQ(toeplitz_lattice_report("thm42", *lq, 0.4).verdict, Verdict::fails);
    EXPECT_EQ(toeplitz_lattice_report("thm42", *lq, 0.6).verdict, Verdict::holds);
}

TEST_F(StarDensityLattice, BoundedAndCompactWithSquareDecay)
{
    const CriterionReport rep = toeplitz_lattice_report("thm42", *lq, std::nullopt);
    EXPECT_EQ(rep.part("bounded"), Verdict::holds);
    EXPECT_EQ(rep.part("compact"), Verdict::holds);
    EXPECT_NEAR(evidence(rep, "profile_fit_exponent"), 2.0, 0.1);
}

TEST_F(StarDensityLattice, SchattenMonotoneInP)
{
    bool held = false;
    for (double p : {0.3, 0.4, 0.45, 0.55, 0.6, 0.8, 1.0, 2.0}) {
        const bool holds = toeplitz_lattice_report("thm42", *lq, p).verdict == Verdict::holds;
        if (held)
            EXPECT_TRUE(holds) << p;
        held = held || holds;
    }
    EXPECT_TRUE(held);
}

TEST(Cor43, ExamplesWithSpectralCrossCheck)
{
    SchattenOptions opt;
    opt.cross.enabled = true;
    const CriterionReport two = cor43_schatten_volterra(AnalyticFn::monomial(1), w0, 2.0, 1, 0, opt);
    EXPECT_EQ(two.verdict, Verdict::holds);
    ASSERT_TRUE(two.cross_check);
    EXPECT_TRUE(two.cross_check->agrees);
    EXPECT_NEAR(two.cross_check->values.back(), 1.0, 0.01);

    const CriterionReport one = cor43_schatten_volterra(AnalyticFn::monomial(1), w0, 1.0, 1, 0, opt);
    EXPECT_EQ(one.verdict, Verdict::fails);
    EXPECT_TRUE(one.cross_check->agrees);

    const CriterionReport sq = cor43_schatten_volterra(AnalyticFn::monomial(2), w0, 0.75, 2, 0, opt);
    EXPECT_EQ(sq.verdict, Verdict::holds);
    EXPECT_TRUE(sq.cross_check->agrees);
}

TEST(CriteriaProperty, SchattenMonotoneInP)
{
    const std::vector<AnalyticFn> symbols{AnalyticFn::monomial(1), symbol_log(), symbol_power(0.2),
                                          symbol_carleson(0.7, 2.0)};
    for (const AnalyticFn& g : symbols)
        for (auto [n, k] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}}) {
            bool held = false;
            for (double p : {0.5, 0.8, 1.0, 1.5, 2.0, 4.0}) {
                const bool holds = cor43_schatten_volterra(g, w0, p, n, k).verdict == Verdict::holds;
                if (held)
                    EXPECT_TRUE(holds) << g.label() << " n=" << n << " k=" << k << " p=" << p;
                held = held || holds;
            }
        }
}
