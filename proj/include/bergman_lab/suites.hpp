#pragma once
//
// Batteries: acceptance (numbered criteria), agreement (criterion verdict
// versus spectral or probe surrogate) and regression (frozen bands).
//

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "geometry.hpp"
#include "hardy.hpp"
#include "kernels.hpp"
#include "measures.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman_lab {

struct SuiteRow {
    std::string suite;
    std::string id;
    std::string name;
    bool passed = false;
    bool known_unattainable = false;   ///< only the part whose stated target is unreachable failed
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

template <class F>
SuiteRow timed_row(const std::string& suite, const std::string& id, const std::string& name, F&& body)
{
    SuiteRow row;
    row.suite = suite;
    row.id = id;
    row.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(row);
    } catch (const std::exception& e) {
        row.passed = false;
        row.detail += std::string(row.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

inline AnalyticFn z_power(int j)
{
    AnalyticFn f = AnalyticFn::monomial(j);
    f.set_label(j == 1 ? "poly:0,1" : "z^" + std::to_string(j));
    return f;
}

inline MeasureSpec star_of_z() { return MeasureSpec::star_density(z_power(1), 1, 0); }
inline MeasureSpec tau_of_z() { return MeasureSpec::hardy_star_density(z_power(1), 1, 0); }

} // namespace detail

// ---------------------------------------------------------------------------
// agreement battery

struct AgreementCase {
    std::string name;
    CriterionReport report;
};

/// Curated criterion-versus-surrogate pairs spanning holds and fails.
/// Lattice quotients are shared between the exponents of one measure.
inline std::vector<AgreementCase> agreement_cases()
{
    std::vector<AgreementCase> out;
    const Weight w0 = Weight::standard_alpha(0.0);
    const AnalyticFn z = detail::z_power(1), z2 = detail::z_power(2), z5 = detail::z_power(5);

    SchattenOptions so;
    so.cross.enabled = true;
    out.push_back({"cor43 g=z n=1 p=2", cor43_schatten_volterra(z, w0, 2.0, 1, 0, so)});
    out.push_back({"cor43 g=z n=1 p=1", cor43_schatten_volterra(z, w0, 1.0, 1, 0, so)});
    out.push_back({"cor43 g=z n=1 p=0.6", cor43_schatten_volterra(z, w0, 0.6, 1, 0, so)});
    out.push_back({"cor43 g=z^2 n=2 p=0.75", cor43_schatten_volterra(z2, w0, 0.75, 2, 0, so)});

    const std::vector<int> toeplitz_Ns{64, 128, 256};
    {
        const MeasureSpec mu = detail::star_of_z();
        const Space space = Space::bergman(w0);
        const LatticeQuotients lq = lattice_quotients(mu, space, 0, make_lattice(1.0, 1e-8));
        for (const double p : {0.6, 0.4}) {
            CriterionReport rep = toeplitz_lattice_report("thm42", lq, p);
            attach_toeplitz_cross_check(rep, mu, space, 0, p, toeplitz_Ns);
            out.push_back({"thm42 star(z) p=" + detail::fmt(p), std::move(rep)});
        }
        CriterionReport rep = toeplitz_lattice_report("thm42", lq, std::nullopt);
        attach_toeplitz_cross_check(rep, mu, space, 0, std::nullopt, toeplitz_Ns);
        out.push_back({"thm42 star(z) bounded", std::move(rep)});
    }
    {
        const MeasureSpec mu = MeasureSpec::atoms({{Complex(0.0, 0.0), 1.0}});
        ToeplitzOptions to;
        to.cross.enabled = true;
        to.cross.Ns = toeplitz_Ns;
        out.push_back({"thm42 atom at 0 p=0.5", thm42_toeplitz(mu, w0, 0, 0.5, make_lattice(1.0, 1e-6), to)});
    }

    Thm32Options t32;
    t32.cross.enabled = true;
    t32.cross.Ns = {128, 256, 512};
    out.push_back({"thm32 g=log n=2 k=1", thm32_fixed_p(symbol_log(), w0, 2.0, 2, 1, t32)});
    out.push_back({"thm32 g=z^5 n=2 k=0", thm32_fixed_p(z5, w0, 2.0, 2, 0, t32)});

    Thm33Options t33;
    t33.cross.enabled = true;
    for (const double s : {0.25, 0.75}) {
        AnalyticFn g = symbol_power(s);
        g.set_label("pow:s=" + detail::fmt(s));
        out.push_back({"thm33 pow s=" + detail::fmt(s), thm33_downward(g, w0, 4.0, 2.0, 1, 0, t33)});
    }

    for (const double p : {1.1, 0.9})
        out.push_back({"cor52 hardy g=z p=" + detail::fmt(p), cor52_hardy_schatten(z, p, 1, 0, so)});
    {
        const MeasureSpec mu = detail::tau_of_z();
        const Space space = Space::hardy();
        const LatticeQuotients lq = lattice_quotients(mu, space, 0, make_lattice(1.0, 1e-8));
        for (const double p : {0.55, 0.45}) {
            CriterionReport rep = toeplitz_lattice_report("thm54", lq, p);
            attach_toeplitz_cross_check(rep, mu, space, 0, p, toeplitz_Ns);
            out.push_back({"thm54 tau(z) p=" + detail::fmt(p), std::move(rep)});
        }
    }
    return out;
}

inline std::vector<SuiteRow> agreement_rows(const std::vector<AgreementCase>& cases)
{
    std::vector<SuiteRow> rows;
    int i = 0;
    for (const auto& c : cases) {
        SuiteRow row;
        row.suite = "agreement";
        row.id = std::to_string(++i);
        row.name = c.name;
        const auto& cc = c.report.cross_check;
        row.passed = cc && cc->agrees;
        row.detail = "criterion " + to_string(c.report.verdict) + ", surrogate " +
                     (cc ? to_string(cc->implied) + " (" + to_string(cc->growth) + ")" : std::string("missing"));
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<SuiteRow> agreement_suite()
{
    const auto t0 = std::chrono::steady_clock::now();
    auto rows = agreement_rows(agreement_cases());
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : rows)
        r.seconds = total / static_cast<double>(rows.size());
    return rows;
}

// ---------------------------------------------------------------------------
// acceptance criteria

inline SuiteRow acceptance_littlewood_paley()
{
    return detail::timed_row("acceptance", "1", "Littlewood-Paley exactness", [](SuiteRow& row) {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> deg(1, 12);
        // one instance per weight so star values are shared across polynomials
        const std::vector<Weight> weights{Weight::standard_alpha(0.0), Weight::standard_alpha(1.0),
                                          Weight::standard_alpha(3.0)};
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        int count = 0;
        for (int i = 0; i < 25; ++i) {
            const AnalyticFn f = detail::random_polynomial(deg(rng), rng);
            for (const Weight& w : weights) {
                const double lp = littlewood_paley_p2(f, w);
                const double nr = bergman_norm(f, w, 2.0).value;
                worst = std::max(worst, std::abs(lp - nr * nr) / (nr * nr));
                ++count;
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.passed = worst <= 1e-8 && secs < 10.0;
        row.detail = std::to_string(count) + " pairs, max relative gap " + detail::fmt(worst) + " (limit 1e-8), " +
                     detail::fmt(secs) + " s (limit 10 s)";
    });
}

inline SuiteRow acceptance_volterra_spectrum()
{
    return detail::timed_row("acceptance", "2", "Volterra closed-form spectrum", [](SuiteRow& row) {
        const auto t0 = std::chrono::steady_clock::now();
        const Space space = Space::bergman(Weight::standard_alpha(0.0));
        const AnalyticFn z = detail::z_power(1);
        const auto sv = singular_values(assemble_volterra(z, space, 1, 0, 512));
        double err = 0.0;
        for (int j = 0; j <= 512; ++j)
            err = std::max(err, std::abs(sv[j] - 1.0 / std::sqrt((j + 1.0) * (j + 2.0))));
        const double s2 = schatten_from_values(sv, 2.0);
        const double s2_err = std::abs(s2 - std::sqrt(1.0 - 1.0 / 514.0));
        std::vector<double> logs, sums;
        for (const int N : {128, 256, 512}) {
            logs.push_back(std::log(static_cast<double>(N)));
            sums.push_back(schatten_norm(assemble_volterra(z, space, 1, 0, N), 1.0));
        }
        const double slope = fit_line(logs, sums).second;
        const double slope_err = std::abs(slope - 0.5) / 0.5;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool spectrum_ok = err <= 1e-10, s2_ok = s2_err <= 1e-9, slope_ok = slope_err <= 0.05;
        const bool time_ok = secs < 60.0;
        row.passed = spectrum_ok && s2_ok && slope_ok && time_ok;
        row.known_unattainable = !slope_ok && spectrum_ok && s2_ok && time_ok;
        row.detail = "max sv error " + detail::fmt(err) + (spectrum_ok ? " ok" : " FAIL") + "; S2 error " +
                     detail::fmt(s2_err) + (s2_ok ? " ok" : " FAIL") + "; S1 slope vs log N " + detail::fmt(slope) +
                     " (target 0.5, error " + detail::fmt(100.0 * slope_err) + "%)" + (slope_ok ? " ok" : " FAIL") + "; " +
                     detail::fmt(secs) + " s (limit 60 s)";
    });
}

inline SuiteRow acceptance_adjoint_identity()
{
    return detail::timed_row("acceptance", "3", "Adjoint/Toeplitz identity", [](SuiteRow& row) {
        const Space space = Space::bergman(Weight::standard_alpha(0.0));
        double worst = 0.0;
        for (const int j : {1, 2}) {
            const AnalyticFn g = detail::z_power(j);
            const OperatorMatrix G = gram(assemble_volterra(g, space, 1, 0, 64));
            const OperatorMatrix T = assemble_toeplitz(MeasureSpec::star_density(g, 1, 0), space, 0, 64);
            for (int a = 0; a <= 64; ++a)
                for (int b = 0; b <= 64; ++b)
                    worst = std::max(worst, std::abs(G(a, b) - T(a, b)));
        }
        row.passed = worst <= 1e-9;
        row.detail = "g=z and g=z^2 at N=64, max entry difference " + detail::fmt(worst);
    });
}

inline SuiteRow acceptance_kernel_transform()
{
    return detail::timed_row("acceptance", "4", "Kernel-moment transform", [](SuiteRow& row) {
        double worst = 0.0;
        bool regular = true;
        std::string ranges;
        for (const double alpha : {0.0, 1.0}) {
            const Weight w = Weight::standard_alpha(alpha);
            for (const int k : {1, 2}) {
                const Weight v = upsilon_transform(w, k);
                for (int m = 0; m <= 50; ++m) {
                    // coefficient match of the kernel expansions
                    const double lhs = v.moment(2 * m + 1) * falling_factorial(m + k, k);
                    const double rhs = w.moment(2 * m + 2 * k + 1);
                    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
                }
                const RegularityVerdict reg = regular_ratio_check(v, 0.5, 0.999);
                regular = regular && reg.bounded;
                ranges += " [" + detail::fmt(reg.min_ratio) + "," + detail::fmt(reg.max_ratio) + "]";
            }
        }
        row.passed = worst <= 1e-9 && regular;
        row.detail = "max relative moment error " + detail::fmt(worst) + "; regular ratio ranges" + ranges;
    });
}

/// Schatten threshold agreement on A^2 and H^2.
inline SuiteRow acceptance_schatten_threshold()
{
    return detail::timed_row("acceptance", "5", "Schatten threshold agreement", [](SuiteRow& row) {
        std::ostringstream d;
        bool ok = true;
        {
            const Weight w0 = Weight::standard_alpha(0.0);
            const MeasureSpec mu = detail::star_of_z();
            const Space space = Space::bergman(w0);
            const LatticeQuotients lq = lattice_quotients(mu, space, 0, make_lattice(1.0, 1e-8));
            const CriterionReport lo = toeplitz_lattice_report("thm42", lq, 0.4);
            const CriterionReport hi = toeplitz_lattice_report("thm42", lq, 0.6);
            // spectral side: singular values of the Toeplitz operator are those of
            // the Volterra operator squared; p-series threshold 1/2
            const auto sv = singular_values(assemble_volterra(detail::z_power(1), space, 1, 0, 512));
            std::vector<double> sq;
            for (double s : sv)
                sq.push_back(s * s);
            const double d_t = singular_value_decay(sq);
            const bool lattice_ok = lo.verdict == Verdict::fails && hi.verdict == Verdict::holds;
            const bool spectral_ok = 0.4 * d_t < 1.0 && 0.6 * d_t > 1.0;
            ok = ok && lattice_ok && spectral_ok;
            d << "bergman lattice p=0.4 " << to_string(lo.verdict) << " p=0.6 " << to_string(hi.verdict)
              << ", Toeplitz decay " << detail::fmt(d_t) << " -> threshold " << detail::fmt(1.0 / d_t);
        }
        {
            const AnalyticFn z = detail::z_power(1);
            const CriterionReport b09 = cor52_hardy_schatten(z, 0.9, 1, 0);
            const CriterionReport b11 = cor52_hardy_schatten(z, 1.1, 1, 0);
            const auto sv = singular_values(assemble_hardy_volterra(z, 1, 0, 512));
            double err = 0.0;
            for (int j = 0; j <= 512; ++j)
                err = std::max(err, std::abs(sv[j] - 1.0 / (j + 1.0)));
            const double d_v = singular_value_decay(sv);
            // T*T is the tau-density Toeplitz operator: lattice sums at p/2
            const LatticeQuotients lq =
                lattice_quotients(detail::tau_of_z(), Space::hardy(), 0, make_lattice(1.0, 1e-8));
            const CriterionReport l09 = toeplitz_lattice_report("thm54", lq, 0.45);
            const CriterionReport l11 = toeplitz_lattice_report("thm54", lq, 0.55);
            const bool besov_ok = b09.verdict == Verdict::fails && b11.verdict == Verdict::holds;
            const bool lattice_ok = l09.verdict == Verdict::fails && l11.verdict == Verdict::holds;
            const bool spectral_ok = err < 1e-10 && 0.9 * d_v < 1.0 && 1.1 * d_v > 1.0;
            ok = ok && besov_ok && lattice_ok && spectral_ok;
            d << "; hardy Besov p=0.9 " << to_string(b09.verdict) << " p=1.1 " << to_string(b11.verdict)
              << ", tau lattice p/2 " << to_string(l09.verdict) << "/" << to_string(l11.verdict)
              << ", 1/(j+1) error " << detail::fmt(err) << ", decay " << detail::fmt(d_v);
        }
        row.passed = ok;
        row.detail = d.str();
    });
}

inline SuiteRow acceptance_downward_threshold()
{
    return detail::timed_row("acceptance", "6", "Boundedness threshold (q < p)", [](SuiteRow& row) {
        const Weight w0 = Weight::standard_alpha(0.0);
        Thm33Options opt;
        opt.cross.enabled = true;
        std::ostringstream d;
        bool ok = true;
        for (const double s : {0.25, 0.75}) {
            AnalyticFn g = symbol_power(s);
            g.set_label("pow:s=" + detail::fmt(s));
            const CriterionReport rep = thm33_downward(g, w0, 4.0, 2.0, 1, 0, opt);
            const bool expect = s < 0.5;
            const Verdict want = expect ? Verdict::holds : Verdict::fails;
            const GrowthVerdict want_scan = expect ? GrowthVerdict::saturating : GrowthVerdict::growing;
            ok = ok && rep.verdict == want && rep.cross_check && rep.cross_check->growth == want_scan;
            d << (s == 0.25 ? "" : "; ") << "s=" << s << " membership " << to_string(rep.verdict) << ", probe scan "
              << (rep.cross_check ? to_string(rep.cross_check->growth) : std::string("missing"));
        }
        row.passed = ok;
        row.detail = d.str();
    });
}

inline SuiteRow acceptance_geometry()
{
    return detail::timed_row("acceptance", "7", "Geometry invariants", [](SuiteRow& row) {
        std::ostringstream d;
        bool ok = true;
        for (const double r : {0.5, 1.0, 2.0}) {
            const LatticeCheck c = check_lattice(make_lattice(r));
            ok = ok && c.separated && c.covering;
            d << "r=" << r << " sep " << detail::fmt(c.min_separation) << " cover " << detail::fmt(c.max_cover_distance)
              << "; ";
        }
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        long long in_tent = 0, violations = 0;
        const long long pairs = 500000;
        for (long long i = 0; i < pairs; ++i) {
            const double mu = std::sqrt(U(rng)) * 0.999 + 1e-6;
            const double au = 2.0 * pi * U(rng);
            const double mz = mu + (1.0 - mu) * U(rng);
            const double half = 0.5 * (1.0 - mu / mz);
            const double az = au + 1.2 * half * (2.0 * U(rng) - 1.0);
            if (!(mz < 1.0) || !(mz > 0.0))
                continue;
            const DiskPoint u(std::polar(mu, au)), z(std::polar(mz, az));
            if (region_contains(Tent{u}, z)) {
                ++in_tent;
                if (!region_contains(CarlesonSquare{u}, z))
                    ++violations;
            }
        }
        ok = ok && violations == 0 && in_tent > 0;
        d << pairs << " pairs, " << in_tent << " in the tent, " << violations << " outside the square";
        row.passed = ok;
        row.detail = d.str();
    });
}

inline SuiteRow acceptance_doubling()
{
    return detail::timed_row("acceptance", "8", "Doubling diagnostic", [](SuiteRow& row) {
        std::ostringstream d;
        bool ok = true;
        for (const double alpha : {0.0, 1.0, 2.0}) {
            const DoublingProfile p = doubling_profile(Weight::standard_alpha(alpha), 12);
            const double target = std::pow(2.0, alpha + 1.0);
            const double last = p.ratios.back();
            ok = ok && std::abs(last - target) <= 0.01 * target && p.doubling_like;
            d << "alpha=" << alpha << " ratio " << detail::fmt(last) << "; ";
        }
        const DoublingProfile e = doubling_profile(Weight::exponential(1.0), 12);
        ok = ok && !e.doubling_like;
        d << "exp(c=1) " << (e.doubling_like ? "doubling" : "non-doubling") << (e.truncated ? " (truncated)" : "");
        row.passed = ok;
        row.detail = d.str();
    });
}

inline SuiteRow acceptance_reproducing()
{
    return detail::timed_row("acceptance", "9", "Reproducing property", [](SuiteRow& row) {
        std::mt19937_64 rng(13);
        const std::vector<Complex> points{{0.3, 0.4}, {-0.7, 0.1}, {0.0, -0.9}};
        double worst_b = 0.0, worst_h = 0.0;
        for (const int deg : {5, 32, 64}) {
            const AnalyticFn f = detail::random_polynomial(deg, rng);
            double scale = 0.0;
            for (int j = 0; j <= deg; ++j)
                scale = std::max(scale, std::abs(f.coeff(j)));
            for (const Complex z : points) {
                const Complex fz = f.evaluate_series(z);
                for (const double alpha : {0.0, 1.0}) {
                    const Complex v = reproduce_bergman(f, Weight::standard_alpha(alpha), 64, z);
                    worst_b = std::max(worst_b, std::abs(v - fz) / scale);
                }
                worst_h = std::max(worst_h, std::abs(reproduce_hardy(f, 64, z) - fz) / scale);
            }
        }
        row.passed = worst_b <= 1e-10 && worst_h <= 1e-10;
        row.detail = "N=64: Bergman max error " + detail::fmt(worst_b) + ", Hardy max error " + detail::fmt(worst_h) +
                     " (relative to the largest coefficient)";
    });
}

inline SuiteRow acceptance_agreement(std::vector<SuiteRow>* rows_out = nullptr)
{
    return detail::timed_row("acceptance", "10", "Agreement suite", [&](SuiteRow& row) {
        const auto rows = agreement_suite();
        int agree = 0;
        std::string bad;
        for (const auto& r : rows) {
            agree += r.passed;
            if (!r.passed)
                bad += " [" + r.name + ": " + r.detail + "]";
        }
        if (rows_out)
            *rows_out = rows;
        row.passed = agree == static_cast<int>(rows.size()) && rows.size() >= 12;
        row.detail = std::to_string(agree) + "/" + std::to_string(rows.size()) + " pairs agree" + bad;
    });
}

inline std::vector<SuiteRow> acceptance_suite()
{
    std::vector<SuiteRow> rows;
    rows.push_back(acceptance_littlewood_paley());
    rows.push_back(acceptance_volterra_spectrum());
    rows.push_back(acceptance_adjoint_identity());
    rows.push_back(acceptance_kernel_transform());
    rows.push_back(acceptance_schatten_threshold());
    rows.push_back(acceptance_downward_threshold());
    rows.push_back(acceptance_geometry());
    rows.push_back(acceptance_doubling());
    rows.push_back(acceptance_reproducing());
    rows.push_back(acceptance_agreement());
    rows.back().passed = rows.back().passed && rows.back().seconds < 900.0;
    return rows;
}

// ---------------------------------------------------------------------------
// regression bands

struct Band {
    std::string name;
    double lo, hi;
    std::function<double()> value;
};

/// Bands measured on a verified build and frozen.
inline std::vector<Band> regression_bands()
{
    const Weight w0 = Weight::standard_alpha(0.0);
    return {
        {"star_n alpha=0 n=2 r=0.9", 4.3469e-6, 4.3470e-6, [w0] { return star_n(w0, 2, 0.9); }},
        {"star_n alpha=0 n=2 ratio to (1-r)^3 hat(r) at r=1-2^-12", 0.0415, 0.0418,
         [w0] {
             const double u = std::ldexp(1.0, -12);
             return star_n(w0, 2, 1.0 - u) / (u * u * u * w0.hat_gap(u));
         }},
        {"bloch seminorm of log", 1.999, 2.0001, [] { return bloch_seminorm(symbol_log(), 1).value; }},
        {"bloch seminorm of z^2", 0.7697, 0.7699,
         [] { return bloch_seminorm(AnalyticFn::monomial(2), 1).value; }},
        {"log-doubling beta=2 ratio at depth 12", 1.0, 4.0,
         [] { return doubling_profile(Weight::log_doubling(2.0), 12).ratios.back(); }},
        {"C1(star) quotient of log at 1-2^-8", 0.05, 50.0,
         [w0] { return c1_star_quotient(symbol_log(), w0, Complex(1.0 - std::ldexp(1.0, -8), 0.0)); }},
        {"volterra T_log^{2,1} operator norm N=256", 0.485, 0.50,
         [w0] { return operator_norm(assemble_volterra(symbol_log(), Space::bergman(w0), 2, 1, 256)); }},
        {"gk_norm^p / hardy_norm^p farthest from 1 over random polynomials", 0.05, 20.0,
         [] {
             std::mt19937_64 rng(17);
             double worst = 1.0;
             for (int i = 0; i < 20; ++i) {
                 for (const int k : {1, 2}) {
                     AnalyticFn f = detail::random_polynomial(6, rng);
                     std::vector<Complex> c = f.coeffs();
                     for (int j = 0; j < k; ++j)
                         c[j] = 0.0;
                     f = AnalyticFn::polynomial(c);
                     for (const double p : {1.0, 2.0, 4.0}) {
                         const double ratio = std::pow(gk_norm(f, p, k, 1024) / hardy_norm(f, p).value, p);
                         worst = std::abs(std::log(ratio)) > std::abs(std::log(worst)) ? ratio : worst;
                     }
                 }
             }
             return worst;
         }},
        {"hardy norm of pow s=0.4", 1.40, 1.50, [] { return hardy_norm(symbol_power(0.4), 2.0).value; }},
    };
}

inline std::vector<SuiteRow> regression_suite()
{
    std::vector<SuiteRow> rows;
    int i = 0;
    for (const auto& b : regression_bands()) {
        rows.push_back(detail::timed_row("regression", std::to_string(++i), b.name, [&](SuiteRow& row) {
            const double v = b.value();
            row.passed = v >= b.lo && v <= b.hi;
            row.detail = "value " + detail::fmt(v) + " band [" + detail::fmt(b.lo) + ", " + detail::fmt(b.hi) + "]";
        }));
    }
    return rows;
}

} // namespace bergman_lab
