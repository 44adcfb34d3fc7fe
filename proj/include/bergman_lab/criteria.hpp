#pragma once
//
// Evaluators for the boundedness, compactness and Schatten characterizations
// of T_g^{n,k} and of the generalized Toeplitz operators, each paired with a
// spectral or probe-based surrogate.
//

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"
#include "growth.hpp"
#include "measures.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman_lab {

enum class Verdict { holds, fails, inconclusive };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

inline Verdict verdict_from_growth(GrowthVerdict g)
{
    switch (g) {
    case GrowthVerdict::saturating: return Verdict::holds;
    case GrowthVerdict::growing: return Verdict::fails;
    case GrowthVerdict::inconclusive: return Verdict::inconclusive;
    }
    return Verdict::inconclusive;
}

struct CrossCheck {
    std::string method;
    std::vector<double> params;    ///< N or probe scan parameter
    std::vector<double> values;
    GrowthVerdict growth = GrowthVerdict::inconclusive;
    std::vector<std::pair<std::string, double>> fit;
    Verdict implied = Verdict::inconclusive;
    bool agrees = false;
    bool suppressed = false;
};

struct CriterionReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> params;
    std::string profile_axis = "gap";
    std::vector<std::pair<double, double>> profile;
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::pair<std::string, Verdict>> parts;
    std::vector<std::pair<std::string, double>> evidence;
    std::vector<std::string> notes;
    std::optional<CrossCheck> cross_check;

    void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void param(const std::string& key, double value) { params.emplace_back(key, format_number(value)); }
    void fact(const std::string& key, double value) { evidence.emplace_back(key, value); }

    std::optional<Verdict> part(const std::string& name) const
    {
        for (const auto& [k, v] : parts)
            if (k == name)
                return v;
        return std::nullopt;
    }

    void attach(CrossCheck cc)
    {
        cc.agrees = cc.implied != Verdict::inconclusive && cc.implied == verdict && !cc.suppressed;
        cross_check = std::move(cc);
    }

    static std::string format_number(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

struct CrossCheckOptions {
    bool enabled = false;
    std::vector<int> Ns{128, 256, 512};
    ProbeOptions probes;
};

namespace detail {

inline CrossCheck cross_from_scan(const GrowthScan& scan, const std::string& method)
{
    CrossCheck cc;
    cc.method = method + "; " + scan.rule;
    cc.params.assign(scan.Ns.begin(), scan.Ns.end());
    cc.values = scan.values;
    cc.growth = scan.verdict;
    cc.implied = verdict_from_growth(scan.verdict);
    cc.suppressed = scan.suppressed;
    cc.fit = {{"last_ratio", scan.last_ratio}, {"growth_exponent", scan.growth_exponent}};
    if (!std::isnan(scan.decay_exponent))
        cc.fit.emplace_back("decay_exponent", scan.decay_exponent);
    return cc;
}

inline CrossCheck cross_from_probes(const ProbeScan& scan)
{
    CrossCheck cc;
    cc.method = "probe ratio sup ||Tf||_q / ||f||_p over carleson and random polynomial probes (" + scan.route + ")";
    for (double a : scan.apexes)
        cc.params.push_back(1.0 / (1.0 - a));
    cc.values = scan.running_sup;
    cc.growth = scan.growth.verdict;
    cc.implied = verdict_from_growth(scan.growth.verdict);
    cc.fit = {{"last_ratio", scan.growth.last_ratio}, {"growth_exponent", scan.growth.fit.exponent}};
    return cc;
}

inline AnalyticFn symbol_derivative(const AnalyticFn& g, int m)
{
    if (g.is_polynomial() && m > g.truncation())
        return AnalyticFn::polynomial({0.0});
    return derivative(g, m);
}

inline void volterra_params(CriterionReport& rep, const AnalyticFn& g, const std::string& space, int n, int k)
{
    rep.param("symbol", g.label());
    rep.param("space", space);
    rep.param("n", static_cast<double>(n));
    rep.param("k", static_cast<double>(k));
}

} // namespace detail

// ---------------------------------------------------------------------------
// upward boundedness, p < q

enum class Thm31Denominator { gap_hat, star };

struct Thm31Options {
    int depth = 20;                          ///< dyadic radii 1 - 2^-m, m = 1..depth
    Thm31Denominator denominator = Thm31Denominator::gap_hat;
    CrossCheckOptions cross;
};

/// sup_a (1-|a|)^{n-k} |g^{(n-k)}(a)| / D(a)^{1/p-1/q} with D(a) = (1-|a|) w^(a)
/// (or w*(a)); bounded iff the profile stays bounded, compact iff it vanishes.
inline CriterionReport thm31_boundedness(const AnalyticFn& g, const Weight& w, double p, double q, int n, int k,
                                         const Thm31Options& opt = {})
{
    if (!(p > 0.0 && p < q))
        fail(ErrorKind::parameter, "thm31 requires 0 < p < q");
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, "thm31 requires 0 <= k < n");
    CriterionReport rep;
    rep.id = "thm31";
    detail::volterra_params(rep, g, "bergman(" + w.spec() + ")", n, k);
    rep.param("p", p);
    rep.param("q", q);
    rep.param("denominator", opt.denominator == Thm31Denominator::gap_hat ? "(1-|a|)hat(a)" : "star(a)");
    const int m = n - k;
    const AnalyticFn h = detail::symbol_derivative(g, m);
    const double e = 1.0 / p - 1.0 / q;
    const double sing = h.singular_direction();
    std::vector<double> gaps, values;
    int depth_used = 0;
    for (int d = 1; d <= opt.depth; ++d) {
        const double gap = std::ldexp(1.0, -d);
        if (!h.is_polynomial() && !h.closed_form() && !h.reliable_at(1.0 - gap)) {
            rep.notes.push_back("profile stops where the symbol truncation is unreliable");
            break;
        }
        const double den = opt.denominator == Thm31Denominator::gap_hat ? gap * w.hat_gap(gap) : w.star(1.0 - gap);
        const int count = 1 << ((d + 1) / 2 + 4);
        double best = std::abs(h.at_gap(gap, sing));
        for (int i = 0; i < count; ++i)
            best = std::max(best, std::abs(h.at_gap(gap, 2.0 * pi * i / count)));
        const double v = std::pow(gap, m) * best / std::pow(den, e);
        gaps.push_back(gap);
        values.push_back(v);
        rep.profile.emplace_back(gap, v);
        depth_used = d;
    }
    const ProfileFit fit = classify_profile(gaps, values);
    rep.fact("fit_exponent", fit.fit.exponent);
    rep.fact("fit_log_constant", fit.fit.log_constant);
    rep.fact("profile_sup", fit.sup);
    rep.fact("depth", depth_used);
    const Verdict bounded = fit.verdict == ProfileVerdict::unbounded ? Verdict::fails : Verdict::holds;
    const Verdict compact = fit.verdict == ProfileVerdict::vanishing ? Verdict::holds : Verdict::fails;
    rep.parts = {{"bounded", bounded}, {"compact", compact}};
    rep.verdict = bounded;
    rep.notes.push_back("profile verdict " + to_string(fit.verdict) + " from the last 5 radii");
    if (opt.cross.enabled) {
        const ProbeScan scan = probe_ratio_scan(g, w, p, q, n, k, opt.cross.probes);
        rep.attach(detail::cross_from_probes(scan));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// fixed exponent, p = q

struct Thm32Options {
    int bloch_depth = 20;
    int c1_depth = 10;
    CrossCheckOptions cross;
};

/// k >= 1: g in B (B_0) through sup (1-|z|^2)^{n-k} |g^{(n-k)}|;
/// k = 0: g in C^1(w*) (C^1_0(w*)) through the Carleson-square quotient.
inline CriterionReport thm32_fixed_p(const AnalyticFn& g, const Weight& w, double p, int n, int k,
                                     const Thm32Options& opt = {})
{
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, "thm32 requires 0 <= k < n");
    if (!(p > 0.0))
        fail(ErrorKind::parameter, "thm32 requires p > 0");
    CriterionReport rep;
    rep.id = "thm32";
    detail::volterra_params(rep, g, "bergman(" + w.spec() + ")", n, k);
    rep.param("p", p);
    ProfileFit fit;
    if (k >= 1) {
        rep.param("functional", "bloch order " + std::to_string(n - k));
        const SupResult s = bloch_seminorm(g, n - k, opt.bloch_depth);
        for (std::size_t i = 0; i < s.gaps.size(); ++i)
            rep.profile.emplace_back(s.gaps[i], s.profile[i]);
        fit = s.fit;
        rep.fact("seminorm", s.value);
        if (s.lower_bound_only)
            rep.notes.push_back("seminorm is a lower bound: symbol truncation unreliable at the deepest radius");
    } else {
        rep.param("functional", "C1(star) Carleson-square quotient");
        // worst direction: the symbol's singular direction, plus the opposite ray
        const AnalyticFn dg = detail::symbol_derivative(g, 1);
        const double sing = dg.singular_direction();
        std::vector<Complex> apexes;
        for (const double th : {sing, sing + pi})
            for (const Complex a : dyadic_apexes(opt.c1_depth, th))
                apexes.push_back(a);
        std::vector<double> q(apexes.size());
        parallel_for(static_cast<int>(apexes.size()), [&](int i) { q[i] = c1_star_quotient(g, w, apexes[i]); });
        const int half = opt.c1_depth;
        std::vector<double> gaps, values;
        double sup = 0.0;
        for (int i = 0; i < half; ++i) {
            const double v = std::max(q[i], q[i + half]);
            const double gap = 1.0 - std::abs(apexes[i]);
            gaps.push_back(gap);
            values.push_back(v);
            rep.profile.emplace_back(gap, v);
            sup = std::max(sup, v);
        }
        fit = classify_profile(gaps, values);
        rep.fact("sup", sup);
    }
    rep.fact("fit_exponent", fit.fit.exponent);
    const Verdict bounded = fit.verdict == ProfileVerdict::unbounded ? Verdict::fails : Verdict::holds;
    const Verdict compact = fit.verdict == ProfileVerdict::vanishing ? Verdict::holds : Verdict::fails;
    rep.parts = {{"bounded", bounded}, {"compact", compact}};
    rep.verdict = bounded;
    rep.notes.push_back("the characterization does not depend on p");
    if (opt.cross.enabled) {
        const Space space = Space::bergman(w);
        const GrowthScan scan =
            growth_scan([&](int N) { return assemble_volterra(g, space, n, k, N); }, opt.cross.Ns, Statistic::norm());
        rep.attach(detail::cross_from_scan(scan, "operator norm of the A^2 truncations"));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// downward boundedness, q < p

struct Thm33Options {
    CrossCheckOptions cross;
};

/// Membership of g in A^{pq/(p-q)}_w: sufficient for compactness, necessary
/// for boundedness when q >= 2 and k = 0.
inline CriterionReport thm33_downward(const AnalyticFn& g, const Weight& w, double p, double q, int n, int k,
                                      const Thm33Options& opt = {})
{
    if (!(q > 0.0 && q < p))
        fail(ErrorKind::parameter, "thm33 requires 0 < q < p");
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, "thm33 requires 0 <= k < n");
    CriterionReport rep;
    rep.id = "thm33";
    detail::volterra_params(rep, g, "bergman(" + w.spec() + ")", n, k);
    rep.param("p", p);
    rep.param("q", q);
    const double s = p * q / (p - q);
    rep.param("membership_exponent", s);
    const bool necessity = q >= 2.0 && k == 0;
    rep.param("certified", necessity ? "sufficiency and necessity" : "sufficiency only");
    const NormResult nr = bergman_norm(g, w, s);
    const auto& layers = nr.integral.layers;
    double gap = 0.5;
    for (double v : layers) {
        rep.profile.emplace_back(gap, v);
        gap *= 0.5;
    }
    rep.profile_axis = "layer gap (layer contribution)";
    rep.fact("norm", nr.value);
    rep.verdict = nr.divergent ? Verdict::fails : Verdict::holds;
    rep.parts = {{"membership", rep.verdict},
                 {"compact", nr.divergent ? Verdict::inconclusive : Verdict::holds},
                 {"bounded", nr.divergent ? (necessity ? Verdict::fails : Verdict::inconclusive) : Verdict::holds}};
    if (nr.accuracy_warning)
        rep.notes.push_back("radial orders disagree beyond 1e-8");
    if (opt.cross.enabled) {
        const ProbeScan scan = probe_ratio_scan(g, w, p, q, n, k, opt.cross.probes);
        rep.attach(detail::cross_from_probes(scan));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// generalized Toeplitz operators

struct ToeplitzOptions {
    int angular_samples = 64;   ///< per ring for non-radial densities
    double ball_rtol = 1e-7;
    CrossCheckOptions cross{false, {64, 128, 256}, {}};
};

namespace detail {

/// Indices of ring points whose pseudo-hyperbolic ball of radius R can
/// contain `c` (Euclidean disc description of the ball).
inline std::vector<long long> ring_points_near(const LatticeRing& ring, Complex c, double R)
{
    std::vector<long long> out;
    const double rho = std::tanh(R);
    const double mc2 = std::norm(c);
    const double den = 1.0 - rho * rho * mc2;
    const Complex center = c * (1.0 - rho * rho) / den;
    const double radius = rho * (1.0 - mc2) / den;
    const double mcen = std::abs(center);
    if (std::abs(ring.modulus - mcen) > radius)
        return out;
    if (ring.count <= 4096 || mcen <= radius) {
        for (long long i = 0; i < ring.count; ++i)
            if (bergman_distance(ring.point(i), c) < R)
                out.push_back(i);
        return out;
    }
    const double half = std::asin(std::min(1.0, radius / mcen));
    const double spacing = 2.0 * pi / static_cast<double>(ring.count);
    const double rel = std::arg(center) - ring.phase;
    const long long lo = static_cast<long long>(std::floor((rel - half) / spacing)) - 1;
    const long long hi = static_cast<long long>(std::ceil((rel + half) / spacing)) + 1;
    for (long long i = lo; i <= hi; ++i) {
        const long long idx = ((i % ring.count) + ring.count) % ring.count;
        if (bergman_distance(ring.point(idx), c) < R)
            out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// Ball-mass quotients mu(D(a, R)) / ((1-|a|)^{2k+1} hat(a)) on the lattice
/// points, for R = r (sup profile) and R = 5r (lattice sums); hat = w^ on
/// A^2_w and hat = 1 on H^2. Reusable across Schatten exponents.
struct LatticeQuotients {
    std::string measure, space;
    int k = 0;
    double r = 0.0, cutoff = 0.0;
    std::vector<double> gaps;
    std::vector<long long> counts;
    std::vector<double> sup_r;                  ///< max over the sampled ring points
    std::vector<std::vector<double>> q5;        ///< 5r quotients at the sampled ring points
    std::vector<double> multiplicity;           ///< lattice points represented by each sample
    bool sampled = false;                       ///< non-radial density sampled in angle
    int angular_samples = 0;
    std::vector<int> failed_rings;
};

inline LatticeQuotients lattice_quotients(const MeasureSpec& mu, const Space& space, int k, const Lattice& lat,
                                          const ToeplitzOptions& opt = {})
{
    if (k < 0)
        fail(ErrorKind::parameter, "Toeplitz criteria require k >= 0");
    if (space.is_hardy() && mu.weight_dependent())
        fail(ErrorKind::parameter, "measure " + mu.label() + " needs a Bergman weight");
    LatticeQuotients out;
    out.measure = mu.label();
    out.space = space.tag();
    out.k = k;
    out.r = lat.r();
    out.cutoff = lat.cutoff();
    const Weight w = space.is_hardy() ? Weight::standard_alpha(0.0) : space.weight();
    const BallMass ball(mu, w);
    const double r = lat.r(), R = 5.0 * r;
    auto denominator = [&](double gap) {
        return std::pow(gap, 2 * k + 1) * (space.is_hardy() ? 1.0 : w.hat_gap(gap));
    };
    const auto& rings = lat.rings();
    const int nr = static_cast<int>(rings.size());
    out.gaps.resize(nr);
    out.counts.resize(nr);
    out.sup_r.assign(nr, 0.0);
    out.q5.assign(nr, {});
    out.multiplicity.assign(nr, 1.0);
    std::vector<int> failed(nr, 0);
    const bool atoms = mu.kind() == MeasureKind::atoms;
    const bool radial = mu.is_radial();
    out.sampled = !atoms && !radial;
    out.angular_samples = out.sampled ? opt.angular_samples : 0;
    const double sing = mu.analytic_factor().singular_direction();
    parallel_for(nr, [&](int m) {
        const LatticeRing& ring = rings[m];
        out.gaps[m] = ring.gap;
        out.counts[m] = ring.count;
        const double den = denominator(ring.gap);
        if (atoms) {
            // only lattice points near an atom carry mass
            std::vector<long long> idx;
            for (const auto& a : mu.atom_list()) {
                const auto near = detail::ring_points_near(ring, a.z, R);
                idx.insert(idx.end(), near.begin(), near.end());
            }
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            for (long long i : idx) {
                const Complex z = ring.point(i);
                out.sup_r[m] = std::max(out.sup_r[m], ball(z, r) / den);
                out.q5[m].push_back(ball(z, R) / den);
            }
            return;
        }
        std::vector<Complex> pts;
        if (radial || ring.count == 1) {
            pts.push_back(ring.point(0));
        } else {
            const long long K = std::min<long long>(ring.count, opt.angular_samples);
            for (long long s = 0; s < K; ++s)
                pts.push_back(ring.point(s * ring.count / K));
        }
        out.multiplicity[m] = static_cast<double>(ring.count) / static_cast<double>(pts.size());
        double sup = 0.0;
        for (const Complex z : pts) {
            sup = std::max(sup, ball(z, r, opt.ball_rtol) / den);
            out.q5[m].push_back(ball(z, R, opt.ball_rtol) / den);
        }
        if (out.sampled && ring.count > 1) {
            // nearest ring point to the singular direction of the density
            const double spacing = 2.0 * pi / static_cast<double>(ring.count);
            const long long i = static_cast<long long>(std::llround((sing - ring.phase) / spacing));
            const long long idx = ((i % ring.count) + ring.count) % ring.count;
            sup = std::max(sup, ball(ring.point(idx), r, opt.ball_rtol) / den);
        }
        out.sup_r[m] = sup;
        bool finite = std::isfinite(sup);
        for (double q : out.q5[m])
            finite = finite && std::isfinite(q);
        failed[m] = finite ? 0 : 1;
    });
    for (int m = 0; m < nr; ++m)
        if (failed[m])
            out.failed_rings.push_back(m);
    return out;
}

/// Lattice sum terms sum_{a_j in ring} quotient(a_j)^p, one per ring.
inline std::vector<double> lattice_ring_terms(const LatticeQuotients& lq, double p)
{
    std::vector<double> terms(lq.gaps.size(), 0.0);
    for (std::size_t m = 0; m < terms.size(); ++m) {
        double s = 0.0;
        for (double q : lq.q5[m])
            if (q > 0.0)
                s += std::pow(q, p);
        terms[m] = s * lq.multiplicity[m];
    }
    return terms;
}

/// Shared evaluator for the Bergman and Hardy Toeplitz characterizations:
/// bounded / compact from the r-quotient profile over the rings, Schatten
/// membership from the geometric fit of the 5r lattice sum.
inline CriterionReport toeplitz_lattice_report(const std::string& id, const LatticeQuotients& lq,
                                               std::optional<double> p)
{
    if (p && !(*p > 0.0))
        fail(ErrorKind::parameter, id + " requires a positive Schatten exponent");
    CriterionReport rep;
    rep.id = id;
    rep.param("measure", lq.measure);
    rep.param("space", lq.space);
    rep.param("k", static_cast<double>(lq.k));
    rep.param("r", lq.r);
    rep.param("lattice_cutoff", lq.cutoff);
    if (p)
        rep.param("p", *p);
    rep.profile_axis = "ring gap";
    std::vector<double> gaps, values;
    for (std::size_t m = 1; m < lq.gaps.size(); ++m) {
        gaps.push_back(lq.gaps[m]);
        values.push_back(lq.sup_r[m]);
        rep.profile.emplace_back(lq.gaps[m], lq.sup_r[m]);
    }
    for (int m : lq.failed_rings)
        rep.notes.push_back("ball quadrature failed on ring " + std::to_string(m));
    const ProfileFit fit = classify_profile(gaps, values);
    rep.fact("profile_fit_exponent", fit.fit.exponent);
    rep.fact("profile_sup", std::max(fit.sup, lq.sup_r.empty() ? 0.0 : lq.sup_r[0]));
    const Verdict bounded = fit.verdict == ProfileVerdict::unbounded ? Verdict::fails : Verdict::holds;
    const Verdict compact = fit.verdict == ProfileVerdict::vanishing ? Verdict::holds : Verdict::fails;
    rep.parts = {{"bounded", bounded}, {"compact", compact}};
    rep.verdict = bounded;
    if (lq.sampled)
        rep.notes.push_back("non-radial density: " + std::to_string(lq.angular_samples) +
                            " angles per ring, ring sums by the angular mean");
    if (p) {
        const GeometricTail tail = geometric_tail(lattice_ring_terms(lq, *p));
        rep.fact("lattice_ratio", tail.ratio);
        rep.fact("lattice_partial_sum", tail.partial);
        rep.fact("lattice_sum", tail.extrapolated);
        rep.fact("rings", static_cast<double>(lq.gaps.size()));
        const Verdict schatten = tail.converges ? Verdict::holds : Verdict::fails;
        rep.parts.emplace_back("schatten", schatten);
        rep.verdict = schatten;
    }
    if (!lq.failed_rings.empty())
        rep.verdict = Verdict::inconclusive;
    return rep;
}

/// Cross-check of a Toeplitz report against the truncated matrices.
inline void attach_toeplitz_cross_check(CriterionReport& rep, const MeasureSpec& mu, const Space& space, int k,
                                        std::optional<double> p, const std::vector<int>& Ns)
{
    const Statistic stat = p ? Statistic::schatten(*p) : Statistic::norm();
    const GrowthScan scan = growth_scan([&](int N) { return assemble_toeplitz(mu, space, k, N); }, Ns, stat);
    rep.attach(detail::cross_from_scan(scan, stat.name() + " of the Toeplitz truncations"));
}

inline CriterionReport toeplitz_lattice_criterion(const std::string& id, const MeasureSpec& mu, const Space& space,
                                                  int k, std::optional<double> p, const Lattice& lat,
                                                  const ToeplitzOptions& opt = {})
{
    const LatticeQuotients lq = lattice_quotients(mu, space, k, lat, opt);
    CriterionReport rep = toeplitz_lattice_report(id, lq, p);
    if (opt.cross.enabled)
        attach_toeplitz_cross_check(rep, mu, space, k, p, opt.cross.Ns);
    return rep;
}

inline CriterionReport thm42_toeplitz(const MeasureSpec& mu, const Weight& w, int k, std::optional<double> p,
                                      const Lattice& lat, const ToeplitzOptions& opt = {})
{
    return toeplitz_lattice_criterion("thm42", mu, Space::bergman(w), k, p, lat, opt);
}

// ---------------------------------------------------------------------------
// Schatten classes of T_g^{n,k}

struct SchattenOptions {
    CrossCheckOptions cross;
};

/// T_g^{n,k} in S_p iff g in the Besov space B_{p,n-k}; shared by A^2_w and H^2.
inline CriterionReport schatten_volterra_criterion(const std::string& id, const AnalyticFn& g, const Space& space,
                                                   double p, int n, int k, const SchattenOptions& opt = {})
{
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, id + " requires 0 <= k < n");
    if (!(p > 0.0))
        fail(ErrorKind::parameter, id + " requires p > 0");
    CriterionReport rep;
    rep.id = id;
    detail::volterra_params(rep, g, space.tag(), n, k);
    rep.param("p", p);
    const BesovResult b = besov_seminorm(g, p, n - k);
    double gap = 0.5;
    for (double v : b.integral.layers) {
        rep.profile.emplace_back(gap, v);
        gap *= 0.5;
    }
    rep.profile_axis = "layer gap (layer contribution)";
    rep.fact("besov_seminorm", b.value);
    rep.verdict = b.infinite ? Verdict::fails : Verdict::holds;
    rep.parts = {{"schatten", rep.verdict}};
    if (b.degenerate_rule)
        rep.notes.push_back("m p <= 1: only polynomials of degree < m lie in the Besov space");
    if (opt.cross.enabled) {
        const GrowthScan scan = growth_scan([&](int N) { return assemble_volterra(g, space, n, k, N); },
                                            opt.cross.Ns, Statistic::schatten(p));
        rep.attach(detail::cross_from_scan(scan, "schatten(" + CriterionReport::format_number(p) +
                                                     ") of the Volterra truncations"));
    }
    return rep;
}

inline CriterionReport cor43_schatten_volterra(const AnalyticFn& g, const Weight& w, double p, int n, int k,
                                               const SchattenOptions& opt = {})
{
    return schatten_volterra_criterion("cor43", g, Space::bergman(w), p, n, k, opt);
}

} // namespace bergman_lab
