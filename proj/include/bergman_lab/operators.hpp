#pragma once
//
// Truncated matrices of T_g^{n,k} and of the generalized Toeplitz operators
// in the orthonormal monomial basis, with singular values, Schatten norms,
// truncation scans and matrix export.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"
#include "growth.hpp"
#include "measures.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "series.hpp"
#include "svd.hpp"
#include "weights.hpp"

namespace bergman_lab {

/// A^2_w (basis z^j / sqrt(2 w_{2j+1})) or H^2 (basis z^j).
class Space {
public:
    enum class Kind { bergman, hardy };

    static Space bergman(const Weight& w) { return Space(Kind::bergman, w); }
    static Space hardy() { return Space(Kind::hardy, std::nullopt); }

    Kind kind() const { return kind_; }
    bool is_hardy() const { return kind_ == Kind::hardy; }
    const Weight& weight() const
    {
        if (!weight_)
            fail(ErrorKind::parameter, "the Hardy space carries no weight");
        return *weight_;
    }

    /// ||z^j||^2.
    double monomial_norm2(int j) const { return kind_ == Kind::hardy ? 1.0 : weight_->monomial_norm2(j); }

    std::string tag() const { return kind_ == Kind::hardy ? "hardy" : "bergman(" + weight_->spec() + ")"; }

private:
    Space(Kind k, std::optional<Weight> w) : kind_(k), weight_(std::move(w)) {}
    Kind kind_;
    std::optional<Weight> weight_;
};

/// Matrix of an operator applied to polynomials of degree <= N (columns) in
/// the orthonormal basis. Volterra matrices keep the image rows beyond N that
/// the symbol's polynomial part produces, so that M^H M is the compression
/// of T*T; Toeplitz matrices are square.
struct OperatorMatrix {
    int N = 0;                       ///< truncation degree; N + 1 columns
    int rows = 1;
    std::vector<Complex> entries;    ///< row-major
    std::string space;
    std::string provenance;
    double dropped_mass = 0.0;       ///< norm of the image coefficients beyond the kept rows
    double unresolved_mass = 0.0;    ///< contribution the symbol truncation could not supply

    int cols() const { return N + 1; }
    Complex& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * cols() + j]; }
    Complex operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols() + j]; }

    static OperatorMatrix zeros(int N, int rows = -1)
    {
        OperatorMatrix m;
        m.N = N;
        m.rows = rows < 0 ? N + 1 : rows;
        m.entries.assign(static_cast<std::size_t>(m.rows) * (N + 1), Complex(0.0, 0.0));
        return m;
    }
};

/// M^H M.
inline OperatorMatrix gram(const OperatorMatrix& m)
{
    OperatorMatrix out = OperatorMatrix::zeros(m.N);
    const int d = m.cols();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex s(0.0, 0.0);
            for (int l = 0; l < m.rows; ++l)
                s += std::conj(m(l, i)) * m(l, j);
            out(i, j) = s;
        }
    out.space = m.space;
    out.provenance = "gram(" + m.provenance + ")";
    return out;
}

// ---------------------------------------------------------------------------
// assembly

/// Matrix of T_g^{n,k} on the truncation of degree N: T z^j = sum_i c_i z^i
/// with c_i = j!/(j-k)! h_l (i-n)!/i!, h = g^(n-k), i = j - k + l + n.
inline OperatorMatrix assemble_volterra(const AnalyticFn& g, const Space& space, int n, int k, int N)
{
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, "assemble_volterra requires 0 <= k < n");
    if (N < n)
        fail(ErrorKind::parameter, "assemble_volterra requires N >= n");
    const AnalyticFn h = (g.is_polynomial() && n - k > g.truncation()) ? AnalyticFn::polynomial({0.0})
                                                                       : derivative(g, n - k);
    const int hmax = h.truncation();
    const int hdeg = h.is_polynomial() ? std::max(0, h.degree()) : 0;
    const int rows = N - k + n + hdeg + 1;
    std::vector<double> sq(static_cast<std::size_t>(std::min(N - k + n + hmax, 2 * N + 2 * n + 2)) + 1);
    for (std::size_t i = 0; i < sq.size(); ++i)
        sq[i] = std::sqrt(space.monomial_norm2(static_cast<int>(i)));
    OperatorMatrix m = OperatorMatrix::zeros(N, rows);
    m.space = space.tag();
    m.provenance = "volterra(g=" + g.label() + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
    double dropped2 = 0.0;
    for (int j = k; j <= N; ++j) {
        const double fj = falling_factorial(j, k);
        for (int l = 0; l <= hmax; ++l) {
            const Complex hl = h.coeff(l);
            if (hl == Complex(0.0, 0.0))
                continue;
            const int i = j - k + l + n;
            const Complex c = fj * hl / falling_factorial(i, n);
            if (i < rows) {
                m(i, j) = c * sq[i] / sq[j];
            } else if (static_cast<std::size_t>(i) < sq.size()) {
                dropped2 += std::norm(c * sq[i] / sq[j]);
            } else {
                break;
            }
        }
    }
    m.dropped_mass = std::sqrt(dropped2);
    // rows i <= N need h_l for l <= N - n + k; beyond the symbol's truncation
    // they are unknown
    if (!h.is_polynomial() && hmax < N - n + k) {
        const double bound = h.truncation_error(1.0);
        m.unresolved_mass = std::isfinite(bound) ? bound : std::numeric_limits<double>::infinity();
    }
    return m;
}

/// Matrix of the generalized Toeplitz operator: entry (i, j) for i, j >= k is
/// i!/(i-k)! j!/(j-k)! m_{j-k, i-k} / (||z^i|| ||z^j||).
inline OperatorMatrix assemble_toeplitz(const MeasureSpec& mu, const Space& space, int k, int N)
{
    if (k < 0 || N < k)
        fail(ErrorKind::parameter, "assemble_toeplitz requires 0 <= k <= N");
    if (space.is_hardy() && mu.weight_dependent())
        fail(ErrorKind::parameter, "measure " + mu.label() + " needs a Bergman weight");
    const Weight w = space.is_hardy() ? Weight::standard_alpha(0.0) : space.weight();
    const MomentTable moments(mu, w, N - k);
    std::vector<double> sq(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i)
        sq[i] = std::sqrt(space.monomial_norm2(i));
    OperatorMatrix m = OperatorMatrix::zeros(N);
    m.space = space.tag();
    m.provenance = "toeplitz(mu=" + mu.label() + ",k=" + std::to_string(k) + ")";
    const bool radial = mu.is_radial();
    for (int i = k; i <= N; ++i) {
        for (int j = k; j <= N; ++j) {
            if (radial && i != j)
                continue;
            if (j < i && mu.kind() != MeasureKind::atoms) {
                m(i, j) = std::conj(m(j, i));
                continue;
            }
            const Complex mom = moments(j - k, i - k);
            m(i, j) = falling_factorial(i, k) * falling_factorial(j, k) * mom / (sq[i] * sq[j]);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// spectra

inline std::vector<double> singular_values(const OperatorMatrix& m, const SvdOptions& opt = {})
{
    const int c = m.cols(), r = m.rows;
    std::vector<Complex> colmajor(static_cast<std::size_t>(r) * c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            colmajor[static_cast<std::size_t>(j) * r + i] = m(i, j);
    return jacobi_singular_values(std::move(colmajor), r, c, opt).values;
}

inline double schatten_from_values(const std::vector<double>& sv, double p)
{
    if (!(p > 0.0))
        fail(ErrorKind::parameter, "schatten norm requires p > 0");
    quad::CompensatedSum s;
    for (double x : sv)
        if (x > 0.0)
            s.add(std::pow(x, p));
    return std::pow(s.value(), 1.0 / p);
}

inline double schatten_norm(const OperatorMatrix& m, double p) { return schatten_from_values(singular_values(m), p); }

inline double operator_norm(const OperatorMatrix& m)
{
    const auto sv = singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

/// Decay exponent d of sigma_j ~ j^{-d}, fitted on j in [N/8, N/2] to stay
/// clear of truncation edge effects. Infinite for finite-rank spectra.
inline double singular_value_decay(const std::vector<double>& sv)
{
    const int n = static_cast<int>(sv.size());
    if (n < 16)
        return 0.0;
    const double top = sv.front();
    std::vector<double> x, y;
    for (int j = std::max(1, n / 8); j <= n / 2; ++j) {
        if (sv[j] <= 1e-13 * top)
            continue;
        x.push_back(j + 1.0);
        y.push_back(sv[j]);
    }
    if (x.size() < 4)
        return std::numeric_limits<double>::infinity();
    return -fit_power(x, y).exponent;
}

// ---------------------------------------------------------------------------
// truncation scans

struct Statistic {
    enum class Kind { operator_norm, schatten } kind = Kind::operator_norm;
    double p = 2.0;

    static Statistic norm() { return {}; }
    static Statistic schatten(double p) { return {Kind::schatten, p}; }
    std::string name() const
    {
        return kind == Kind::operator_norm ? "operator-norm" : "schatten(" + std::to_string(p) + ")";
    }
};

struct GrowthScan {
    std::vector<int> Ns;
    std::vector<double> values;
    GrowthVerdict verdict = GrowthVerdict::inconclusive;
    double last_ratio = 0.0;
    double growth_exponent = 0.0;
    double decay_exponent = std::numeric_limits<double>::quiet_NaN();  ///< Schatten scans
    std::string rule;
    bool suppressed = false;   ///< unresolved symbol mass too large for a verdict
};

struct GrowthScanOptions {
    GrowthOptions growth;
    double decay_margin = 0.05;   ///< Schatten: converge iff d p > 1 + margin
};

/// Truncated statistic at each N. Operator norms use the increment-ratio /
/// power-fit rule; Schatten sums use the singular-value decay exponent at the
/// largest N (partial sums of slowly convergent p-series do not saturate
/// within N <= 2048).
inline GrowthScan growth_scan(const std::function<OperatorMatrix(int)>& assembler, const std::vector<int>& Ns,
                              const Statistic& stat, const GrowthScanOptions& opt = {})
{
    if (Ns.size() < 3)
        fail(ErrorKind::parameter, "growth_scan requires at least three truncations");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1])
            fail(ErrorKind::parameter, "growth_scan requires increasing truncations");
    GrowthScan out;
    out.Ns = Ns;
    out.values.resize(Ns.size());
    std::vector<std::vector<double>> spectra(Ns.size());
    std::vector<double> norms(Ns.size()), unresolved(Ns.size());
    parallel_for(static_cast<int>(Ns.size()), [&](int i) {
        const OperatorMatrix m = assembler(Ns[i]);
        spectra[i] = singular_values(m);
        unresolved[i] = m.unresolved_mass;
        norms[i] = spectra[i].empty() ? 0.0 : spectra[i].front();
        out.values[i] = stat.kind == Statistic::Kind::operator_norm ? norms[i]
                                                                    : schatten_from_values(spectra[i], stat.p);
    });
    out.suppressed = unresolved.back() > 1e-6 * std::max(norms.back(), 1e-300);
    std::vector<double> params(Ns.begin(), Ns.end());
    const GrowthClassification cls = classify_growth(params, out.values, opt.growth);
    out.last_ratio = cls.last_ratio;
    out.growth_exponent = cls.fit.exponent;
    if (stat.kind == Statistic::Kind::operator_norm) {
        out.verdict = cls.verdict;
        out.rule = "last ratio < 1.05 saturating; power exponent > 0.05 growing";
    } else {
        const double d = singular_value_decay(spectra.back());
        out.decay_exponent = d;
        const double dp = d * stat.p;
        if (norms.back() == 0.0 || dp > 1.0 + opt.decay_margin)
            out.verdict = GrowthVerdict::saturating;
        else if (dp < 1.0 - opt.decay_margin)
            out.verdict = GrowthVerdict::growing;
        else
            out.verdict = cls.verdict;   // borderline d p: partial-sum growth decides
        out.rule = "singular values ~ j^-d: d p > 1.05 saturating, d p < 0.95 growing, otherwise partial-sum ratio";
    }
    return out;
}

// ---------------------------------------------------------------------------
// export

inline void write_matrix_csv(std::ostream& os, const OperatorMatrix& m)
{
    os << "i,j,re,im\n";
    os.precision(17);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Complex v = m(i, j);
            if (v != Complex(0.0, 0.0))
                os << i << ',' << j << ',' << v.real() << ',' << v.imag() << '\n';
        }
}

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint64_t get_u64(std::istream& is)
{
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8))
        fail(ErrorKind::io, "truncated matrix header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline void put_f64(std::ostream& os, double x)
{
    std::uint64_t bits;
    std::memcpy(&bits, &x, 8);
    put_u64(os, bits);
}

inline double get_f64(std::istream& is)
{
    const std::uint64_t bits = get_u64(is);
    double x;
    std::memcpy(&x, &bits, 8);
    return x;
}

} // namespace detail

/// Binary layout: uint64 rows, uint64 cols, then row-major (re, im) float64
/// pairs, all little-endian.
inline void write_matrix_binary(std::ostream& os, const OperatorMatrix& m)
{
    detail::put_u64(os, static_cast<std::uint64_t>(m.rows));
    detail::put_u64(os, static_cast<std::uint64_t>(m.cols()));
    for (const Complex& v : m.entries) {
        detail::put_f64(os, v.real());
        detail::put_f64(os, v.imag());
    }
}

inline OperatorMatrix read_matrix_binary(std::istream& is)
{
    const std::uint64_t rows = detail::get_u64(is), cols = detail::get_u64(is);
    if (cols == 0 || rows < cols || rows > 1u << 16)
        fail(ErrorKind::io, "matrix file must hold a nonempty matrix with rows >= cols");
    OperatorMatrix m = OperatorMatrix::zeros(static_cast<int>(cols) - 1, static_cast<int>(rows));
    for (auto& v : m.entries) {
        const double re = detail::get_f64(is);
        const double im = detail::get_f64(is);
        v = Complex(re, im);
    }
    return m;
}

// ---------------------------------------------------------------------------
// mixed-norm probe scan

struct ProbeOptions {
    double gamma = 4.0;
    int steps = 10;               ///< carleson apexes with gaps geometric from 1/2 to 1 - a_max
    double a_max = 0.999;
    int max_degree = 512;         ///< random polynomial probes of degree 2^m up to this
    std::uint64_t seed = 20240611;
};

struct ProbeScan {
    std::vector<double> apexes;       ///< carleson apex per step
    std::vector<int> degrees;         ///< random polynomial degree per step (0: none)
    std::vector<double> carleson_ratio, polynomial_ratio, running_sup;
    GrowthClassification growth;
    std::string route;
};

namespace detail {

/// ||T f||_{A^2_w}^2 for n = 1, k = 0 through the exact identity
/// 4 int |f|^2 |g'|^2 w* dA (T f vanishes at 0).
inline double volterra_image_norm2_lp(const AnalyticFn& f, const AnalyticFn& dg, const Weight& w)
{
    const bool poly = f.is_polynomial() && !f.closed_form();
    const double theta0 = dg.closed_form() ? dg.singular_direction() : f.singular_direction();
    auto angular = [&](double t, double u) {
        auto v = [&](double th) {
            const Complex fv = poly ? f.evaluate_series(std::polar(t, th)) : f.at_gap(u, th);
            return std::norm(fv) * std::norm(dg.at_gap(u, th));
        };
        if (!dg.closed_form() && !f.closed_form()) {
            const int m = detail::trapezoid_nodes(std::max(0, f.degree()) + dg.truncation(), 2.0);
            double s = 0.0;
            for (int i = 0; i < m; ++i)
                s += v(2.0 * pi * i / m);
            return s / m;
        }
        return graded_angular_mean(v, theta0, u);
    };
    LayerOptions lo;
    lo.grade_low = true;
    auto h = [&](double t, double u) { return t <= 0.0 ? 0.0 : 2.0 * t * w.star(t) * angular(t, u); };
    return 4.0 * layered_radial(h, lo).value();
}

/// Pointwise T f(z) = z^n/(n-1)! int_0^1 (1-t)^{n-1} (f^(k) g^(n-k))(t z) dt.
inline Complex volterra_pointwise(const AnalyticFn& fk, const AnalyticFn& gnk, int n, Complex z)
{
    auto part = [&](double t) -> Complex {
        const Complex x = t * z;
        return std::pow(1.0 - t, n - 1) * fk(x) * gnk(x);
    };
    const double gap = std::max(1.0 - std::abs(z), 1e-14);
    Complex s(0.0, 0.0);
    for (const auto& [a, b] : quad::graded_panels(0.0, 1.0, 1.0, gap, 0.25)) {
        s += quad::gl_integrate([&](double t) { return part(t).real(); }, a, b, 16);
        s += Complex(0.0, 1.0) * quad::gl_integrate([&](double t) { return part(t).imag(); }, a, b, 16);
    }
    return std::pow(z, n) / factorial(n - 1) * s;
}

inline AnalyticFn random_polynomial(int degree, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c)
        x = Complex(nd(rng), nd(rng));
    return AnalyticFn::polynomial(std::move(c), "random:" + std::to_string(degree));
}

/// ||f||_{A^p_w} for a polynomial and even integer p, by Parseval on the
/// coefficients of f^{p/2}.
inline double polynomial_even_norm(const AnalyticFn& f, const Weight& w, int p)
{
    AnalyticFn pw = AnalyticFn::polynomial({1.0});
    for (int i = 0; i < p / 2; ++i)
        pw = cauchy_product(pw, f);
    return std::pow(coefficient_norm2(pw, w), 1.0 / p);
}

} // namespace detail

/// Sup over probes of ||T f||_{A^q_w} / ||f||_{A^p_w}, accumulated as the
/// carleson apex moves to the boundary and the polynomial degree grows.
inline ProbeScan probe_ratio_scan(const AnalyticFn& g, const Weight& w, double p, double q, int n, int k,
                                  const ProbeOptions& opt = {})
{
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, "probe scan requires 0 <= k < n");
    ProbeScan out;
    const bool lp_route = q == 2.0 && n == 1 && k == 0;
    out.route = lp_route ? "q=2 identity 4 int |f|^2 |g'|^2 w* dA" : "pointwise T f with A^q quadrature";
    const AnalyticFn dg = derivative(g, n - k);
    // gaps 1 - a geometric from 1/2 down to 1 - a_max
    std::vector<double> apexes;
    for (int m = 0; m < opt.steps; ++m)
        apexes.push_back(1.0 - 0.5 * std::pow(2.0 * (1.0 - opt.a_max), static_cast<double>(m) / (opt.steps - 1)));
    const int steps = static_cast<int>(apexes.size());
    out.apexes = apexes;
    out.degrees.assign(steps, 0);
    out.carleson_ratio.assign(steps, 0.0);
    out.polynomial_ratio.assign(steps, 0.0);
    std::vector<AnalyticFn> polys(steps);
    std::mt19937_64 rng(opt.seed);
    for (int s = 0; s < steps; ++s) {
        const int deg = std::min(opt.max_degree, 1 << (s + 1));
        out.degrees[s] = deg;
        polys[s] = detail::random_polynomial(deg, rng);
    }
    auto image_norm = [&](const AnalyticFn& f) {
        if (lp_route)
            return std::sqrt(detail::volterra_image_norm2_lp(f, dg, w));
        const AnalyticFn fk = derivative(f, k);
        const Weight& wr = w;
        auto h = [&](double t, double u) {
            auto v = [&](double th) {
                return std::pow(std::abs(detail::volterra_pointwise(fk, dg, n, std::polar(t, th))), q);
            };
            return 2.0 * t * wr.density_gap(u) * graded_angular_mean(v, dg.singular_direction(), u);
        };
        LayerOptions lo;
        lo.depth = 24;
        lo.order = 12;
        return std::pow(layered_radial(h, lo).value(), 1.0 / q);
    };
    auto source_norm = [&](const AnalyticFn& f) {
        const double ip = std::round(p);
        if (f.is_polynomial() && ip == p && static_cast<int>(ip) % 2 == 0)
            return detail::polynomial_even_norm(f, w, static_cast<int>(ip));
        return bergman_norm(f, w, p).value;
    };
    parallel_for(2 * steps, [&](int idx) {
        const int s = idx / 2;
        if (idx % 2 == 0) {
            const AnalyticFn f = symbol_carleson(apexes[s], opt.gamma, 64);
            out.carleson_ratio[s] = image_norm(f) / source_norm(f);
        } else {
            out.polynomial_ratio[s] = image_norm(polys[s]) / source_norm(polys[s]);
        }
    });
    double sup = 0.0;
    std::vector<double> params;
    for (int s = 0; s < steps; ++s) {
        sup = std::max({sup, out.carleson_ratio[s], out.polynomial_ratio[s]});
        out.running_sup.push_back(sup);
        params.push_back(1.0 / (1.0 - apexes[s]));
    }
    out.growth = classify_growth(params, out.running_sup);
    return out;
}

} // namespace bergman_lab
