#pragma once
//
// Positive measures on the disk: atoms and densities of the form
// |h(w)|^2 rho(|w|) dA(w) with h analytic and rho radial. This covers
// radial densities, the symbol-induced densities and the iterated-star
// densities that realize T*T for the Volterra operators.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman_lab {

// ---------------------------------------------------------------------------
// radial profiles

/// Interpolates log rho on log-spaced gaps (r >= 1/2) and log-spaced radii
/// (r < 1/2). Used where a radial density is evaluated at many scattered
/// points (ball masses); moment computations never go through the table.
class RadialTable {
public:
    RadialTable() = default;

    template <class F>
    static RadialTable build(F&& rho, double min_gap = 1e-15, int per_decade = 24)
    {
        RadialTable t;
        const int n_gap = static_cast<int>(std::ceil(std::log10(0.5 / min_gap) * per_decade)) + 1;
        for (int i = 0; i < n_gap; ++i) {
            const double lu = std::log(0.5) + (std::log(min_gap) - std::log(0.5)) * i / (n_gap - 1);
            const double u = std::exp(lu);
            t.lgap_.push_back(lu);
            t.lval_gap_.push_back(safe_log(rho(1.0 - u, u)));
        }
        const int n_r = 15 * per_decade;
        for (int i = 0; i < n_r; ++i) {
            const double lr = std::log(0.5) + (std::log(1e-15) - std::log(0.5)) * i / (n_r - 1);
            const double r = std::exp(lr);
            t.lr_.push_back(lr);
            t.lval_r_.push_back(safe_log(rho(r, 1.0 - r)));
        }
        return t;
    }

    double operator()(double r, double u) const
    {
        if (lgap_.empty())
            return 0.0;
        if (r >= 0.5)
            return std::exp(interp(lgap_, lval_gap_, std::log(std::max(u, 1e-300))));
        return std::exp(interp(lr_, lval_r_, std::log(std::max(r, 1e-300))));
    }

private:
    static double safe_log(double v) { return v > 0.0 ? std::log(v) : -745.0; }

    /// Cubic Lagrange on a uniform grid, linear extrapolation outside.
    static double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x)
    {
        const int n = static_cast<int>(xs.size());
        const double h = xs[1] - xs[0];
        double pos = (x - xs[0]) / h;
        if (pos <= 0.0)
            return ys[0] + pos * (ys[1] - ys[0]);
        if (pos >= n - 1)
            return ys[n - 1] + (pos - (n - 1)) * (ys[n - 1] - ys[n - 2]);
        int i = std::clamp(static_cast<int>(std::floor(pos)) - 1, 0, n - 4);
        double out = 0.0;
        for (int a = 0; a < 4; ++a) {
            double l = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a)
                    l *= (pos - (i + b)) / static_cast<double>(a - b);
            out += l * ys[i + a];
        }
        return out;
    }

    std::vector<double> lgap_, lval_gap_, lr_, lval_r_;
};

// ---------------------------------------------------------------------------
// iterated star

/// w^{*n}(r): n = 1 is Weight::star, n = 2 nests the same quadrature, n = 3
/// integrates against a tabulated w^{**}.
inline double star_n(const Weight& w, int n, double r)
{
    if (n < 1)
        fail(ErrorKind::parameter, "star_n requires n >= 1");
    if (n > 3)
        fail(ErrorKind::parameter, "star_n supports n <= 3");
    if (!(r > 0.0 && r < 1.0))
        fail(ErrorKind::domain, "star_n is defined for 0 < r < 1");
    if (n == 1)
        return w.star(r);
    auto iterate = [r](auto&& inner) {
        const double ur = 1.0 - r;
        auto h = [&](double s, double v) {
            const double l = s <= 0.5 ? std::log(s / r) : std::log1p((ur - v) / r);
            return s * inner(s, v) * l;
        };
        // integrand vanishes at s = r; layers on the gap keep the boundary resolved
        quad::RadialOptions opt;
        opt.grade_low = true;
        opt.low_depth = 30;
        const auto rule = quad::make_radial_rule(r, opt);
        quad::CompensatedSum sum;
        for (std::size_t i = 0; i < rule.t.size(); ++i)
            sum.add(rule.w[i] * h(rule.t[i], rule.u[i]));
        return sum.value();
    };
    if (n == 2)
        return iterate([&](double s, double) { return w.star(s); });
    static std::mutex mutex;
    static std::map<const void*, std::shared_ptr<RadialTable>> tables;
    std::shared_ptr<RadialTable> table;
    {
        std::lock_guard lock(mutex);
        auto& slot = tables[w.identity()];
        if (!slot)
            slot = std::make_shared<RadialTable>(
                RadialTable::build([&](double s, double) { return star_n(w, 2, s); }, 1e-13, 12));
        table = slot;
    }
    return iterate([&](double s, double v) { return (*table)(s, v); });
}

// ---------------------------------------------------------------------------
// measures

enum class MeasureKind { atoms, radial_density, symbol_density, star_density, hardy_star_density };

inline std::string to_string(MeasureKind k)
{
    switch (k) {
    case MeasureKind::atoms: return "atoms";
    case MeasureKind::radial_density: return "radial-density";
    case MeasureKind::symbol_density: return "symbol-density";
    case MeasureKind::star_density: return "star-n-density";
    case MeasureKind::hardy_star_density: return "hardy-star-density";
    }
    return "unknown";
}

struct Atom {
    Complex z;
    double mass;
};

/// rho(r, u) with u = 1 - r.
using RadialFunction = std::function<double(double, double)>;

class MeasureSpec {
public:
    static MeasureSpec atoms(std::vector<Atom> atoms)
    {
        for (const auto& a : atoms) {
            if (!(std::norm(a.z) < 1.0))
                fail(ErrorKind::domain, "atom outside the open unit disk");
            if (!(a.mass > 0.0))
                fail(ErrorKind::parameter, "atom masses must be positive");
        }
        MeasureSpec m(MeasureKind::atoms);
        m.atoms_ = std::move(atoms);
        std::ostringstream os;
        os.precision(17);
        os << "atoms:";
        for (std::size_t i = 0; i < m.atoms_.size(); ++i)
            os << (i ? ";" : "") << m.atoms_[i].z.real() << "," << m.atoms_[i].z.imag() << "," << m.atoms_[i].mass;
        m.label_ = os.str();
        return m;
    }

    /// rho(|w|) dA(w).
    static MeasureSpec radial(RadialFunction rho, std::string label)
    {
        MeasureSpec m(MeasureKind::radial_density);
        m.rho_ = std::move(rho);
        m.h_ = AnalyticFn::polynomial({1.0});
        m.label_ = std::move(label);
        return m;
    }

    /// (1 - |w|)^e dA(w).
    static MeasureSpec radial_power(double e)
    {
        if (!(e > -1.0))
            fail(ErrorKind::parameter, "radial power density requires exponent > -1");
        std::ostringstream os;
        os.precision(17);
        os << "radial:pow=" << e;
        return radial([e](double, double u) { return std::pow(u, e); }, os.str());
    }

    /// |g^(order)(u)|^2 (1-|u|)^beta w(S_u) dA(u).
    static MeasureSpec symbol_density(const AnalyticFn& g, double beta, int order)
    {
        if (order < 0)
            fail(ErrorKind::parameter, "symbol density order must be nonnegative");
        MeasureSpec m(MeasureKind::symbol_density);
        m.g_ = g;
        m.h_ = derivative(g, order);
        m.beta_ = beta;
        m.n_ = order;
        std::ostringstream os;
        os.precision(17);
        os << "symbol:g=" << g.label() << ",beta=" << beta << ",order=" << order;
        m.label_ = os.str();
        return m;
    }

    /// 4^n |g^(n-k)|^2 w^{*n} dA.
    static MeasureSpec star_density(const AnalyticFn& g, int n, int k)
    {
        if (!(k >= 0 && k < n))
            fail(ErrorKind::parameter, "star density requires 0 <= k < n");
        if (n > 3)
            fail(ErrorKind::parameter, "star density supports n <= 3");
        MeasureSpec m(MeasureKind::star_density);
        m.g_ = g;
        m.h_ = derivative(g, n - k);
        m.n_ = n;
        m.k_ = k;
        m.label_ = "star:g=" + g.label() + ",n=" + std::to_string(n) + ",k=" + std::to_string(k);
        return m;
    }

    /// Hardy analogue: 2 * 4^{n-1} |g^(n-k)|^2 tau^{*(n-1)} dA, tau = log(1/|w|).
    static MeasureSpec hardy_star_density(const AnalyticFn& g, int n, int k)
    {
        if (!(k >= 0 && k < n))
            fail(ErrorKind::parameter, "tau density requires 0 <= k < n");
        MeasureSpec m(MeasureKind::hardy_star_density);
        m.g_ = g;
        m.h_ = derivative(g, n - k);
        m.n_ = n;
        m.k_ = k;
        m.label_ = "tau:g=" + g.label() + ",n=" + std::to_string(n) + ",k=" + std::to_string(k);
        return m;
    }

    MeasureKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::vector<Atom>& atom_list() const { return atoms_; }
    const AnalyticFn& analytic_factor() const { return h_; }
    int n() const { return n_; }
    int k() const { return k_; }
    double beta() const { return beta_; }

    /// Whether the measure depends on the Bergman weight.
    bool weight_dependent() const
    {
        return kind_ == MeasureKind::symbol_density || kind_ == MeasureKind::star_density;
    }

    /// True when |h| is rotation invariant, i.e. h is a multiple of a monomial.
    bool is_radial() const
    {
        if (kind_ == MeasureKind::atoms)
            return false;
        if (!h_.is_polynomial())
            return false;
        int nonzero = 0;
        for (const auto& c : h_.coeffs())
            nonzero += c != Complex(0.0, 0.0);
        return nonzero <= 1;
    }

    /// rho(r, u); `w` is used by the weight-dependent kinds.
    double radial_part(const Weight& w, double r, double u) const
    {
        switch (kind_) {
        case MeasureKind::atoms: return 0.0;
        case MeasureKind::radial_density: return rho_(r, u);
        case MeasureKind::symbol_density:
            return std::pow(u, beta_) * weighted_square_measure_gap(w, u);
        case MeasureKind::star_density:
            return std::pow(4.0, n_) * star_n(w, n_, std::max(r, 1e-300));
        case MeasureKind::hardy_star_density: {
            const double lr = r > 0.5 ? -std::log1p(-u) : -std::log(r);
            if (n_ == 1)
                return 2.0 * lr;
            fail(ErrorKind::parameter, "pointwise tau density is available for n = 1 only");
        }
        }
        return 0.0;
    }

private:
    explicit MeasureSpec(MeasureKind kind) : kind_(kind) {}

    MeasureKind kind_;
    std::vector<Atom> atoms_;
    RadialFunction rho_;
    AnalyticFn g_, h_;
    double beta_ = 0.0;
    int n_ = 0, k_ = 0;
    std::string label_;
};

// ---------------------------------------------------------------------------
// moments

/// Radial moments R_m = 2 int_0^1 r^{2m+1} rho(r) dr for m = 0..max_m.
/// Star densities of order n >= 2 use the exact recursion
/// int r^m w^{*n} dr = w_{m+2n} / prod_i (m + 1 + 2i)^2; order 1 integrates
/// w* itself so that the T*T check stays independent of the moments.
inline std::vector<double> radial_moments(const MeasureSpec& mu, const Weight& w, int max_m)
{
    std::vector<double> out(static_cast<std::size_t>(max_m) + 1, 0.0);
    const int n = mu.n();
    if (mu.kind() == MeasureKind::star_density && n >= 2) {
        for (int m = 0; m <= max_m; ++m) {
            const int e = 2 * m + 1;
            double den = 1.0;
            for (int i = 0; i < n; ++i)
                den *= static_cast<double>(e + 1 + 2 * i) * (e + 1 + 2 * i);
            out[m] = 2.0 * std::pow(4.0, n) * w.moment(e + 2 * n) / den;
        }
        return out;
    }
    if (mu.kind() == MeasureKind::hardy_star_density && n >= 2) {
        // int r^e tau^{*j} dr = prod_{i=0}^{j} (e + 1 + 2i)^{-2}
        for (int m = 0; m <= max_m; ++m) {
            const int e = 2 * m + 1;
            double den = 1.0;
            for (int i = 0; i < n; ++i)
                den *= static_cast<double>(e + 1 + 2 * i) * (e + 1 + 2 * i);
            out[m] = 2.0 * 2.0 * std::pow(4.0, n - 1) / den;
        }
        return out;
    }
    quad::RadialOptions opt;
    opt.depth = 48;
    opt.grade_low = true;
    opt.low_depth = 40;
    const auto rule = quad::make_radial_rule(0.0, opt);
    std::vector<double> logt(rule.t.size()), wr(rule.t.size());
    std::vector<double> layer_mass(rule.layers, 0.0);
    for (std::size_t i = 0; i < rule.t.size(); ++i) {
        logt[i] = std::log1p(-rule.u[i]);
        wr[i] = rule.w[i] * mu.radial_part(w, rule.t[i], rule.u[i]);
        if (rule.layer[i] >= 0)
            layer_mass[rule.layer[i]] += wr[i];
    }
    // remainder beyond the deepest layer from the geometric decay of layer masses
    double tail = 0.0;
    if (rule.layers >= 2) {
        const double a = layer_mass[rule.layers - 2], b = layer_mass[rule.layers - 1];
        if (a > 0.0 && b > 0.0 && b < a)
            tail = b * (b / a) / (1.0 - b / a);
    }
    for (int m = 0; m <= max_m; ++m) {
        quad::CompensatedSum sum;
        const double e = 2.0 * m + 1.0;
        for (std::size_t i = 0; i < rule.t.size(); ++i)
            sum.add(wr[i] * std::exp(e * logt[i]));
        sum.add(tail);
        out[m] = 2.0 * sum.value();
    }
    return out;
}

/// Mixed moments m_{a,b} = int w^a conj(w)^b dmu for 0 <= a, b <= max_index.
class MomentTable {
public:
    MomentTable(const MeasureSpec& mu, const Weight& w, int max_index) : mu_(mu), max_(max_index)
    {
        if (mu.kind() != MeasureKind::atoms) {
            const AnalyticFn& h = mu.analytic_factor();
            const int deg = h.is_polynomial() ? std::max(0, h.degree()) : h.truncation();
            radial_ = radial_moments(mu, w, max_index + deg);
            hdeg_ = deg;
        }
    }

    Complex operator()(int a, int b) const
    {
        if (mu_.kind() == MeasureKind::atoms) {
            Complex s(0.0, 0.0);
            for (const auto& at : mu_.atom_list())
                s += at.mass * std::pow(at.z, a) * std::pow(std::conj(at.z), b);
            return s;
        }
        // sum_p h_p conj(h_q) R_{a+p}, q = a + p - b
        const AnalyticFn& h = mu_.analytic_factor();
        Complex s(0.0, 0.0);
        for (int p = std::max(0, b - a); p <= hdeg_; ++p) {
            const int q = a + p - b;
            if (q > hdeg_)
                break;
            const Complex hp = h.coeff(p), hq = h.coeff(q);
            if (hp == Complex(0.0, 0.0) || hq == Complex(0.0, 0.0))
                continue;
            s += hp * std::conj(hq) * radial_[a + p];
        }
        return s;
    }

private:
    const MeasureSpec& mu_;
    int max_;
    int hdeg_ = 0;
    std::vector<double> radial_;
};

// ---------------------------------------------------------------------------
// ball masses

/// mu(D(c, R)) for the Bergman-metric ball. Densities are integrated in
/// Moebius coordinates zeta, w = phi_c(zeta), |zeta| < tanh R.
class BallMass {
public:
    BallMass(const MeasureSpec& mu, const Weight& w) : mu_(mu), w_(w)
    {
        if (mu.kind() != MeasureKind::atoms)
            table_ = RadialTable::build([&](double r, double u) { return mu.radial_part(w, r, u); });
    }

    double operator()(Complex c, double radius, double rtol = 1e-7) const
    {
        if (mu_.kind() == MeasureKind::atoms) {
            double s = 0.0;
            for (const auto& a : mu_.atom_list())
                if (bergman_distance(c, a.z) < radius)
                    s += a.mass;
            return s;
        }
        const double rho = std::tanh(radius);
        const double one_minus_c2 = 1.0 - std::norm(c);
        const AnalyticFn& h = mu_.analytic_factor();
        const bool h_const = h.is_polynomial() && h.degree() <= 0;
        const double h0 = std::norm(h.coeff(0));
        auto density = [&](Complex zeta, double s) {
            const Complex den = 1.0 - std::conj(c) * zeta;
            const double d2 = std::norm(den);
            const double one_minus_w2 = one_minus_c2 * (1.0 - s * s) / d2;
            const Complex wpt = (c - zeta) / den;
            const double mw = std::abs(wpt);
            const double u = one_minus_w2 / (1.0 + mw);
            const double jac = one_minus_c2 * one_minus_c2 / (d2 * d2);
            const double hv = h_const ? h0 : std::norm(h(wpt));
            return hv * table_(1.0 - u, u) * jac;
        };
        const double theta_c = std::arg(c);
        auto inner = [&](double s) {
            if (s == 0.0)
                return 2.0 * pi * density(0.0, 0.0);
            auto f = [&](double th) { return density(std::polar(s, th), s); };
            // concentrated around the direction of c
            double total = 0.0;
            const double edges[5] = {-pi, -0.5, 0.0, 0.5, pi};
            for (int i = 0; i < 4; ++i) {
                total += quad::adaptive_integrate(f, theta_c + edges[i], theta_c + edges[i + 1], rtol * 0.1, 0.0,
                                                  2000)
                             .value;
            }
            return total;
        };
        auto outer = [&](double s) { return s * inner(s); };
        // grade the radial variable toward the rim of the ball
        double total = 0.0;
        double lo = 0.0, gap = rho;
        for (int i = 0; i < 60 && gap > 1e-14 * rho; ++i) {
            const double hi = rho - 0.5 * gap;
            total += quad::adaptive_integrate(outer, lo, hi, rtol * 0.1, 0.0, 400).value;
            lo = hi;
            gap *= 0.5;
        }
        total += quad::adaptive_integrate(outer, lo, rho, rtol, 0.0, 400).value;
        return total / pi;
    }

private:
    const MeasureSpec& mu_;
    const Weight& w_;
    RadialTable table_;
};

} // namespace bergman_lab
