#pragma once
//
// Analytic functions on the disk as truncated Taylor series, with the
// algebra that realizes T_g^{n,k} f = I^n(f^(k) g^(n-k)) coefficientwise.
//
// Symbol families also carry a closed form so that values near the circle
// are not limited by the truncation.
//

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace bergman_lab {

inline constexpr int default_truncation = 512;

enum class TailKind { exact, geometric, unknown };

/// Bound on the neglected coefficients: |c_j| <= bound * ratio^j for j > N.
struct Tail {
    TailKind kind = TailKind::unknown;
    double ratio = 0.0;
    double bound = 0.0;

    static Tail exact() { return {TailKind::exact, 0.0, 0.0}; }
    static Tail unknown() { return {}; }
    static Tail geometric(double q, double m) { return {TailKind::geometric, q, m}; }
};

enum class SymbolFamily { log_singular, power_singular, carleson, polynomial, lacunary };

/// Closed form of scale * d^order/dz^order of a family member.
struct ClosedForm {
    SymbolFamily family = SymbolFamily::polynomial;
    double s = 0.0;        ///< exponent for power_singular, gamma for carleson
    Complex a{0.0, 0.0};   ///< carleson apex
    int order = 0;
    Complex scale{1.0, 0.0};

    Complex eval(Complex z) const
    {
        const Complex w = family == SymbolFamily::carleson ? 1.0 - std::conj(a) * z : 1.0 - z;
        return eval_one_minus(w, z);
    }

    /// Value given w = 1 - z (or 1 - conj(a) z for the carleson family).
    Complex eval_one_minus(Complex w, Complex /*z*/) const
    {
        switch (family) {
        case SymbolFamily::log_singular:
            if (order == 0)
                return -scale * std::log(w);
            return scale * factorial(order - 1) / std::pow(w, order);
        case SymbolFamily::power_singular:
            return scale * rising_factorial(s, order) * std::pow(w, -s - order);
        case SymbolFamily::carleson: {
            const double lead = std::pow(1.0 - std::abs(a), s);
            return scale * lead * rising_factorial(s, order) * std::pow(std::conj(a), order) *
                   std::pow(w, -s - order);
        }
        default:
            return {0.0, 0.0};
        }
    }

    /// Same value at z = (1 - gap) e^{i theta}, with 1 - conj(a) z formed from
    /// the gap so that points within 1e-12 of the circle keep full precision.
    Complex eval_gap(double gap, double theta) const
    {
        double rho_gap = gap, psi = theta;
        if (family == SymbolFamily::carleson) {
            const double ma = std::abs(a);
            rho_gap = (1.0 - ma) + ma * gap;
            psi = theta - std::arg(a);
        } else if (family == SymbolFamily::polynomial || family == SymbolFamily::lacunary) {
            return eval(std::polar(1.0 - gap, theta));
        }
        const Complex e = std::polar(1.0, psi);
        const Complex w = rho_gap * e - Complex(0.0, 2.0 * std::sin(0.5 * psi)) * std::polar(1.0, 0.5 * psi);
        return eval_one_minus(w, std::polar(1.0 - gap, theta));
    }

    /// Direction of the boundary singularity (angle), used to grade quadratures.
    double singular_direction() const
    {
        if (family == SymbolFamily::carleson && std::abs(a) > 0.0)
            return std::arg(a);
        return 0.0;
    }
};

class AnalyticFn {
public:
    AnalyticFn() : coeffs_(1, Complex(0.0, 0.0)), tail_(Tail::exact()) {}
    AnalyticFn(std::vector<Complex> coeffs, Tail tail, std::optional<ClosedForm> closed = std::nullopt,
               std::string label = "")
        : coeffs_(std::move(coeffs)), tail_(tail), closed_(std::move(closed)), label_(std::move(label))
    {
        if (coeffs_.empty())
            fail(ErrorKind::parameter, "AnalyticFn needs at least one coefficient");
    }

    static AnalyticFn polynomial(std::vector<Complex> coeffs, std::string label = "")
    {
        if (coeffs.empty())
            coeffs.push_back(0.0);
        return AnalyticFn(std::move(coeffs), Tail::exact(), std::nullopt, std::move(label));
    }

    static AnalyticFn monomial(int j, Complex c = 1.0)
    {
        std::vector<Complex> coeffs(static_cast<std::size_t>(j) + 1, Complex(0.0, 0.0));
        coeffs[j] = c;
        return polynomial(std::move(coeffs));
    }

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int j) const
    {
        return (j >= 0 && j <= truncation()) ? coeffs_[j] : Complex(0.0, 0.0);
    }
    const Tail& tail() const { return tail_; }
    const std::optional<ClosedForm>& closed_form() const { return closed_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    bool is_polynomial() const { return tail_.kind == TailKind::exact; }

    /// Highest nonzero coefficient for polynomials, truncation otherwise.
    int degree() const
    {
        if (!is_polynomial())
            return truncation();
        for (int j = truncation(); j >= 0; --j)
            if (coeffs_[j] != Complex(0.0, 0.0))
                return j;
        return -1;
    }

    bool is_zero() const { return is_polynomial() && degree() < 0; }

    /// Value of the function: closed form when known, otherwise Horner on the
    /// retained coefficients.
    Complex operator()(Complex z) const
    {
        if (closed_)
            return closed_->eval(z);
        return evaluate_series(z);
    }

    /// Value at (1 - gap) e^{i theta}.
    Complex at_gap(double gap, double theta) const
    {
        if (closed_)
            return closed_->eval_gap(gap, theta);
        return evaluate_series(std::polar(1.0 - gap, theta));
    }

    Complex evaluate_series(Complex z) const
    {
        Complex acc(0.0, 0.0);
        for (int j = truncation(); j >= 0; --j)
            acc = acc * z + coeffs_[j];
        return acc;
    }

    /// Bound on |f(z) - series(z)| from the tail metadata; infinite if unknown.
    double truncation_error(double radius) const
    {
        switch (tail_.kind) {
        case TailKind::exact: return 0.0;
        case TailKind::geometric: {
            const double q = tail_.ratio * radius;
            if (q >= 1.0)
                return std::numeric_limits<double>::infinity();
            return tail_.bound * std::pow(q, truncation() + 1) / (1.0 - q);
        }
        case TailKind::unknown: return std::numeric_limits<double>::infinity();
        }
        return std::numeric_limits<double>::infinity();
    }

    /// True when values at this radius are exact (closed form or bounded tail).
    bool reliable_at(double radius, double tol = 1e-12) const
    {
        if (closed_ || is_polynomial())
            return true;
        return truncation_error(radius) <= tol;
    }

    double singular_direction() const { return closed_ ? closed_->singular_direction() : 0.0; }

    /// Same function rotated: f(e^{-i phi} z).
    AnalyticFn rotated(double phi) const
    {
        std::vector<Complex> c = coeffs_;
        for (std::size_t j = 0; j < c.size(); ++j)
            c[j] *= std::polar(1.0, -phi * static_cast<double>(j));
        std::optional<ClosedForm> cf;
        if (closed_ && closed_->family == SymbolFamily::carleson) {
            cf = *closed_;
            cf->a *= std::polar(1.0, phi);
            cf->scale *= std::polar(1.0, -phi * closed_->order);
        }
        return AnalyticFn(std::move(c), tail_, cf, label_);
    }

private:
    std::vector<Complex> coeffs_;
    Tail tail_;
    std::optional<ClosedForm> closed_;
    std::string label_;
};

// ---------------------------------------------------------------------------
// calculus

/// k-th derivative: coefficient j becomes (j+k)!/j! c_{j+k}.
inline AnalyticFn derivative(const AnalyticFn& f, int k)
{
    if (k < 0)
        fail(ErrorKind::parameter, "derivative order must be nonnegative");
    if (k == 0)
        return f;
    const int n = f.truncation();
    if (k > n) {
        if (f.is_polynomial())
            return AnalyticFn::polynomial({0.0});
        fail(ErrorKind::parameter, "derivative order exceeds the truncation");
    }
    std::vector<Complex> c(static_cast<std::size_t>(n - k) + 1);
    for (int j = 0; j <= n - k; ++j)
        c[j] = falling_factorial(j + k, k) * f.coeffs()[j + k];

    Tail tail = f.tail();
    if (tail.kind == TailKind::geometric) {
        // (j+k)!/j! q^{j+k} <= M' q'^j with q' = (1+q)/2
        const double q = tail.ratio, qp = 0.5 * (1.0 + q);
        double worst = 0.0;
        for (int j = n - k + 1; j < n - k + 1 + 4096; ++j) {
            const double term = std::exp(std::log(falling_factorial(j + k, k)) + (j + k) * std::log(q) -
                                         j * std::log(qp));
            worst = std::max(worst, term);
            if (j > n - k + 64 && term < 1e-3 * worst)
                break;
        }
        tail = Tail::geometric(qp, tail.bound * worst);
    }
    std::optional<ClosedForm> cf = f.closed_form();
    if (cf)
        cf->order += k;
    return AnalyticFn(std::move(c), tail, cf, f.label().empty() ? "" : f.label() + "^(" + std::to_string(k) + ")");
}

/// n-fold integration from 0: coefficient m moves to m+n times m!/(m+n)!.
inline AnalyticFn integrate(const AnalyticFn& f, int n)
{
    if (n < 1)
        fail(ErrorKind::parameter, "integrate requires n >= 1");
    const int N = f.truncation();
    std::vector<Complex> c(static_cast<std::size_t>(N + n) + 1, Complex(0.0, 0.0));
    for (int m = 0; m <= N; ++m)
        c[m + n] = f.coeffs()[m] / falling_factorial(m + n, n);
    Tail tail = f.tail();
    if (tail.kind == TailKind::geometric)
        tail.bound /= std::pow(tail.ratio, n);
    return AnalyticFn(std::move(c), tail);
}

inline AnalyticFn cauchy_product(const AnalyticFn& f, const AnalyticFn& g)
{
    const bool both_exact = f.is_polynomial() && g.is_polynomial();
    int n;
    if (both_exact)
        n = std::max(0, f.degree()) + std::max(0, g.degree());
    else if (f.is_polynomial())
        n = g.truncation() + std::max(0, f.degree());
    else if (g.is_polynomial())
        n = f.truncation() + std::max(0, g.degree());
    else
        n = std::min(f.truncation(), g.truncation());
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
    const int fn = std::min(n, f.truncation()), gn = std::min(n, g.truncation());
    for (int i = 0; i <= fn; ++i) {
        const Complex fi = f.coeffs()[i];
        if (fi == Complex(0.0, 0.0))
            continue;
        for (int j = 0; j <= gn && i + j <= n; ++j)
            c[i + j] += fi * g.coeffs()[j];
    }
    // a polynomial factor times a truncated series is only exact up to the
    // series truncation plus nothing: keep the reliable prefix
    if (!both_exact) {
        const int reliable = std::min(f.is_polynomial() ? std::numeric_limits<int>::max() : f.truncation(),
                                      g.is_polynomial() ? std::numeric_limits<int>::max() : g.truncation());
        c.resize(static_cast<std::size_t>(std::min(n, reliable)) + 1);
    }
    return AnalyticFn(std::move(c), both_exact ? Tail::exact() : Tail::unknown());
}

inline AnalyticFn add(const AnalyticFn& f, const AnalyticFn& g, Complex alpha = 1.0)
{
    const int n = std::max(f.truncation(), g.truncation());
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
    for (int j = 0; j <= n; ++j)
        c[j] = alpha * f.coeff(j) + g.coeff(j);
    const bool exact = f.is_polynomial() && g.is_polynomial();
    if (!exact) {
        const int reliable = std::min(f.is_polynomial() ? n : f.truncation(), g.is_polynomial() ? n : g.truncation());
        c.resize(static_cast<std::size_t>(reliable) + 1);
    }
    return AnalyticFn(std::move(c), exact ? Tail::exact() : Tail::unknown());
}

inline AnalyticFn scale(const AnalyticFn& f, Complex alpha)
{
    std::vector<Complex> c = f.coeffs();
    for (auto& x : c)
        x *= alpha;
    Tail tail = f.tail();
    if (tail.kind == TailKind::geometric)
        tail.bound *= std::abs(alpha);
    std::optional<ClosedForm> cf = f.closed_form();
    if (cf)
        cf->scale *= alpha;
    return AnalyticFn(std::move(c), tail, cf, f.label());
}

/// T_g^{n,k} f = I^n( f^(k) g^(n-k) ).
inline AnalyticFn apply_tgnk(const AnalyticFn& g, const AnalyticFn& f, int n, int k)
{
    if (!(k >= 0 && k < n))
        fail(ErrorKind::parameter, "apply_tgnk requires 0 <= k < n");
    return integrate(cauchy_product(derivative(f, k), derivative(g, n - k)), n);
}

// ---------------------------------------------------------------------------
// symbol families

inline AnalyticFn symbol_log(int N = default_truncation)
{
    std::vector<Complex> c(static_cast<std::size_t>(N) + 1, Complex(0.0, 0.0));
    for (int j = 1; j <= N; ++j)
        c[j] = 1.0 / j;
    ClosedForm cf;
    cf.family = SymbolFamily::log_singular;
    return AnalyticFn(std::move(c), Tail::unknown(), cf, "log");
}

/// (1 - z)^{-s}.
inline AnalyticFn symbol_power(double s, int N = default_truncation)
{
    if (!(s > 0.0))
        fail(ErrorKind::parameter, "power-singular symbol requires s > 0");
    std::vector<Complex> c(static_cast<std::size_t>(N) + 1);
    double cj = 1.0;
    c[0] = 1.0;
    for (int j = 1; j <= N; ++j) {
        cj *= (s + j - 1.0) / j;
        c[j] = cj;
    }
    ClosedForm cf;
    cf.family = SymbolFamily::power_singular;
    cf.s = s;
    std::ostringstream os;
    os.precision(17);
    os << "pow:s=" << s;
    return AnalyticFn(std::move(c), Tail::unknown(), cf, os.str());
}

/// F_a(z) = ((1-|a|)/(1 - conj(a) z))^gamma.
inline AnalyticFn symbol_carleson(Complex a, double gamma, int N = default_truncation)
{
    if (!(gamma > 0.0))
        fail(ErrorKind::parameter, "carleson symbol requires gamma > 0");
    const double ma = std::abs(a);
    if (!(ma < 1.0))
        fail(ErrorKind::parameter, "carleson symbol requires |a| < 1");
    std::vector<Complex> c(static_cast<std::size_t>(N) + 1);
    const double lead = std::pow(1.0 - ma, gamma);
    double mag = lead;
    const Complex ac = std::conj(a);
    Complex phase(1.0, 0.0);
    const Complex unit = ma > 0.0 ? ac / ma : Complex(1.0, 0.0);
    c[0] = lead;
    for (int j = 1; j <= N; ++j) {
        mag *= ma * (gamma + j - 1.0) / j;
        phase *= unit;
        c[j] = mag * phase;
    }
    Tail tail = Tail::exact();
    if (ma > 0.0) {
        double q = ma;
        if (gamma > 1.0)
            q = ma * (gamma + N) / (N + 1.0);
        if (q < 1.0)
            tail = Tail::geometric(q, std::max(mag, 1e-300) / std::pow(q, N));
        else
            tail = Tail::unknown();
    } else {
        c.resize(1);
    }
    ClosedForm cf;
    cf.family = SymbolFamily::carleson;
    cf.s = gamma;
    cf.a = a;
    std::ostringstream os;
    os.precision(17);
    os << "carleson:a=" << a.real() << ",gamma=" << gamma;
    return AnalyticFn(std::move(c), tail, ma > 0.0 ? std::optional<ClosedForm>(cf) : std::nullopt, os.str());
}

/// sum_j z^{2^j}.
inline AnalyticFn symbol_lacunary(int N = default_truncation)
{
    std::vector<Complex> c(static_cast<std::size_t>(N) + 1, Complex(0.0, 0.0));
    for (long long p = 1; p <= N; p *= 2)
        c[static_cast<std::size_t>(p)] = 1.0;
    return AnalyticFn(std::move(c), Tail::unknown(), std::nullopt, "lacunary");
}

/// Horner evaluation helper matching the free-function style of the calculus.
inline Complex evaluate(const AnalyticFn& f, Complex z) { return f(z); }

} // namespace bergman_lab
