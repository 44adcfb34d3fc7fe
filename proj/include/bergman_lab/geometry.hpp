#pragma once
//
// Disk geometry: pseudo-hyperbolic and Bergman distances, Carleson squares,
// non-tangential cones and tents, Bergman balls, and r-lattices.
//
// Bergman balls D(z, r) are balls of the Bergman metric beta, the same metric
// the lattice separation is stated in.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <variant>
#include <vector>

#include "core.hpp"
#include "weights.hpp"

namespace bergman_lab {

/// A point of the open unit disk.
class DiskPoint {
public:
    DiskPoint() = default;
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}
    explicit DiskPoint(Complex z) : z_(z)
    {
        if (!(std::norm(z) < 1.0))
            fail(ErrorKind::domain, "point outside the open unit disk");
    }

    Complex value() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    double modulus() const { return std::abs(z_); }
    double arg() const { return std::arg(z_); }

private:
    Complex z_{0.0, 0.0};
};

inline double pseudohyperbolic(Complex z, Complex w)
{
    return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

inline double pseudohyperbolic(const DiskPoint& z, const DiskPoint& w)
{
    return pseudohyperbolic(z.value(), w.value());
}

/// beta(z, w) = atanh(rho(z, w)).
inline double bergman_distance(Complex z, Complex w)
{
    return std::atanh(pseudohyperbolic(z, w));
}

inline double bergman_distance(const DiskPoint& z, const DiskPoint& w)
{
    return bergman_distance(z.value(), w.value());
}

/// Disk automorphism phi_a(z) = (a - z) / (1 - conj(a) z).
inline Complex mobius(Complex a, Complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

// ---------------------------------------------------------------------------
// regions

struct CarlesonSquare { DiskPoint apex; };
struct Cone { Complex vertex; };   ///< vertex may lie on the closed disk minus 0
struct Tent { DiskPoint base; };
struct BergmanBall { DiskPoint center; double radius; };

using Region = std::variant<CarlesonSquare, Cone, Tent, BergmanBall>;

namespace detail {

inline bool in_cone(Complex vertex, Complex u)
{
    const double zv = std::abs(vertex);
    const double r = std::abs(u);
    if (r == 0.0)
        return true;  // the apex direction is irrelevant at the origin
    return std::abs(wrap_angle(std::arg(u) - std::arg(vertex))) < 0.5 * (1.0 - r / zv);
}

} // namespace detail

inline bool region_contains(const Region& reg, const DiskPoint& z)
{
    return std::visit(
        [&](const auto& g) -> bool {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CarlesonSquare>) {
                const double a = g.apex.modulus();
                if (a == 0.0)
                    fail(ErrorKind::domain, "Carleson square apex must be nonzero");
                const double r = z.modulus();
                if (!(r > a))
                    return false;
                return std::abs(wrap_angle(g.apex.arg() - z.arg())) < 0.5 * (1.0 - a);
            } else if constexpr (std::is_same_v<T, Cone>) {
                if (std::abs(g.vertex) == 0.0 || std::abs(g.vertex) > 1.0)
                    fail(ErrorKind::domain, "cone vertex must satisfy 0 < |z| <= 1");
                return detail::in_cone(g.vertex, z.value());
            } else if constexpr (std::is_same_v<T, Tent>) {
                // z in T_u  <=>  u in Gamma_z
                if (z.modulus() == 0.0)
                    return false;
                return detail::in_cone(z.value(), g.base.value());
            } else {
                return bergman_distance(g.center, z) < g.radius;
            }
        },
        reg);
}

/// w(S_a) as a function of the gap 1 - |a|.
inline double weighted_square_measure_gap(const Weight& w, double gap)
{
    const double inner = w.integrate_from_gap([](double s, double) { return s; }, gap);
    return gap / pi * inner;
}

/// w(S_a) = (1-|a|)/pi * int_{|a|}^1 s w(s) ds.
inline double weighted_square_measure(const Weight& w, const DiskPoint& a)
{
    const double m = a.modulus();
    if (m == 0.0)
        fail(ErrorKind::domain, "Carleson square apex must be nonzero");
    return weighted_square_measure_gap(w, 1.0 - m);
}

// ---------------------------------------------------------------------------
// lattices

struct LatticeRing {
    int index = 0;
    double hyperbolic_radius = 0.0;  ///< atanh of the modulus
    double modulus = 0.0;
    double gap = 1.0;                ///< 1 - modulus, computed without cancellation
    long long count = 1;
    double phase = 0.0;

    Complex point(long long i) const
    {
        const double theta = phase + 2.0 * pi * static_cast<double>(i) / static_cast<double>(count);
        return std::polar(modulus, theta);
    }
};

/// Ring-structured r-lattice: points on circles of hyperbolic radius m*delta
/// with equal angular spacing; deep rings are described, not materialised.
class Lattice {
public:
    double r() const { return r_; }
    double step() const { return step_; }
    double cutoff() const { return cutoff_; }
    const std::vector<LatticeRing>& rings() const { return rings_; }

    long long size() const
    {
        long long n = 0;
        for (const auto& ring : rings_)
            n += ring.count;
        return n;
    }

    /// First `limit` points sorted by modulus.
    std::vector<Complex> points(long long limit) const
    {
        std::vector<Complex> out;
        for (const auto& ring : rings_) {
            for (long long i = 0; i < ring.count; ++i) {
                if (static_cast<long long>(out.size()) >= limit)
                    return out;
                out.push_back(ring.point(i));
            }
        }
        return out;
    }

    /// Bergman distance from z to the nearest lattice point, scanning only
    /// the rings and angles that can be nearest.
    double nearest_distance(Complex z) const
    {
        const double x = std::atanh(std::min(std::abs(z), 1.0 - 1e-16));
        const int m0 = static_cast<int>(std::floor(x / step_));
        double best = std::numeric_limits<double>::infinity();
        for (int m = m0 - 1; m <= m0 + 2; ++m) {
            if (m < 0 || m >= static_cast<int>(rings_.size()))
                continue;
            const auto& ring = rings_[m];
            if (ring.count == 1) {
                best = std::min(best, bergman_distance(z, ring.point(0)));
                continue;
            }
            const double spacing = 2.0 * pi / static_cast<double>(ring.count);
            const double rel = std::arg(z) - ring.phase;
            const long long i0 = static_cast<long long>(std::floor(rel / spacing));
            for (long long i = i0 - 1; i <= i0 + 2; ++i) {
                const long long idx = ((i % ring.count) + ring.count) % ring.count;
                best = std::min(best, bergman_distance(z, ring.point(idx)));
            }
        }
        return best;
    }

    friend Lattice make_lattice(double r, double cutoff, double kappa);

private:
    double r_ = 0.0, step_ = 0.0, cutoff_ = 0.0;
    std::vector<LatticeRing> rings_;
};

/// Angular spacing on the circle of modulus s so that neighbours are at
/// pseudo-hyperbolic distance >= t.
inline double ring_angle_for_separation(double s, double gap, double t)
{
    // rho^2 = 4 s^2 sin^2(psi/2) / ((1-s^2)^2 + 4 s^2 sin^2(psi/2))
    const double one_minus_s2 = gap * (2.0 - gap);
    const double sine = t * one_minus_s2 / (2.0 * s * std::sqrt(1.0 - t * t));
    if (sine >= 1.0)
        return 2.0 * pi;
    return 2.0 * std::asin(sine);
}

/// Deterministic ring lattice: beta-separated by >= r/5 and covering the
/// disk by balls D(a_j, 5r) down to 1 - |a| >= cutoff.
inline Lattice make_lattice(double r, double cutoff = 1e-6, double kappa = 1.01)
{
    if (!(r > 0.0 && r <= 2.0))
        fail(ErrorKind::parameter, "make_lattice requires 0 < r <= 2");
    if (!(cutoff > 0.0 && cutoff < 0.5))
        fail(ErrorKind::parameter, "make_lattice cutoff must lie in (0, 0.5)");
    Lattice lat;
    lat.r_ = r;
    lat.cutoff_ = cutoff;
    lat.step_ = r / 5.0 * kappa;
    const double t = std::tanh(lat.step_);
    for (int m = 0;; ++m) {
        LatticeRing ring;
        ring.index = m;
        ring.hyperbolic_radius = m * lat.step_;
        ring.modulus = std::tanh(ring.hyperbolic_radius);
        ring.gap = one_minus_tanh(ring.hyperbolic_radius);
        if (m == 0) {
            ring.count = 1;
        } else {
            const double psi = ring_angle_for_separation(ring.modulus, ring.gap, t);
            ring.count = std::max<long long>(1, static_cast<long long>(std::floor(2.0 * pi / psi)));
            ring.phase = (m % 2 == 1) ? pi / static_cast<double>(ring.count) : 0.0;
        }
        lat.rings_.push_back(ring);
        if (ring.gap < cutoff)
            break;
        if (m > 100000)
            fail(ErrorKind::construction, "make_lattice: ring construction did not reach the cutoff");
    }
    // covering radius of the construction is at most ~2*step; 5r must exceed it
    if (2.0 * lat.step_ >= 5.0 * r)
        fail(ErrorKind::construction, "make_lattice: lattice cannot cover with balls of radius 5r");
    return lat;
}

struct LatticeCheck {
    double min_separation = 0.0;   ///< over the checked prefix
    double max_cover_distance = 0.0;
    bool separated = false;
    bool covering = false;
};

/// Separation on the first `prefix` points and covering on `samples`
/// quasi-random points (R2 sequence, area-uniform) inside the lattice range.
inline LatticeCheck check_lattice(const Lattice& lat, long long prefix = 500, int samples = 10000)
{
    LatticeCheck out;
    const auto pts = lat.points(prefix);
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            min_sep = std::min(min_sep, bergman_distance(pts[i], pts[j]));
    out.min_separation = min_sep;
    out.separated = min_sep >= lat.r() / 5.0;

    const double max_mod = lat.rings().back().modulus;
    const double g1 = 0.7548776662466927, g2 = 0.5698402909980532;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double a = std::fmod(0.5 + g1 * (i + 1), 1.0);
        const double b = std::fmod(0.5 + g2 * (i + 1), 1.0);
        const double rad = std::sqrt(a) * max_mod;
        const Complex z = std::polar(rad, 2.0 * pi * b);
        worst = std::max(worst, lat.nearest_distance(z));
    }
    out.max_cover_distance = worst;
    out.covering = worst < 5.0 * lat.r();
    return out;
}

/// CSV with columns re, im, modulus, ring.
inline void write_lattice_csv(std::ostream& os, const Lattice& lat, long long limit)
{
    os << "re,im,modulus,ring\n";
    os.precision(17);
    long long written = 0;
    for (const auto& ring : lat.rings()) {
        for (long long i = 0; i < ring.count && written < limit; ++i, ++written) {
            const Complex p = ring.point(i);
            os << p.real() << ',' << p.imag() << ',' << ring.modulus << ',' << ring.index << '\n';
        }
    }
}

} // namespace bergman_lab
