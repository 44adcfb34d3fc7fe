#pragma once
//
// Finiteness detectors shared by norms, operators and criteria: layered
// integral divergence, power fits of boundary profiles, truncation scans.
//

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "core.hpp"

namespace bergman_lab {

/// Least-squares fit log y = c + e log x.
struct PowerFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    int points = 0;
};

inline PowerFit fit_power(const std::vector<double>& x, const std::vector<double>& y)
{
    PowerFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    fit.points = n;
    if (n < 2)
        return fit;
    const double den = n * sxx - sx * sx;
    if (den == 0.0)
        return fit;
    fit.exponent = (n * sxy - sx * sy) / den;
    fit.log_constant = (sy - fit.exponent * sx) / n;
    return fit;
}

/// Ordinary least squares y = c + s x.
inline std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {(sy - slope * sx) / n, slope};
}

// ---------------------------------------------------------------------------
// layered integrals

struct DivergenceOptions {
    int window = 5;
    double growth = 0.10;     ///< cumulative growth over the window
    double rel_tol = 1e-9;    ///< tolerance of the non-decreasing test
};

/// Integral accumulated over dyadic boundary layers (index 0 = outermost).
struct LayeredIntegral {
    double interior = 0.0;
    std::vector<double> layers;
    double tail = 0.0;        ///< extrapolated remainder beyond the last layer
    bool divergent = false;

    double value() const
    {
        if (divergent)
            return std::numeric_limits<double>::infinity();
        double s = interior;
        for (double x : layers)
            s += x;
        return s + tail;
    }
};

/// Infinite when the last `window` layer contributions are non-decreasing and
/// the running sum grew by more than `growth` over them.
inline bool layers_diverge(const std::vector<double>& layers, double interior,
                           const DivergenceOptions& opt = {})
{
    const int n = static_cast<int>(layers.size());
    if (n < opt.window)
        return false;
    for (int i = n - opt.window + 1; i < n; ++i)
        if (layers[i] < layers[i - 1] * (1.0 - opt.rel_tol))
            return false;
    double before = interior;
    for (int i = 0; i < n - opt.window; ++i)
        before += layers[i];
    double after = before;
    for (int i = n - opt.window; i < n; ++i)
        after += layers[i];
    if (!(after > 0.0))
        return false;
    return after > (1.0 + opt.growth) * before;
}

/// Sets the divergence flag and, for convergent integrals, a geometric tail
/// estimate from the last two layers.
inline void finalize_layers(LayeredIntegral& li, const DivergenceOptions& opt = {})
{
    li.divergent = layers_diverge(li.layers, li.interior, opt);
    li.tail = 0.0;
    if (li.divergent || li.layers.size() < 2)
        return;
    const double last = li.layers.back(), prev = li.layers[li.layers.size() - 2];
    if (last > 0.0 && prev > 0.0 && last < prev)
        li.tail = last * (last / prev) / (1.0 - last / prev);
}

// ---------------------------------------------------------------------------
// boundary profiles

enum class ProfileVerdict { vanishing, bounded, unbounded };

inline std::string to_string(ProfileVerdict v)
{
    switch (v) {
    case ProfileVerdict::vanishing: return "vanishing";
    case ProfileVerdict::bounded: return "bounded";
    case ProfileVerdict::unbounded: return "unbounded";
    }
    return "unknown";
}

struct ProfileFit {
    PowerFit fit;              ///< profile ~ gap^exponent over the window
    ProfileVerdict verdict = ProfileVerdict::bounded;
    double sup = 0.0;
    double last = 0.0;
    bool identically_zero = false;
};

/// Classifies a boundary profile sampled at decreasing gaps: unbounded when
/// it grows like gap^e with e < -threshold, vanishing when e > threshold or
/// the tail of the profile is identically zero.
inline ProfileFit classify_profile(const std::vector<double>& gaps, const std::vector<double>& values,
                                   int window = 5, double threshold = 0.05)
{
    ProfileFit out;
    for (double v : values)
        out.sup = std::max(out.sup, v);
    if (values.empty())
        return out;
    out.last = values.back();
    const int n = static_cast<int>(values.size());
    const int w = std::min(window, n);
    bool zero = true;
    for (int i = n - w; i < n; ++i)
        zero = zero && values[i] == 0.0;
    if (zero) {
        out.identically_zero = true;
        out.verdict = ProfileVerdict::vanishing;
        return out;
    }
    std::vector<double> x(gaps.end() - w, gaps.end()), y(values.end() - w, values.end());
    out.fit = fit_power(x, y);
    if (out.fit.exponent < -threshold)
        out.verdict = ProfileVerdict::unbounded;
    else if (out.fit.exponent > threshold)
        out.verdict = ProfileVerdict::vanishing;
    else
        out.verdict = ProfileVerdict::bounded;
    return out;
}

// ---------------------------------------------------------------------------
// truncation scans

enum class GrowthVerdict { saturating, growing, inconclusive };

inline std::string to_string(GrowthVerdict v)
{
    switch (v) {
    case GrowthVerdict::saturating: return "saturating";
    case GrowthVerdict::growing: return "growing";
    case GrowthVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct GrowthOptions {
    double saturation_ratio = 1.05;
    double growth_exponent = 0.05;
};

struct GrowthClassification {
    GrowthVerdict verdict = GrowthVerdict::inconclusive;
    double last_ratio = 1.0;
    PowerFit fit;
};

/// Saturating if the last increment ratio is below 1.05, growing if a
/// power fit of the values against the scan parameter has exponent > 0.05.
inline GrowthClassification classify_growth(const std::vector<double>& params, const std::vector<double>& values,
                                            const GrowthOptions& opt = {})
{
    GrowthClassification out;
    const std::size_t n = values.size();
    if (n < 2)
        return out;
    const double a = values[n - 2], b = values[n - 1];
    if (a == 0.0 && b == 0.0) {
        out.last_ratio = 1.0;
        out.verdict = GrowthVerdict::saturating;
        return out;
    }
    out.last_ratio = a > 0.0 ? b / a : std::numeric_limits<double>::infinity();
    out.fit = fit_power(params, values);
    if (out.last_ratio < opt.saturation_ratio)
        out.verdict = GrowthVerdict::saturating;
    else if (out.fit.exponent > opt.growth_exponent)
        out.verdict = GrowthVerdict::growing;
    return out;
}

/// Geometric fit of ring (or layer) sums: converges when the ratio of
/// consecutive sums settles below 1; the remainder is extrapolated.
struct GeometricTail {
    double ratio = 0.0;
    double partial = 0.0;
    double extrapolated = 0.0;
    bool converges = false;
};

inline GeometricTail geometric_tail(const std::vector<double>& terms, int window = 5, double max_ratio = 0.999)
{
    GeometricTail out;
    for (double t : terms)
        out.partial += t;
    const int n = static_cast<int>(terms.size());
    const int w = std::min(window, n);
    if (w < 2) {
        out.extrapolated = out.partial;
        return out;
    }
    // log-linear fit of the last terms against their index
    std::vector<double> x, y;
    bool all_zero = true;
    for (int i = n - w; i < n; ++i) {
        if (terms[i] > 0.0) {
            x.push_back(i);
            y.push_back(std::log(terms[i]));
            all_zero = false;
        }
    }
    if (all_zero) {
        out.converges = true;
        out.extrapolated = out.partial;
        return out;
    }
    if (x.size() < 2) {
        out.extrapolated = out.partial;
        return out;
    }
    const auto [c, slope] = fit_line(x, y);
    (void)c;
    out.ratio = std::exp(slope);
    out.converges = out.ratio < max_ratio;
    out.extrapolated = out.converges ? out.partial + terms.back() * out.ratio / (1.0 - out.ratio)
                                     : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace bergman_lab
