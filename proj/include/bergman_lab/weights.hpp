#pragma once
//
// Radial weights on the unit disk and the scalar quantities derived from
// them: the tail integral hat(w), the logarithmic tail star(w), moments
// w_j, the doubling diagnostic and the kernel-moment transform.
//
// Area measure is normalised, A(D) = 1, so the total mass is 2*moment(1).
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core.hpp"
#include "quadrature.hpp"

namespace bergman_lab {

enum class WeightKind { standard_alpha, log_doubling, exponential, tabulated, kernel_transform };

class Weight {
public:
    static Weight standard_alpha(double alpha)
    {
        if (!(alpha > -1.0))
            fail(ErrorKind::parameter, "standard weight requires alpha > -1");
        return Weight(std::make_shared<Impl>(WeightKind::standard_alpha, alpha));
    }

    static Weight log_doubling(double beta)
    {
        if (!(beta > 1.0))
            fail(ErrorKind::parameter, "log weight requires beta > 1");
        return Weight(std::make_shared<Impl>(WeightKind::log_doubling, beta));
    }

    static Weight exponential(double c)
    {
        if (!(c > 0.0))
            fail(ErrorKind::parameter, "exponential weight requires c > 0");
        return Weight(std::make_shared<Impl>(WeightKind::exponential, c));
    }

    /// Samples (radius, density) with radius in [0,1) and density > 0; the
    /// log-density is interpolated linearly in the radius.
    static Weight tabulated(std::vector<std::pair<double, double>> samples, std::string source = "")
    {
        if (samples.size() < 2)
            fail(ErrorKind::parameter, "tabulated weight needs at least two samples");
        std::sort(samples.begin(), samples.end());
        for (const auto& [r, d] : samples) {
            if (!(r >= 0.0 && r < 1.0) || !(d > 0.0))
                fail(ErrorKind::parameter, "tabulated weight samples need r in [0,1), density > 0");
        }
        auto impl = std::make_shared<Impl>(WeightKind::tabulated, 0.0);
        for (const auto& [r, d] : samples) {
            impl->tab_r.push_back(r);
            impl->tab_logd.push_back(std::log(d));
        }
        impl->source = std::move(source);
        return Weight(std::move(impl));
    }

    static Weight from_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            fail(ErrorKind::io, "cannot open weight file: " + path);
        std::vector<std::pair<double, double>> samples;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#')
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double r, d;
            if (ls >> r >> d)
                samples.emplace_back(r, d);
        }
        return tabulated(std::move(samples), path);
    }

    /// Weight whose density is v_k(t) = 2/(k-1)! int_t^1 s (s^2-t^2)^{k-1} w(s) ds,
    /// i.e. k applications of v(t) = 2 int_t^1 s w(s) ds folded into one kernel.
    static Weight kernel_transform(const Weight& base, int k)
    {
        if (k < 1)
            fail(ErrorKind::parameter, "kernel_transform requires k >= 1");
        auto impl = std::make_shared<Impl>(WeightKind::kernel_transform, static_cast<double>(k));
        impl->base = base.impl_;
        return Weight(std::move(impl));
    }

    WeightKind kind() const { return impl_->kind; }
    double parameter() const { return impl_->param; }

    /// Canonical textual form, matching the CLI grammar where one exists.
    std::string spec() const
    {
        std::ostringstream os;
        os.precision(17);
        switch (impl_->kind) {
        case WeightKind::standard_alpha: os << "std:alpha=" << impl_->param; break;
        case WeightKind::log_doubling: os << "log:beta=" << impl_->param; break;
        case WeightKind::exponential: os << "exp:c=" << impl_->param; break;
        case WeightKind::tabulated: os << "file:" << impl_->source; break;
        case WeightKind::kernel_transform:
            os << "upsilon:k=" << static_cast<int>(impl_->param) << "(" << Weight(impl_->base).spec() << ")";
            break;
        }
        return os.str();
    }

    bool is_analytic_kind() const
    {
        return impl_->kind == WeightKind::standard_alpha || impl_->kind == WeightKind::log_doubling ||
               impl_->kind == WeightKind::exponential;
    }

    double eval(double r) const
    {
        if (!(r >= 0.0 && r < 1.0))
            fail(ErrorKind::domain, "weight evaluated outside [0,1)");
        return impl_->density_gap(1.0 - r);
    }

    /// Density as a function of the gap u = 1 - r, u in (0, 1].
    double density_gap(double u) const { return impl_->density_gap(u); }

    /// int_0^u density_gap(v) dv for small u; closes the boundary layers.
    double tail_mass(double u) const { return impl_->tail_mass(u); }

    /// int_{r0}^1 h(t, 1-t) w(t) dt with the boundary-layered rule.
    template <class H>
    double integrate_against(H&& h, double r0, const quad::RadialOptions& opt = {}) const
    {
        return impl_->integrate_against(h, r0, opt);
    }

    double hat(double r) const
    {
        if (!(r >= 0.0 && r <= 1.0))
            fail(ErrorKind::domain, "hat evaluated outside [0,1]");
        if (r == 1.0)
            return 0.0;
        return integrate_against([](double, double) { return 1.0; }, r);
    }

    /// int_{1-u0}^1 h(t, 1-t) w(t) dt with layers built on the gap itself.
    template <class H>
    double integrate_from_gap(H&& h, double u0, const quad::RadialOptions& opt = {}) const
    {
        return impl_->integrate_from_gap(h, u0, opt);
    }

    /// Same as hat but with the argument given as the gap 1 - r.
    double hat_gap(double u) const
    {
        if (u <= 0.0)
            return 0.0;
        return impl_->integrate_from_gap([](double, double) { return 1.0; }, u);
    }

    double star(double r) const
    {
        if (!(r > 0.0 && r < 1.0))
            fail(ErrorKind::domain, "star is defined for 0 < r < 1");
        return impl_->star(r);
    }

    double moment(int j) const
    {
        if (j < 0)
            fail(ErrorKind::parameter, "moment index must be nonnegative");
        return impl_->moment(j);
    }

    /// w(D) under A(D) = 1.
    double mass() const { return 2.0 * moment(1); }

    /// ||z^j||^2 in A^2_w.
    double monomial_norm2(int j) const { return 2.0 * moment(2 * j + 1); }

    const void* identity() const { return impl_.get(); }

private:
    struct Impl {
        Impl(WeightKind k, double p) : kind(k), param(p) {}

        WeightKind kind;
        double param;
        std::vector<double> tab_r, tab_logd;
        std::string source;
        std::shared_ptr<const Impl> base;

        mutable std::mutex mutex;
        mutable std::vector<double> moment_t, moment_logt, moment_wd;
        mutable double moment_tail = 0.0;
        mutable std::unordered_map<std::uint64_t, double> star_memo;
        mutable std::map<int, double> moment_memo;

        double density_gap(double u) const
        {
            switch (kind) {
            case WeightKind::standard_alpha:
                if (param == 0.0)
                    return 1.0;
                return std::pow(u * (2.0 - u), param);
            case WeightKind::log_doubling: {
                const double l = 1.0 - std::log(u);
                return 1.0 / (u * std::pow(l, param));
            }
            case WeightKind::exponential:
                return std::exp(-param / u);
            case WeightKind::tabulated:
                return std::exp(interp_logd(1.0 - u));
            case WeightKind::kernel_transform:
                return transform_density(u);
            }
            return 0.0;
        }

        double tail_mass(double u) const
        {
            if (u <= 0.0)
                return 0.0;
            switch (kind) {
            case WeightKind::standard_alpha:
                return std::pow(2.0, param) * std::pow(u, param + 1.0) / (param + 1.0) *
                       (1.0 - param * (param + 1.0) * u / (2.0 * (param + 2.0)));
            case WeightKind::log_doubling: {
                const double l = 1.0 - std::log(u);
                return std::pow(l, 1.0 - param) / (param - 1.0);
            }
            case WeightKind::exponential:
                return u * u * std::exp(-param / u) / param;
            case WeightKind::tabulated:
                return u * std::exp(tab_logd.back());
            case WeightKind::kernel_transform:
                return u * density_gap(0.5 * u);
            }
            return 0.0;
        }

        double interp_logd(double r) const
        {
            if (r <= tab_r.front())
                return tab_logd.front();
            if (r >= tab_r.back())
                return tab_logd.back();
            const auto it = std::upper_bound(tab_r.begin(), tab_r.end(), r);
            const std::size_t i = static_cast<std::size_t>(it - tab_r.begin());
            const double s = (r - tab_r[i - 1]) / (tab_r[i] - tab_r[i - 1]);
            return tab_logd[i - 1] + s * (tab_logd[i] - tab_logd[i - 1]);
        }

        double transform_density(double u) const
        {
            const int k = static_cast<int>(param);
            const double t = 1.0 - u;
            const double scale = 2.0 / factorial(k - 1);
            // s^2 - t^2 = (u - v)(2 - u - v) with v = 1 - s
            auto h = [u, k](double s, double v) {
                return s * std::pow((u - v) * (2.0 - u - v), k - 1);
            };
            quad::RadialOptions opt;
            opt.order = 16;
            return scale * base->integrate_from_gap(h, u, opt, t);
        }

        template <class H>
        double integrate_against(H& h, double r0, const quad::RadialOptions& opt) const
        {
            const auto rule = quad::make_radial_rule(r0, opt);
            quad::CompensatedSum sum;
            for (std::size_t i = 0; i < rule.t.size(); ++i)
                sum.add(rule.w[i] * h(rule.t[i], rule.u[i]) * density_gap(rule.u[i]));
            sum.add(h(1.0, 0.0) * tail_mass(rule.tail_gap));
            return sum.value();
        }

        /// Integral from r0 = 1 - u0, with the boundary layers built directly
        /// on the gap so that u0 << 1 keeps full precision.
        template <class H>
        double integrate_from_gap(H&& h, double u0, const quad::RadialOptions& opt = {},
                                  double r0_hint = -1.0) const
        {
            const double r0 = r0_hint >= 0.0 ? r0_hint : 1.0 - u0;
            if (u0 > 0.5)
                return integrate_against(h, r0, opt);
            const auto& gl = quad::gauss_legendre(opt.order);
            quad::CompensatedSum sum;
            double g = u0;
            for (int m = 0; m < opt.depth; ++m) {
                const double mid = 0.75 * g, half = 0.25 * g;
                for (int i = 0; i < opt.order; ++i) {
                    const double v = mid + half * gl.nodes[i];
                    sum.add(half * gl.weights[i] * h(1.0 - v, v) * density_gap(v));
                }
                g *= 0.5;
            }
            sum.add(h(1.0, 0.0) * tail_mass(g));
            return sum.value();
        }

        double star(double r) const
        {
            std::uint64_t key;
            std::memcpy(&key, &r, sizeof key);
            {
                std::lock_guard lock(mutex);
                if (auto it = star_memo.find(key); it != star_memo.end())
                    return it->second;
            }
            const double ur = 1.0 - r;
            // log(s/r) written through the gaps to keep precision near 1
            auto h = [r, ur](double s, double v) {
                if (s <= 0.5)
                    return s * std::log(s / r);
                return s * std::log1p((ur - v) / r);
            };
            quad::RadialOptions opt;
            opt.grade_low = true;
            opt.low_depth = 30;
            const double value = r >= 0.5 ? integrate_from_gap(h, ur, opt, r) : integrate_against(h, r, opt);
            std::lock_guard lock(mutex);
            star_memo.emplace(key, value);
            return value;
        }

        double moment(int j) const
        {
            std::lock_guard lock(mutex);
            if (auto it = moment_memo.find(j); it != moment_memo.end())
                return it->second;
            if (moment_t.empty()) {
                quad::RadialOptions opt;
                opt.depth = 48;
                const auto rule = quad::make_radial_rule(0.0, opt);
                for (std::size_t i = 0; i < rule.t.size(); ++i) {
                    moment_t.push_back(rule.t[i]);
                    moment_logt.push_back(std::log1p(-rule.u[i]));
                    moment_wd.push_back(rule.w[i] * density_gap(rule.u[i]));
                }
                moment_tail = tail_mass(rule.tail_gap);
            }
            quad::CompensatedSum sum;
            for (std::size_t i = 0; i < moment_t.size(); ++i)
                sum.add(moment_wd[i] * std::exp(j * moment_logt[i]));
            sum.add(moment_tail);
            const double value = sum.value();
            moment_memo.emplace(j, value);
            return value;
        }
    };

    explicit Weight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// diagnostics

struct DoublingProfile {
    std::vector<double> ratios;  ///< hat(1-2^-m) / hat(1-2^-(m+1))
    double max_ratio = 0.0;      ///< estimated doubling constant
    bool doubling_like = true;
    bool truncated = false;      ///< hat underflowed before the requested depth
    int requested_depth = 0;
};

struct DoublingOptions {
    double growth_factor = 1.2;  ///< non-doubling if ratios grow by this over a window with non-shrinking steps
    int window = 5;
};

inline DoublingProfile doubling_profile(const Weight& w, int depth, const DoublingOptions& opt = {})
{
    if (depth < 2)
        fail(ErrorKind::parameter, "doubling_profile requires depth >= 2");
    DoublingProfile out;
    out.requested_depth = depth;
    double prev = w.hat_gap(1.0);
    for (int m = 0; m < depth; ++m) {
        const double next = w.hat_gap(std::ldexp(1.0, -(m + 1)));
        if (!(next > 1e-290) || !(prev > 1e-290)) {
            out.truncated = true;
            break;
        }
        out.ratios.push_back(prev / next);
        prev = next;
    }
    for (double r : out.ratios)
        out.max_ratio = std::max(out.max_ratio, r);
    const int n = static_cast<int>(out.ratios.size());
    for (int i = 0; i + opt.window - 1 < n; ++i) {
        bool increasing = true;
        for (int j = i; j < i + opt.window - 1; ++j)
            increasing = increasing && out.ratios[j + 1] > out.ratios[j];
        const double first_step = out.ratios[i + 1] - out.ratios[i];
        const double last_step = out.ratios[i + opt.window - 1] - out.ratios[i + opt.window - 2];
        // converging ratios (standard weights) have shrinking steps
        if (increasing && out.ratios[i + opt.window - 1] >= opt.growth_factor * out.ratios[i] &&
            last_step >= first_step) {
            out.doubling_like = false;
            break;
        }
    }
    return out;
}

/// hat(r) / ((1-r) w(r)) at each radius; bounded above and below near the
/// boundary for regular weights.
inline std::vector<double> regular_ratio_profile(const Weight& w, const std::vector<double>& radii)
{
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const double u = 1.0 - r;
        out.push_back(w.hat_gap(u) / (u * w.density_gap(u)));
    }
    return out;
}

struct RegularityVerdict {
    std::vector<double> radii, ratios;
    double min_ratio = 0.0, max_ratio = 0.0;
    bool bounded = false;
};

/// Regularity check on [lo, hi]: the ratio profile must stay inside
/// [1/band, band].
inline RegularityVerdict regular_ratio_check(const Weight& w, double lo = 0.5, double hi = 0.999,
                                             int points = 24, double band = 20.0)
{
    RegularityVerdict v;
    const double ulo = 1.0 - hi, uhi = 1.0 - lo;
    for (int i = 0; i < points; ++i) {
        const double u = uhi * std::pow(ulo / uhi, static_cast<double>(i) / (points - 1));
        v.radii.push_back(1.0 - u);
    }
    v.ratios = regular_ratio_profile(w, v.radii);
    v.min_ratio = *std::min_element(v.ratios.begin(), v.ratios.end());
    v.max_ratio = *std::max_element(v.ratios.begin(), v.ratios.end());
    v.bounded = v.min_ratio > 1.0 / band && v.max_ratio < band;
    return v;
}

/// Kernel-moment transform: 2 v_{2(j-k)+1} = (j-k)!/j! * 2 w_{2j+1}, j >= k.
inline Weight upsilon_transform(const Weight& w, int k)
{
    if (k < 0)
        fail(ErrorKind::parameter, "upsilon_transform requires k >= 0");
    if (k == 0)
        return w;
    return Weight::kernel_transform(w, k);
}

} // namespace bergman_lab
