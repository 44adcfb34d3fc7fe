#pragma once
//
// Common vocabulary for the lab: complex scalars, the error type and a few
// small numeric helpers shared by every module.
//

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bergman_lab {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Classifies failures so the CLI can emit a machine-readable error.
enum class ErrorKind {
    domain,      ///< argument outside the region where the quantity is defined
    parameter,   ///< invalid combination of integer/real parameters
    numerical,   ///< quadrature or iteration failed to converge
    construction,
    io,
    config,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::construction: return "construction";
    case ErrorKind::io: return "io";
    case ErrorKind::config: return "config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

/// j!/(j-k)! as a double; 1 when k == 0.
inline double falling_factorial(int j, int k)
{
    double out = 1.0;
    for (int i = 0; i < k; ++i)
        out *= static_cast<double>(j - i);
    return out;
}

/// (x)_m = x (x+1) ... (x+m-1).
inline double rising_factorial(double x, int m)
{
    double out = 1.0;
    for (int i = 0; i < m; ++i)
        out *= x + i;
    return out;
}

inline double factorial(int n) { return falling_factorial(n, n); }

/// 1 - tanh(x) without cancellation.
inline double one_minus_tanh(double x) { return 2.0 / (std::exp(2.0 * x) + 1.0); }

/// Wraps an angle difference into (-pi, pi].
inline double wrap_angle(double t)
{
    t = std::remainder(t, 2.0 * pi);
    if (t <= -pi)
        t += 2.0 * pi;
    return t;
}

} // namespace bergman_lab
