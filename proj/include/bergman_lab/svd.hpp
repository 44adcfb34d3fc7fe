#pragma once
//
// Singular values of dense complex matrices by one-sided (Hestenes) Jacobi.
// Column rotations keep small singular values to high relative accuracy,
// which Schatten tails depend on.
//

#include <algorithm>
#include <cmath>
#include <vector>

#include "core.hpp"

namespace bergman_lab {

struct SvdOptions {
    double tol = 0.0;      ///< 0 selects 4 * rows * epsilon
    int max_sweeps = 60;
};

struct SvdResult {
    std::vector<double> values;   ///< descending
    int sweeps = 0;
    double residual = 0.0;        ///< largest normalized off-diagonal at exit
};

/// `a` is column-major with `rows` rows and `cols` columns; it is consumed.
inline SvdResult jacobi_singular_values(std::vector<Complex> a, int rows, int cols, const SvdOptions& opt = {})
{
    SvdResult out;
    auto col = [&](int j) { return a.data() + static_cast<std::size_t>(j) * rows; };
    std::vector<double> norm2(cols);
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        const Complex* c = col(j);
        for (int i = 0; i < rows; ++i)
            s += std::norm(c[i]);
        norm2[j] = s;
    }
    const double tol = opt.tol > 0.0 ? opt.tol : 4.0 * rows * 2.220446049250313e-16;
    bool converged = cols < 2;
    for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
        double worst = 0.0;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                const double alpha = norm2[p], beta = norm2[q];
                if (alpha == 0.0 || beta == 0.0)
                    continue;
                Complex* cp = col(p);
                Complex* cq = col(q);
                Complex gamma(0.0, 0.0);
                for (int i = 0; i < rows; ++i)
                    gamma += std::conj(cp[i]) * cq[i];
                const double g = std::abs(gamma);
                const double rel = g / std::sqrt(alpha * beta);
                worst = std::max(worst, rel);
                if (rel <= tol)
                    continue;
                // rotate (a_p, e^{-i phi} a_q) as a real symmetric 2x2 problem
                const Complex phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                double np = 0.0, nq = 0.0;
                for (int i = 0; i < rows; ++i) {
                    const Complex x = cp[i];
                    const Complex y = std::conj(phase) * cq[i];
                    const Complex xn = c * x - s * y;
                    const Complex yn = s * x + c * y;
                    cp[i] = xn;
                    cq[i] = yn;
                    np += std::norm(xn);
                    nq += std::norm(yn);
                }
                norm2[p] = np;
                norm2[q] = nq;
            }
        }
        out.sweeps = sweep + 1;
        out.residual = worst;
        converged = worst <= tol;
    }
    if (!converged && cols >= 2)
        fail(ErrorKind::numerical, "Jacobi SVD did not converge; residual " + std::to_string(out.residual));
    out.values.resize(cols);
    for (int j = 0; j < cols; ++j) {
        // recompute from the columns for accuracy
        double s = 0.0;
        const Complex* c = col(j);
        for (int i = 0; i < rows; ++i)
            s += std::norm(c[i]);
        out.values[j] = std::sqrt(s);
    }
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

} // namespace bergman_lab
