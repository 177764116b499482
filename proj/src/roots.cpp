#include "kuracycle/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kuracycle {

using cd = std::complex<double>;

cd evaluate_polynomial(const std::vector<cd>& coeffs, cd s)
{
    cd r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        r = r * s + *it;
    return r;
}

namespace {

// p(s) and p'(s) together.
std::pair<cd, cd> eval_with_derivative(const std::vector<cd>& c, cd s)
{
    cd p = 0.0, dp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * s + p;
        p = p * s + *it;
    }
    return {p, dp};
}

double scaled_residual(const std::vector<cd>& c, cd s, double cmax)
{
    const int deg = static_cast<int>(c.size()) - 1;
    return std::abs(evaluate_polynomial(c, s)) / (cmax * std::pow(1.0 + std::abs(s), deg));
}

}  // namespace

UnivariateRoots univariate_roots(const std::vector<cd>& coeffs, double trim_threshold)
{
    double cmax = 0.0;
    for (const auto& c : coeffs)
        cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0)
        throw RootFindingError("univariate_roots: zero polynomial");

    std::vector<cd> c = coeffs;
    UnivariateRoots out;
    while (!c.empty() && std::abs(c.back()) <= trim_threshold * cmax) {
        c.pop_back();
        ++out.trimmed;
    }
    const int deg = static_cast<int>(c.size()) - 1;
    out.degree = deg;
    if (deg <= 0)
        return out;

    // Monic copy for iteration.
    std::vector<cd> m(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        m[k] = c[k] / c.back();

    // Fujiwara-type radius for the initial circle.
    double radius = 0.0;
    for (int k = 0; k < deg; ++k)
        radius = std::max(radius, std::pow(std::abs(m[k]), 1.0 / (deg - k)));
    radius = std::max(radius, 1e-3);

    std::vector<cd> z(deg);
    for (int k = 0; k < deg; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / deg + 0.4);

    constexpr int max_iter = 500;
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
        double max_step = 0.0;
        for (int k = 0; k < deg; ++k) {
            const auto [p, dp] = eval_with_derivative(m, z[k]);
            if (p == cd(0.0))
                continue;
            const cd ratio = p / dp;
            cd repulsion = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != k)
                    repulsion += 1.0 / (z[k] - z[j]);
            const cd step = ratio / (1.0 - ratio * repulsion);
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        converged = max_step < 1e-15;
    }

    // Newton polish on the unnormalized polynomial.
    for (auto& r : z)
        for (int it = 0; it < 3; ++it) {
            const auto [p, dp] = eval_with_derivative(c, r);
            if (dp == cd(0.0))
                break;
            const cd next = r - p / dp;
            if (scaled_residual(c, next, cmax) > scaled_residual(c, r, cmax))
                break;
            r = next;
        }

    for (const auto& r : z) {
        const double res = scaled_residual(c, r, cmax);
        out.max_scaled_residual = std::max(out.max_scaled_residual, res);
        if (!(res < 1e-8)) {
            std::ostringstream msg;
            msg << "univariate_roots: root " << r << " has scaled residual " << res
                << " (degree " << deg << ", converged=" << converged << ")";
            throw RootFindingError(msg.str());
        }
    }
    out.roots = std::move(z);
    return out;
}

}  // namespace kuracycle
