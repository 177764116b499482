#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuracycle {

struct UnivariateRoots {
    std::vector<std::complex<double>> roots;
    /// Number of leading coefficients dropped as numerically zero.
    int trimmed = 0;
    /// Degree after trimming.
    int degree = 0;
    /// Largest scaled residual |q(r)| / (max|c| (1+|r|)^deg) over the roots.
    double max_scaled_residual = 0.0;
};

class RootFindingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All roots of q(s) = sum_k coeffs[k] s^k by Aberth-Ehrlich iteration with
/// a Newton polish.  Leading coefficients with |c| <= trim_threshold * max|c|
/// are dropped first.  Throws RootFindingError for the zero polynomial or if
/// some root fails the scaled residual bound 1e-8.
UnivariateRoots univariate_roots(const std::vector<std::complex<double>>& coeffs,
                                 double trim_threshold = 1e-10);

/// Horner evaluation.
std::complex<double> evaluate_polynomial(const std::vector<std::complex<double>>& coeffs,
                                         std::complex<double> s);

}  // namespace kuracycle
