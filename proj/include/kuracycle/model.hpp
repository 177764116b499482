#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>

namespace kuracycle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Point in (C*)^n; x_0 = 1 is implicit and never stored.
using ComplexPoint = CVector;

/// Phase angles theta_1..theta_n in radians; theta_0 = 0 is implicit.
using PhaseState = RVector;

/// A cycle network C_N with uniform complex coupling a and complex natural
/// frequencies omega_1..omega_n (n = N - 1).  Oscillator 0 is the reference.
struct CycleInstance {
    int N = 0;
    CVector omega;
    Complex a{1.0, 0.0};

    int n() const { return N - 1; }

    /// Throws std::invalid_argument on N < 3, a == 0 or a wrong omega length.
    void validate() const;

    /// True when the frequencies are pairwise distinct (within `tol`).
    bool frequencies_distinct(double tol = 0.0) const;
};

/// Builds an instance from a real coupling K and real frequencies; a = K/(2i).
CycleInstance make_real_instance(int N, double K, const RVector& omega);

/// Generic sample: Re/Im of omega uniform in [-1, 1] with pairwise
/// separation >= 1e-3, |a| uniform in [0.5, 1.5] with uniform phase.
CycleInstance sample_generic_instance(int N, std::mt19937_64& rng);

/// f_i(x) = omega_i - a * sum_{j ~ i} (x_i/x_j - x_j/x_i), i = 1..n.
CVector evaluate_algebraic(const ComplexPoint& x, const CycleInstance& inst);

/// max_i |f_i(x)|.  Throws std::domain_error if some x_i == 0.
double residual_algebraic(const ComplexPoint& x, const CycleInstance& inst);

/// Analytic Jacobian df_i/dx_k.  Throws std::domain_error if some x_i == 0.
CMatrix jacobian_algebraic(const ComplexPoint& x, const CycleInstance& inst);

/// Right-hand side omega_i - K sum_{j ~ i} sin(theta_i - theta_j), theta_0 = 0.
RVector sine_rhs(const PhaseState& theta, double K, const RVector& omega);

double residual_sine(const PhaseState& theta, double K, const RVector& omega);

/// Wraps into (-pi, pi].
double wrap_angle(double t);

/// Neighbours of node i on C_N (i - 1 and i + 1 modulo N).
inline std::pair<int, int> cycle_neighbours(int i, int N)
{
    return {(i + N - 1) % N, (i + 1) % N};
}

}  // namespace kuracycle
