#include "kuracycle/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kuracycle {

void CycleInstance::validate() const
{
    if (N < 3)
        throw std::invalid_argument("cycle needs N >= 3, got " + std::to_string(N));
    if (a == Complex(0.0, 0.0))
        throw std::invalid_argument("coupling a must be nonzero");
    if (omega.size() != n())
        throw std::invalid_argument("omega must have N - 1 = " + std::to_string(n()) +
                                    " entries, got " + std::to_string(omega.size()));
}

bool CycleInstance::frequencies_distinct(double tol) const
{
    for (Eigen::Index i = 0; i < omega.size(); ++i)
        for (Eigen::Index j = i + 1; j < omega.size(); ++j)
            if (std::abs(omega[i] - omega[j]) <= tol)
                return false;
    return true;
}

CycleInstance make_real_instance(int N, double K, const RVector& omega)
{
    CycleInstance inst;
    inst.N = N;
    inst.omega = omega.cast<Complex>();
    inst.a = Complex(K, 0.0) / Complex(0.0, 2.0);
    inst.validate();
    return inst;
}

CycleInstance sample_generic_instance(int N, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> modulus(0.5, 1.5);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);

    CycleInstance inst;
    inst.N = N;
    if (N < 3)
        throw std::invalid_argument("cycle needs N >= 3, got " + std::to_string(N));
    inst.omega.resize(N - 1);
    do {
        for (int i = 0; i < N - 1; ++i)
            inst.omega[i] = Complex(unit(rng), unit(rng));
    } while (!inst.frequencies_distinct(1e-3));
    inst.a = std::polar(modulus(rng), phase(rng));
    return inst;
}

namespace {

void require_torus(const ComplexPoint& x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] == Complex(0.0, 0.0))
            throw std::domain_error("coordinate x_" + std::to_string(i + 1) + " is zero");
}

// x_0 = 1
inline Complex coord(const ComplexPoint& x, int i) { return i == 0 ? Complex(1.0, 0.0) : x[i - 1]; }

}  // namespace

CVector evaluate_algebraic(const ComplexPoint& x, const CycleInstance& inst)
{
    require_torus(x);
    const int n = inst.n();
    if (x.size() != n)
        throw std::invalid_argument("point dimension does not match instance");
    CVector f(n);
    for (int i = 1; i <= n; ++i) {
        const auto [l, r] = cycle_neighbours(i, inst.N);
        const Complex xi = coord(x, i);
        Complex s = 0.0;
        for (int j : {l, r}) {
            const Complex xj = coord(x, j);
            s += xi / xj - xj / xi;
        }
        f[i - 1] = inst.omega[i - 1] - inst.a * s;
    }
    return f;
}

double residual_algebraic(const ComplexPoint& x, const CycleInstance& inst)
{
    return evaluate_algebraic(x, inst).cwiseAbs().maxCoeff();
}

CMatrix jacobian_algebraic(const ComplexPoint& x, const CycleInstance& inst)
{
    require_torus(x);
    const int n = inst.n();
    if (x.size() != n)
        throw std::invalid_argument("point dimension does not match instance");
    CMatrix J = CMatrix::Zero(n, n);
    for (int i = 1; i <= n; ++i) {
        const auto [l, r] = cycle_neighbours(i, inst.N);
        const Complex xi = coord(x, i);
        for (int j : {l, r}) {
            const Complex xj = coord(x, j);
            // d/dx_i (x_i/x_j - x_j/x_i) = 1/x_j + x_j/x_i^2
            J(i - 1, i - 1) -= inst.a * (1.0 / xj + xj / (xi * xi));
            if (j != 0)
                J(i - 1, j - 1) -= inst.a * (-xi / (xj * xj) - 1.0 / xi);
        }
    }
    return J;
}

RVector sine_rhs(const PhaseState& theta, double K, const RVector& omega)
{
    const auto n = static_cast<int>(theta.size());
    const int N = n + 1;
    auto phase = [&](int i) { return i == 0 ? 0.0 : theta[i - 1]; };
    RVector rhs(n);
    for (int i = 1; i <= n; ++i) {
        const auto [l, r] = cycle_neighbours(i, N);
        rhs[i - 1] = omega[i - 1] - K * (std::sin(phase(i) - phase(l)) + std::sin(phase(i) - phase(r)));
    }
    return rhs;
}

double residual_sine(const PhaseState& theta, double K, const RVector& omega)
{
    if (theta.size() == 0)
        return 0.0;
    return sine_rhs(theta, K, omega).cwiseAbs().maxCoeff();
}

double wrap_angle(double t)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(t, two_pi);  // [-pi, pi]
    if (w <= -std::numbers::pi)
        w += two_pi;
    return w;
}

}  // namespace kuracycle
