#include "kuracycle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "kuracycle/rng.hpp"

namespace kuracycle {

void OdeConfig::validate() const
{
    if (!(dt > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("dt and t_max must be positive");
    if (K == 0.0)
        throw std::invalid_argument("coupling K must be nonzero");
    if (omega.size() < 2)
        throw std::invalid_argument("need at least N = 3 oscillators");
}

OdeEndpoint integrate(const PhaseState& theta0, const OdeConfig& cfg)
{
    cfg.validate();
    if (theta0.size() != cfg.omega.size())
        throw std::invalid_argument("initial phase has wrong length");

    OdeEndpoint out;
    PhaseState th = theta0;
    const auto steps = static_cast<long>(std::ceil(cfg.t_max / cfg.dt));
    const double h = cfg.dt;
    RVector k1 = sine_rhs(th, cfg.K, cfg.omega);
    long s = 0;
    for (; s < steps; ++s) {
        if (k1.cwiseAbs().maxCoeff() < cfg.convergence_tol)
            break;
        const RVector k2 = sine_rhs(th + 0.5 * h * k1, cfg.K, cfg.omega);
        const RVector k3 = sine_rhs(th + 0.5 * h * k2, cfg.K, cfg.omega);
        const RVector k4 = sine_rhs(th + h * k3, cfg.K, cfg.omega);
        th += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        k1 = sine_rhs(th, cfg.K, cfg.omega);
    }
    for (Eigen::Index i = 0; i < th.size(); ++i)
        th[i] = wrap_angle(th[i]);
    out.theta = th;
    out.derivative_norm = sine_rhs(th, cfg.K, cfg.omega).cwiseAbs().maxCoeff();
    out.time = static_cast<double>(s) * h;
    out.converged = out.derivative_norm < cfg.convergence_tol;
    return out;
}

double angular_distance(const PhaseState& a, const PhaseState& b)
{
    double d = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(wrap_angle(a[i] - b[i])));
    return d;
}

std::vector<PhaseState> find_stable_equilibria(const OdeConfig& cfg, int n_starts, std::uint64_t seed,
                                               bool parallel)
{
    cfg.validate();
    std::vector<std::optional<PhaseState>> ends(std::max(n_starts, 0));
    auto run = [&](int i) {
        auto rng = substream(seed, kOdeStream, static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
        PhaseState th0(cfg.n());
        for (int k = 0; k < cfg.n(); ++k)
            th0[k] = phase(rng);
        const OdeEndpoint e = integrate(th0, cfg);
        if (e.converged)
            ends[i] = e.theta;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n_starts; ++i)
            run(i);
    } else {
        for (int i = 0; i < n_starts; ++i)
            run(i);
    }

    std::vector<PhaseState> eq;
    for (const auto& e : ends) {
        if (!e)
            continue;
        const bool dup = std::any_of(eq.begin(), eq.end(),
                                     [&](const PhaseState& p) { return angular_distance(p, *e) < 1e-4; });
        if (!dup)
            eq.push_back(*e);
    }
    std::sort(eq.begin(), eq.end(), [](const PhaseState& a, const PhaseState& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return eq;
}

MatchReport match_equilibria(const std::vector<PhaseState>& equilibria, const std::vector<PhaseState>& configs,
                             double tol)
{
    MatchReport rep;
    for (std::size_t i = 0; i < equilibria.size(); ++i) {
        EquilibriumMatch m;
        m.index = static_cast<int>(i);
        m.distance = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < configs.size(); ++j) {
            const double d = angular_distance(equilibria[i], configs[j]);
            if (d < m.distance) {
                m.distance = d;
                m.config = static_cast<int>(j);
            }
        }
        (m.distance < tol ? rep.matched : rep.unmatched).push_back(m);
    }
    return rep;
}

}  // namespace kuracycle
