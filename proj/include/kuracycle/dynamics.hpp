#pragma once

#include <cstdint>
#include <vector>

#include "kuracycle/model.hpp"

namespace kuracycle {

/// Reduced-frame Kuramoto flow on C_N with theta_0 pinned to zero.
struct OdeConfig {
    double K = 1.0;
    RVector omega;  // length n = N - 1
    double dt = 0.01;
    double t_max = 200.0;
    double convergence_tol = 1e-8;

    int n() const { return static_cast<int>(omega.size()); }
    void validate() const;
};

struct OdeEndpoint {
    PhaseState theta;
    /// max_i |dtheta_i/dt| at the returned state.
    double derivative_norm = 0.0;
    double time = 0.0;
    bool converged = false;
};

/// Classical RK4 with fixed step, stopping once the vector field max-norm
/// drops below convergence_tol.  Angles are wrapped into (-pi, pi].
OdeEndpoint integrate(const PhaseState& theta0, const OdeConfig& cfg);

/// Converged endpoints from uniform random starts, deduplicated modulo 2 pi
/// at radius 1e-4 and sorted.
std::vector<PhaseState> find_stable_equilibria(const OdeConfig& cfg, int n_starts, std::uint64_t seed,
                                               bool parallel = false);

/// max_i |wrap(a_i - b_i)|
double angular_distance(const PhaseState& a, const PhaseState& b);

struct EquilibriumMatch {
    int index = 0;       // into the equilibria list
    int config = -1;     // nearest configuration, -1 if none
    double distance = 0.0;
};

struct MatchReport {
    std::vector<EquilibriumMatch> matched;
    std::vector<EquilibriumMatch> unmatched;
};

MatchReport match_equilibria(const std::vector<PhaseState>& equilibria, const std::vector<PhaseState>& configs,
                             double tol);

}  // namespace kuracycle
