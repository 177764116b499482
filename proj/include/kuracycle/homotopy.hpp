#pragma once

// Continuation from a facet subsystem to the full cycle system.
//
// For a facet F with inner normal alpha (<alpha, v> = -1 on F), put
//   H(x, s) = omega - a * sum_v v x^v s^(1 + <alpha, v>)
// over all 2N polytope vertices v.  H(., 1) is the full algebraic system and
// H(., 0) keeps only the facet terms and the constants, i.e. the facet
// subsystem.  For s != 0, H(., s) is the full system with frequencies
// omega / s after the torus rescaling x -> x * s^alpha, so the finite roots
// move without collisions along any path that avoids finitely many points.
// The path s(t) = t + i*g*t*(1 - t) with random g keeps clear of them.

#include <optional>
#include <string>
#include <vector>

#include "kuracycle/model.hpp"
#include "kuracycle/polytope.hpp"

namespace kuracycle {

class FacetHomotopy {
public:
    FacetHomotopy(const CycleInstance& inst, const Facet& facet);

    CVector evaluate(const CVector& x, Complex s) const;
    CMatrix jacobian(const CVector& x, Complex s) const;
    /// dH/ds
    CVector derivative_s(const CVector& x, Complex s) const;

    /// Exponent of s attached to each polytope vertex, in polytope_vertices order.
    std::vector<int> weights() const;

private:
    // Monomial x_num / x_den (index 0 is the constant 1), vector e_num - e_den.
    struct Term {
        int num;
        int den;
        int weight;
    };
    CycleInstance inst_;
    std::vector<Term> terms_;
};

struct TrackerOptions {
    double initial_step = 0.02;
    double max_step = 0.1;
    double min_step = 1e-9;
    int max_steps = 20000;
    double detour = 0.7;  // g in s(t) = t + i g t (1 - t)
};

struct TrackResult {
    bool success = false;
    CVector x;
    int steps = 0;
    int rejected = 0;
    std::string message;
};

TrackResult track_path(const FacetHomotopy& H, const CVector& start, const TrackerOptions& opts);

}  // namespace kuracycle
