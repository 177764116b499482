#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kuracycle/model.hpp"
#include "kuracycle/polytope.hpp"

namespace kuracycle {

struct TorusSolution;

/// Closed-form root counts for uniform coupling.
struct CountPrediction {
    int N = 0;
    std::int64_t per_facet = 0;
    std::int64_t facets = 0;
    std::int64_t total = 0;
    std::int64_t bkk_bound = 0;
    /// bkk_bound - total; C(N, N/2) when 4 | N and 0 otherwise.
    std::int64_t gap = 0;
};

CountPrediction predicted_counts(int N);

/// Per-facet count: 1 (odd N), N/2 (N = 2 mod 4), N/2 - 1 (N = 0 mod 4).
std::int64_t predicted_per_facet(int N);

/// The point (h_1, .., h_n) with last monomial entry prod h_i^{h_i} = -1,
/// checked to lie in the kernel of the reduced facet matrix [I | h].
struct KernelWitness {
    int facet_id = 0;
    std::vector<int> h;
    /// (h_1, .., h_n, prod h_i^{h_i})
    std::vector<std::int64_t> point;
    /// V* * point, computed in integers.
    std::vector<std::int64_t> image;
    bool verified = false;
};

/// prod h_i, i.e. (-1)^(number of -1 entries).
int sign_product(const IntVector& h);

/// Witness for the facet-normal initial system.  Exists iff 4 | N.  For
/// N = 2 mod 4 returns nullopt after checking prod h_i = +1 (throws
/// std::logic_error otherwise); odd N returns nullopt.
std::optional<KernelWitness> initial_witness(const Facet& f, int facet_id = 0);

/// (C*)^n root count of the facet subsystem with the structured coefficients
/// a V replaced by independent random complex ones on the same support.
int generic_bkk_facet(const Facet& f, std::uint64_t seed, int max_resamples = 5);

/// Keeps solutions with max_i ||x_i| - 1| < tol and returns their angles.
std::vector<PhaseState> torus_filter(const std::vector<TorusSolution>& solutions, double tol);

/// Damped Newton from `n_starts` random points in (C*)^n; converged roots
/// deduplicated at relative radius `dedup` and sorted lexicographically.
std::vector<ComplexPoint> multistart_roots(const CycleInstance& inst, int n_starts, std::uint64_t seed,
                                           bool parallel = false, double dedup = 1e-6,
                                           int max_iter = 50);

/// Matches every point of `found` to its nearest point of `reference`.
struct PointMatch {
    int matched = 0;
    std::vector<int> unmatched_found;      // indices into `found`
    std::vector<int> unmatched_reference;  // indices into `reference` nobody matched
    double max_distance = 0.0;             // over matched points
};

PointMatch match_points(const std::vector<ComplexPoint>& found, const std::vector<ComplexPoint>& reference,
                        double tol);

}  // namespace kuracycle
