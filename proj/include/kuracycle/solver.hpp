#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kuracycle/homotopy.hpp"
#include "kuracycle/int_matrix.hpp"
#include "kuracycle/model.hpp"
#include "kuracycle/polytope.hpp"
#include "kuracycle/roots.hpp"

namespace kuracycle {

/// The instance (or a random choice derived from it) is degenerate; the
/// caller should resample omega and a.
class GenericityFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Component j = prod_i v_i^{E(i, j)}.  Throws std::domain_error for a zero
/// base under a negative exponent.
CVector monomial_transform(const CVector& v, const IntMatrix& E);

enum class NewtonStatus { Converged, Stalled, Singular, Diverged };

const char* to_string(NewtonStatus s);

struct NewtonResult {
    ComplexPoint x;
    NewtonStatus status = NewtonStatus::Stalled;
    int iterations = 0;
    double residual = 0.0;
    /// Norm of the last Newton update (max norm).
    double last_step = 0.0;
};

/// Newton's method on the full cycle system.  Never throws for numerical
/// trouble; the status says what happened.  Converged means the residual
/// dropped to `target` (default 1e-10).
NewtonResult newton_refine(const ComplexPoint& x0, const CycleInstance& inst, int max_iter = 8,
                           double target = 1e-10);

struct SolverConfig {
    std::uint64_t seed = 1;
    double tol_residual = 1e-8;
    double tol_dedup = 1e-6;
    double trim_threshold = 1e-10;
    int max_resamples = 5;
    bool parallel = false;
    TrackerOptions tracker{};
};

/// Roots in (C*)^n of the facet subsystem omega = M (x^V)^T where M is any
/// n x m complex coefficient matrix on the facet's monomials.
struct FacetSystemRoots {
    std::vector<ComplexPoint> roots;
    /// Even N: leading coefficients of the constraint polynomial dropped.
    int trims = 0;
    /// Even N: degree of the constraint polynomial after trimming.
    int degree = 0;
};

/// `expected_trims` < 0 disables the trim check; otherwise a mismatch raises
/// GenericityFailure.
FacetSystemRoots facet_system_roots(const Facet& f, const CMatrix& M, const CVector& omega,
                                    double trim_threshold, int expected_trims);

/// max_i |omega - a V (x^V)^T|_i.
double facet_residual(const Facet& f, const ComplexPoint& x, const CycleInstance& inst);

struct TorusSolution {
    ComplexPoint x;
    int facet_id = 0;
    /// Residual of the facet subsystem at the facet root the path started from.
    double residual_sub = 0.0;
    /// Residual of the full system at x.
    double residual_full = 0.0;
    /// Facet subsystem root (start point of the continuation).
    ComplexPoint facet_root;
};

struct FacetSolve {
    std::vector<TorusSolution> solutions;
    int trims = 0;
    int degree = 0;
    int retracks = 0;
};

/// Solves one facet subsystem with the uniform-coupling coefficients a V and
/// continues each of its roots to a root of the full system.
FacetSolve solve_facet(const Facet& f, int facet_id, const CycleInstance& inst,
                       const SolverConfig& config, int attempt = 0);

struct CensusReport {
    int N = 0;
    std::uint64_t seed = 0;
    std::vector<int> per_facet_counts;
    std::vector<int> per_facet_trims;
    std::int64_t total = 0;
    std::int64_t predicted = 0;
    std::int64_t bound = 0;
    std::int64_t gap = 0;
    double tol_residual = 0.0;
    double tol_dedup = 0.0;
    int resample_count = 0;
    double max_residual_full = 0.0;
    double min_pairwise_distance = 0.0;
};

struct Census {
    std::vector<TorusSolution> solutions;
    CensusReport report;
};

/// Every solution of the full system, assembled facet by facet.  Retries the
/// continuation with fresh path randomness up to max_resamples times before
/// raising GenericityFailure.
Census solve_all(const CycleInstance& inst, const SolverConfig& config);

/// Samples a generic instance from the seed and runs solve_all, resampling
/// the instance on GenericityFailure.  The instance used is returned too.
struct GenericCensus {
    CycleInstance instance;
    Census census;
};
GenericCensus solve_generic(int N, const SolverConfig& config);

/// Smallest max-norm distance between two points, relative to the larger
/// max-norm of the pair.  Infinity for fewer than two points.
double min_relative_separation(const std::vector<ComplexPoint>& pts);

/// max_i |x_i - y_i| / max(|x|_inf, |y|_inf)
double relative_distance(const ComplexPoint& x, const ComplexPoint& y);

}  // namespace kuracycle
