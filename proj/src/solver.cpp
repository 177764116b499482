#include "kuracycle/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "kuracycle/analysis.hpp"
#include "kuracycle/rng.hpp"

namespace kuracycle {

namespace {

Complex ipow(Complex b, std::int64_t e)
{
    if (e < 0) {
        if (b == Complex(0.0, 0.0))
            throw std::domain_error("monomial_transform: zero base with negative exponent");
        b = 1.0 / b;
        e = -e;
    }
    Complex r = 1.0;
    while (e > 0) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Coefficients (ascending) of prod (c0 + c1 s).
std::vector<Complex> product_of_linears(const std::vector<std::pair<Complex, Complex>>& factors)
{
    std::vector<Complex> poly{1.0};
    for (const auto& [c0, c1] : factors) {
        std::vector<Complex> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * c0;
            next[k + 1] += poly[k] * c1;
        }
        poly = std::move(next);
    }
    return poly;
}

bool lexicographic_less(const ComplexPoint& a, const ComplexPoint& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real())
            return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag())
            return a[i].imag() < b[i].imag();
    }
    return false;
}

int expected_trims(int N) { return N % 2 == 1 ? 0 : (N % 4 == 0 ? 1 : 0); }

}  // namespace

CVector monomial_transform(const CVector& v, const IntMatrix& E)
{
    if (E.rows() != v.size())
        throw std::invalid_argument("monomial_transform: exponent rows must match vector length");
    CVector out(E.cols());
    for (Eigen::Index j = 0; j < E.cols(); ++j) {
        Complex r = 1.0;
        for (Eigen::Index i = 0; i < E.rows(); ++i)
            if (E(i, j) != 0)
                r *= ipow(v[i], E(i, j));
        out[j] = r;
    }
    return out;
}

const char* to_string(NewtonStatus s)
{
    switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::Stalled: return "stalled";
    case NewtonStatus::Singular: return "singular";
    case NewtonStatus::Diverged: return "diverged";
    }
    return "unknown";
}

NewtonResult newton_refine(const ComplexPoint& x0, const CycleInstance& inst, int max_iter, double target)
{
    NewtonResult res;
    res.x = x0;
    try {
        res.residual = residual_algebraic(res.x, inst);
    } catch (const std::domain_error&) {
        res.status = NewtonStatus::Singular;
        res.residual = std::numeric_limits<double>::infinity();
        return res;
    }
    for (int it = 0; it < max_iter; ++it) {
        const CMatrix J = jacobian_algebraic(res.x, inst);
        const Eigen::FullPivLU<CMatrix> lu(J);
        if (!lu.isInvertible()) {
            res.status = NewtonStatus::Singular;
            return res;
        }
        const CVector step = lu.solve(evaluate_algebraic(res.x, inst));
        const CVector next = res.x - step;
        res.iterations = it + 1;
        res.last_step = step.cwiseAbs().maxCoeff();
        const double scale = next.cwiseAbs().maxCoeff();
        const double floor = next.cwiseAbs().minCoeff();
        if (!next.allFinite() || scale > 1e12 || floor < 1e-12) {
            res.status = NewtonStatus::Diverged;
            return res;
        }
        res.x = next;
        const double r = residual_algebraic(res.x, inst);
        const bool stagnant = r >= res.residual && res.residual <= target;
        res.residual = r;
        if (r <= target && (res.last_step <= 1e-14 * (1.0 + scale) || stagnant))
            break;
    }
    res.status = res.residual <= target ? NewtonStatus::Converged : NewtonStatus::Stalled;
    return res;
}

FacetSystemRoots facet_system_roots(const Facet& f, const CMatrix& M, const CVector& omega,
                                    double trim_threshold, int expected)
{
    const FacetReduction red = facet_reduction(f);
    const int n = f.N - 1;
    FacetSystemRoots out;

    if (f.odd()) {
        const Eigen::FullPivLU<CMatrix> lu(M);
        if (lu.rank() < n)
            throw GenericityFailure("facet subsystem matrix is singular");
        const CVector z = lu.solve(omega);
        if (z.cwiseAbs().minCoeff() <= 1e-8)
            return out;
        out.roots.push_back(monomial_transform(z, red.Q));
        return out;
    }

    // Linear part: M w = omega with w = (y_1..y_n, t) = y^{V*}.
    const Eigen::FullPivLU<CMatrix> lu(M);
    if (lu.rank() < n)
        throw GenericityFailure("facet subsystem matrix lacks full row rank");
    const CVector p = lu.solve(omega);
    const CMatrix ker = lu.kernel();
    if (ker.cols() != 1)
        throw GenericityFailure("facet subsystem kernel is not one-dimensional");
    const CVector k = ker.col(0).normalized();

    // Monomial constraint t * prod_{h_i=-1} y_i = prod_{h_i=+1} y_i.
    std::vector<std::pair<Complex, Complex>> lhs{{p[n], k[n]}}, rhs;
    for (int i = 0; i < n; ++i)
        (red.h[i] < 0 ? lhs : rhs).emplace_back(p[i], k[i]);
    std::vector<Complex> q = product_of_linears(lhs);
    const std::vector<Complex> r = product_of_linears(rhs);
    q.resize(std::max(q.size(), r.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        q[i] -= r[i];

    UnivariateRoots ur;
    try {
        ur = univariate_roots(q, trim_threshold);
    } catch (const RootFindingError& e) {
        throw GenericityFailure(std::string("constraint polynomial: ") + e.what());
    }
    out.trims = ur.trimmed;
    out.degree = ur.degree;
    if (expected >= 0 && ur.trimmed != expected)
        throw GenericityFailure("constraint polynomial dropped " + std::to_string(ur.trimmed) +
                                " leading coefficients, expected " + std::to_string(expected));

    for (const Complex& s : ur.roots) {
        const CVector w = p + s * k;
        const CVector y = w.head(n);
        if (y.cwiseAbs().minCoeff() <= 1e-8)
            continue;
        Complex mono = 1.0;
        for (int i = 0; i < n; ++i)
            mono *= red.h[i] > 0 ? y[i] : 1.0 / y[i];
        if (std::abs(mono - w[n]) > 1e-6 * std::max(1.0, std::abs(mono)))
            throw GenericityFailure("constraint root does not satisfy the monomial relation");
        out.roots.push_back(monomial_transform(y, red.Q));
    }
    return out;
}

double facet_residual(const Facet& f, const ComplexPoint& x, const CycleInstance& inst)
{
    const IntMatrix V = facet_matrix(f);
    const CVector mono = monomial_transform(x, V);
    const CVector r = inst.omega - inst.a * (V.cast<Complex>() * mono);
    return r.cwiseAbs().maxCoeff();
}

FacetSolve solve_facet(const Facet& f, int facet_id, const CycleInstance& inst, const SolverConfig& config,
                       int attempt)
{
    inst.validate();
    const IntMatrix V = facet_matrix(f);
    const CMatrix M = inst.a * V.cast<Complex>();
    const FacetSystemRoots start =
        facet_system_roots(f, M, inst.omega, config.trim_threshold, expected_trims(f.N));

    const FacetHomotopy H(inst, f);
    FacetSolve out;
    out.trims = start.trims;
    out.degree = start.degree;

    for (std::size_t r = 0; r < start.roots.size(); ++r) {
        const ComplexPoint& x0 = start.roots[r];
        const double res_sub = facet_residual(f, x0, inst);
        if (!(res_sub < config.tol_residual))
            throw GenericityFailure("facet root residual " + std::to_string(res_sub) + " above tolerance");

        bool done = false;
        // The detour is shared by every path of an attempt: continuation
        // along different routes may permute the roots.
        auto rng = substream(config.seed, kPathStream, static_cast<std::uint64_t>(attempt));
        std::uniform_real_distribution<double> g(0.3, 1.0);
        const double detour = (rng() & 1 ? 1.0 : -1.0) * g(rng);
        for (int k = 0; k <= config.max_resamples && !done; ++k) {
            TrackerOptions opts = config.tracker;
            opts.detour = detour;
            opts.max_step = config.tracker.max_step / double(1 << std::min(attempt + 2 * k, 12));
            opts.initial_step = std::min(opts.initial_step, opts.max_step);

            const TrackResult tr = track_path(H, x0, opts);
            if (!tr.success) {
                ++out.retracks;
                continue;
            }
            const NewtonResult nr = newton_refine(tr.x, inst);
            if (nr.status == NewtonStatus::Singular || nr.status == NewtonStatus::Diverged ||
                !(nr.residual < config.tol_residual)) {
                ++out.retracks;
                continue;
            }
            out.solutions.push_back(TorusSolution{nr.x, facet_id, res_sub, nr.residual, x0});
            done = true;
        }
        if (!done)
            throw GenericityFailure("continuation failed for facet " + std::to_string(facet_id));
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const TorusSolution& a, const TorusSolution& b) { return lexicographic_less(a.x, b.x); });
    return out;
}

double relative_distance(const ComplexPoint& x, const ComplexPoint& y)
{
    const double scale = std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff());
    return (x - y).cwiseAbs().maxCoeff() / scale;
}

double min_relative_separation(const std::vector<ComplexPoint>& pts)
{
    double best2 = std::numeric_limits<double>::infinity();
    std::vector<double> scale2(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        scale2[i] = pts[i].cwiseAbs2().maxCoeff();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d2 = (pts[i] - pts[j]).cwiseAbs2().maxCoeff() / std::max(scale2[i], scale2[j]);
            best2 = std::min(best2, d2);
        }
    return std::sqrt(best2);
}

namespace {

struct FacetOutcome {
    FacetSolve solve;
    std::optional<std::string> error;
};

FacetOutcome run_one(const Facet& f, int id, const CycleInstance& inst, const SolverConfig& config, int attempt)
{
    FacetOutcome o;
    try {
        o.solve = solve_facet(f, id, inst, config, attempt);
    } catch (const std::exception& e) {
        o.error = e.what();
    }
    return o;
}

// Reference loop.
std::vector<FacetOutcome> solve_facets_serial(const std::vector<Facet>& facets, const std::vector<int>& ids,
                                              const CycleInstance& inst, const SolverConfig& config, int attempt)
{
    std::vector<FacetOutcome> out(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        out[i] = run_one(facets[ids[i]], ids[i], inst, config, attempt);
    return out;
}

std::vector<FacetOutcome> solve_facets_parallel(const std::vector<Facet>& facets, const std::vector<int>& ids,
                                                const CycleInstance& inst, const SolverConfig& config,
                                                int attempt)
{
    std::vector<FacetOutcome> out(ids.size());
    const auto count = static_cast<long>(ids.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i)
        out[i] = run_one(facets[ids[i]], ids[i], inst, config, attempt);
    return out;
}

// Facets owning a root that lies within tol of a root of another path.
std::set<int> facets_with_collisions(const std::vector<FacetSolve>& solves, double tol)
{
    std::vector<std::pair<const ComplexPoint*, int>> pts;
    for (std::size_t f = 0; f < solves.size(); ++f)
        for (const auto& s : solves[f].solutions)
            pts.emplace_back(&s.x, static_cast<int>(f));
    std::set<int> bad;
    const double tol2 = tol * tol;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const ComplexPoint& x = *pts[i].first;
        const double si = x.cwiseAbs2().maxCoeff();
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const ComplexPoint& y = *pts[j].first;
            const double d2 = (x - y).cwiseAbs2().maxCoeff() / std::max(si, y.cwiseAbs2().maxCoeff());
            if (d2 <= tol2) {
                bad.insert(pts[i].second);
                bad.insert(pts[j].second);
            }
        }
    }
    return bad;
}

}  // namespace

Census solve_all(const CycleInstance& inst, const SolverConfig& config)
{
    inst.validate();
    const std::vector<Facet> facets = enumerate_facets(inst.N);
    const CountPrediction pred = predicted_counts(inst.N);

    // Every facet starts on attempt 0.  Facets whose paths fail or collide
    // with another path are re-solved with the next attempt's detour.
    std::vector<FacetSolve> solves(facets.size());
    std::vector<int> pending(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i)
        pending[i] = static_cast<int>(i);

    std::string last_error;
    for (int attempt = 0; attempt <= config.max_resamples; ++attempt) {
        const auto outcomes = config.parallel ? solve_facets_parallel(facets, pending, inst, config, attempt)
                                              : solve_facets_serial(facets, pending, inst, config, attempt);
        std::set<int> redo;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (outcomes[i].error) {
                last_error = *outcomes[i].error;
                redo.insert(pending[i]);
                solves[pending[i]] = FacetSolve{};
            } else {
                solves[pending[i]] = outcomes[i].solve;
            }
        }
        if (redo.empty()) {
            redo = facets_with_collisions(solves, config.tol_dedup);
            if (!redo.empty())
                last_error = "two continuation paths reached the same root";
        }
        if (!redo.empty()) {
            pending.assign(redo.begin(), redo.end());
            continue;
        }

        Census c;
        c.report.N = inst.N;
        c.report.seed = config.seed;
        c.report.tol_residual = config.tol_residual;
        c.report.tol_dedup = config.tol_dedup;
        c.report.resample_count = attempt;
        c.report.predicted = pred.total;
        c.report.bound = pred.bkk_bound;
        for (const auto& fs : solves) {
            c.report.per_facet_counts.push_back(static_cast<int>(fs.solutions.size()));
            c.report.per_facet_trims.push_back(fs.trims);
            for (const auto& s : fs.solutions) {
                c.solutions.push_back(s);
                c.report.max_residual_full = std::max(c.report.max_residual_full, s.residual_full);
            }
        }
        std::vector<ComplexPoint> pts;
        pts.reserve(c.solutions.size());
        for (const auto& s : c.solutions)
            pts.push_back(s.x);
        c.report.min_pairwise_distance = min_relative_separation(pts);
        c.report.total = static_cast<std::int64_t>(c.solutions.size());
        c.report.gap = c.report.bound - c.report.total;
        return c;
    }
    throw GenericityFailure("solve_all gave up after " + std::to_string(config.max_resamples) +
                            " retries: " + last_error);
}

GenericCensus solve_generic(int N, const SolverConfig& config)
{
    std::string last_error;
    for (int r = 0; r <= config.max_resamples; ++r) {
        auto rng = substream(config.seed, kInstanceStream, static_cast<std::uint64_t>(r));
        CycleInstance inst = sample_generic_instance(N, rng);
        try {
            Census c = solve_all(inst, config);
            c.report.resample_count += r;
            return {std::move(inst), std::move(c)};
        } catch (const GenericityFailure& e) {
            last_error = e.what();
        }
    }
    throw GenericityFailure("no generic instance found after " + std::to_string(config.max_resamples) +
                            " resamples: " + last_error);
}

}  // namespace kuracycle
