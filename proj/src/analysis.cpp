#include "kuracycle/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kuracycle/rng.hpp"
#include "kuracycle/solver.hpp"

namespace kuracycle {

std::int64_t predicted_per_facet(int N)
{
    if (N < 3)
        throw std::invalid_argument("cycle needs N >= 3");
    if (N % 2 == 1)
        return 1;
    return N % 4 == 0 ? N / 2 - 1 : N / 2;
}

CountPrediction predicted_counts(int N)
{
    CountPrediction c;
    c.N = N;
    c.per_facet = predicted_per_facet(N);
    c.facets = facet_count(N);
    c.total = checked_mul(c.facets, c.per_facet);
    c.bkk_bound = adjacency_polytope_bound(N);
    c.gap = c.bkk_bound - c.total;
    return c;
}

int sign_product(const IntVector& h)
{
    int p = 1;
    for (Eigen::Index i = 0; i < h.size(); ++i)
        p *= h[i] < 0 ? -1 : 1;
    return p;
}

namespace {

// base^exp for base in {+1, -1} and any integer exp.
std::int64_t unit_power(std::int64_t base, std::int64_t exp)
{
    if (base == 1)
        return 1;
    if (base == -1)
        return exp % 2 == 0 ? 1 : -1;
    throw std::invalid_argument("unit_power expects a base of +-1");
}

}  // namespace

std::optional<KernelWitness> initial_witness(const Facet& f, int facet_id)
{
    f.validate();
    if (f.odd())
        return std::nullopt;
    const FacetReduction red = facet_reduction(f);
    const int n = f.N - 1;
    if (f.N % 4 != 0) {
        if (sign_product(red.h) != 1)
            throw std::logic_error("sign product of h must be +1 when N = 2 mod 4");
        return std::nullopt;
    }

    KernelWitness w;
    w.facet_id = facet_id;
    for (int i = 0; i < n; ++i)
        w.h.push_back(static_cast<int>(red.h[i]));
    // y = h, monomial vector y^{V*}: column j of V* is the exponent of entry j.
    IntVector point(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
        std::int64_t v = 1;
        for (int i = 0; i < n; ++i)
            v *= unit_power(red.h[i], red.Vstar(i, j));
        point[j] = v;
    }
    const IntMatrix image = multiply(red.Vstar, point);
    w.point.assign(point.data(), point.data() + point.size());
    w.image.assign(image.data(), image.data() + image.size());
    w.verified = std::all_of(w.image.begin(), w.image.end(), [](std::int64_t v) { return v == 0; });
    return w;
}

int generic_bkk_facet(const Facet& f, std::uint64_t seed, int max_resamples)
{
    f.validate();
    const IntMatrix V = facet_matrix(f);
    const int n = f.N - 1;
    const auto m = V.cols();
    // Key the stream on the facet itself so ids need not be passed around.
    std::uint64_t key = static_cast<std::uint64_t>(f.removed_edge.value_or(0));
    for (int l : f.lambda)
        key = (key << 1) | (l > 0 ? 1u : 0u);

    for (int r = 0; r <= max_resamples; ++r) {
        auto rng = substream(seed, kOracleStream, splitmix64(key) ^ static_cast<std::uint64_t>(r));
        std::normal_distribution<double> gauss;
        CMatrix G(n, m);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                G(i, j) = Complex(gauss(rng), gauss(rng));
        CVector omega(n);
        for (int i = 0; i < n; ++i)
            omega[i] = Complex(gauss(rng), gauss(rng));
        try {
            const auto roots = facet_system_roots(f, G, omega, 1e-10, f.odd() ? -1 : 0);
            return static_cast<int>(roots.roots.size());
        } catch (const GenericityFailure&) {
        }
    }
    throw GenericityFailure("generic_bkk_facet: no generic coefficients after resampling");
}

std::vector<PhaseState> torus_filter(const std::vector<TorusSolution>& solutions, double tol)
{
    std::vector<PhaseState> out;
    for (const auto& s : solutions) {
        const auto& x = s.x;
        double dev = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            dev = std::max(dev, std::abs(std::abs(x[i]) - 1.0));
        if (!(dev < tol))
            continue;
        PhaseState theta(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            theta[i] = wrap_angle(std::arg(x[i]));
        out.push_back(theta);
    }
    return out;
}

namespace {

std::optional<ComplexPoint> damped_newton(ComplexPoint x, const CycleInstance& inst, int max_iter)
{
    double res;
    try {
        res = residual_algebraic(x, inst);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    for (int it = 0; it < max_iter; ++it) {
        if (res < 1e-11)
            break;
        const Eigen::PartialPivLU<CMatrix> lu(jacobian_algebraic(x, inst));
        const CVector step = lu.solve(evaluate_algebraic(x, inst));
        if (!step.allFinite())
            return std::nullopt;
        double damping = 1.0;
        bool improved = false;
        for (int k = 0; k < 12; ++k, damping *= 0.5) {
            const CVector trial = x - damping * step;
            if (!trial.allFinite() || trial.cwiseAbs().minCoeff() < 1e-10 || trial.cwiseAbs().maxCoeff() > 1e10)
                continue;
            const double r = residual_algebraic(trial, inst);
            if (r < res) {
                x = trial;
                res = r;
                improved = true;
                break;
            }
        }
        if (!improved)
            return std::nullopt;
    }
    if (!(res < 1e-9))
        return std::nullopt;
    const NewtonResult polished = newton_refine(x, inst, 4);
    if (polished.status == NewtonStatus::Singular || polished.status == NewtonStatus::Diverged)
        return std::nullopt;
    if (!(polished.residual < 1e-9))
        return std::nullopt;
    return polished.x;
}

bool lex_less(const ComplexPoint& a, const ComplexPoint& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real())
            return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag())
            return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

std::vector<ComplexPoint> multistart_roots(const CycleInstance& inst, int n_starts, std::uint64_t seed,
                                           bool parallel, double dedup, int max_iter)
{
    inst.validate();
    const int n = inst.n();
    std::vector<std::optional<ComplexPoint>> found(std::max(n_starts, 0));

    auto run = [&](int i) {
        auto rng = substream(seed, kMultistartStream, static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> logmod(-2.0, 2.0);
        std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
        ComplexPoint x(n);
        for (int k = 0; k < n; ++k)
            x[k] = std::polar(std::exp(logmod(rng)), phase(rng));
        found[i] = damped_newton(x, inst, max_iter);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int i = 0; i < n_starts; ++i)
            run(i);
    } else {
        for (int i = 0; i < n_starts; ++i)
            run(i);
    }

    std::vector<ComplexPoint> roots;
    for (const auto& f : found) {
        if (!f)
            continue;
        const bool dup = std::any_of(roots.begin(), roots.end(),
                                     [&](const ComplexPoint& r) { return relative_distance(r, *f) <= dedup; });
        if (!dup)
            roots.push_back(*f);
    }
    std::sort(roots.begin(), roots.end(), lex_less);
    return roots;
}

PointMatch match_points(const std::vector<ComplexPoint>& found, const std::vector<ComplexPoint>& reference,
                        double tol)
{
    PointMatch m;
    std::vector<bool> hit(reference.size(), false);
    for (std::size_t i = 0; i < found.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < reference.size(); ++j) {
            const double d = relative_distance(found[i], reference[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        if (best < tol) {
            ++m.matched;
            hit[arg] = true;
            m.max_distance = std::max(m.max_distance, best);
        } else {
            m.unmatched_found.push_back(static_cast<int>(i));
        }
    }
    for (std::size_t j = 0; j < reference.size(); ++j)
        if (!hit[j])
            m.unmatched_reference.push_back(static_cast<int>(j));
    return m;
}

}  // namespace kuracycle
