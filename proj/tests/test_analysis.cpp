#include <doctest.h>

#include <algorithm>
#include <random>

#include "kuracycle/analysis.hpp"
#include "kuracycle/polytope.hpp"
#include "kuracycle/rng.hpp"
#include "kuracycle/solver.hpp"

using namespace kuracycle;

namespace {

std::vector<ComplexPoint> points_of(const Census& c)
{
    std::vector<ComplexPoint> out;
    for (const auto& s : c.solutions)
        out.push_back(s.x);
    return out;
}

// V* times the witness point, recomputed from the reduction.
bool kernel_check(const Facet& f, const KernelWitness& w)
{
    const auto red = facet_reduction(f);
    for (Eigen::Index i = 0; i < red.Vstar.rows(); ++i) {
        std::int64_t acc = 0;
        for (Eigen::Index j = 0; j < red.Vstar.cols(); ++j)
            acc += red.Vstar(i, j) * w.point[static_cast<std::size_t>(j)];
        if (acc != 0)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("predicted counts")
{
    const auto c4 = predicted_counts(4);
    CHECK(c4.per_facet == 1);
    CHECK(c4.total == 6);
    CHECK(c4.bkk_bound == 12);
    CHECK(c4.gap == 6);

    const auto c8 = predicted_counts(8);
    CHECK(c8.per_facet == 3);
    CHECK(c8.total == 210);
    CHECK(c8.bkk_bound == 280);
    CHECK(c8.gap == 70);

    const auto c7 = predicted_counts(7);
    CHECK(c7.per_facet == 1);
    CHECK(c7.total == 140);
    CHECK(c7.gap == 0);

    const std::int64_t table[] = {6, 6, 30, 60, 140, 210, 630, 1260, 2772, 4620};
    for (int N = 3; N <= 12; ++N) {
        const auto c = predicted_counts(N);
        CHECK(c.total == table[N - 3]);
        CHECK(c.total == c.per_facet * c.facets);
        const std::int64_t closed =
            N % 4 == 0 ? (N - 2) * binomial(N - 1, N / 2 - 1) : N * binomial(N - 1, (N - 1) / 2);
        CHECK(c.total == closed);
        CHECK(c.gap == (N % 4 == 0 ? binomial(N, N / 2) : 0));
    }
}

TEST_CASE("witnesses exist exactly when 4 divides N")
{
    for (int N = 3; N <= 12; ++N) {
        const auto facets = enumerate_facets(N);
        for (std::size_t i = 0; i < facets.size(); ++i) {
            const auto w = initial_witness(facets[i], static_cast<int>(i));
            if (N % 4 != 0) {
                CHECK_FALSE(w.has_value());
                if (N % 2 == 0)
                    CHECK(sign_product(facet_reduction(facets[i]).h) == 1);
                continue;
            }
            REQUIRE(w.has_value());
            CHECK(w->verified);
            CHECK(kernel_check(facets[i], *w));
            CHECK(sign_product(facet_reduction(facets[i]).h) == -1);
        }
    }
}

TEST_CASE("N = 4 witnesses")
{
    for (const auto& f : enumerate_facets(4)) {
        const auto w = initial_witness(f);
        REQUIRE(w.has_value());
        CHECK(std::count(w->h.begin(), w->h.end(), 1) == 2);
        CHECK(std::count(w->h.begin(), w->h.end(), -1) == 1);
        CHECK(w->verified);
    }
}

TEST_CASE("generic facet root counts")
{
    const auto f4 = enumerate_facets(4);
    const auto f6 = enumerate_facets(6);
    const auto f8 = enumerate_facets(8);
    for (const auto& f : f4)
        CHECK(generic_bkk_facet(f, 1) == 2);
    for (std::size_t i = 0; i < f6.size(); i += 4)
        CHECK(generic_bkk_facet(f6[i], 1) == 3);
    for (std::size_t i = 0; i < f8.size(); i += 9)
        CHECK(generic_bkk_facet(f8[i], 1) == 4);
    for (const auto& f : enumerate_facets(5))
        CHECK(generic_bkk_facet(f, 2) == 1);
}

TEST_CASE("torus filter")
{
    TorusSolution on, off;
    on.x = CVector(2);
    on.x << std::polar(1.0, 0.3), std::polar(1.0, -2.0);
    off.x = CVector(2);
    off.x << std::polar(1.0, 0.3), std::polar(2.0, 1.0);
    const auto kept = torus_filter({on, off}, 1e-6);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0][0] == doctest::Approx(0.3));
    CHECK(kept[0][1] == doctest::Approx(-2.0));
}

TEST_CASE("torus solutions solve the sine equations")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    RVector omega(4);
    for (auto& w : omega)
        w = u(rng);
    const auto inst = make_real_instance(5, 1.0, omega);
    SolverConfig cfg;
    cfg.seed = 5;
    const auto c = solve_all(inst, cfg);
    const auto phases = torus_filter(c.solutions, 1e-6);
    CHECK(!phases.empty());
    for (const auto& th : phases)
        CHECK(residual_sine(th, 1.0, omega) < 1e-6);
}

TEST_CASE("multistart oracle")
{
    SUBCASE("no starts")
    {
        auto rng = substream(1, kInstanceStream, 0);
        CHECK(multistart_roots(sample_generic_instance(4, rng), 0, 1).empty());
    }
    SUBCASE("N = 4 agrees with the census")
    {
        SolverConfig cfg;
        cfg.seed = 8;
        const auto g = solve_generic(4, cfg);
        const auto ms = multistart_roots(g.instance, 5000, 8);
        const auto m = match_points(ms, points_of(g.census), 1e-6);
        CHECK(ms.size() == 6);
        CHECK(m.matched == 6);
        CHECK(m.unmatched_found.empty());
        CHECK(m.unmatched_reference.empty());
    }
    SUBCASE("N = 3 saturates")
    {
        SolverConfig cfg;
        cfg.seed = 9;
        const auto g = solve_generic(3, cfg);
        const auto ms = multistart_roots(g.instance, 2000, 9);
        const auto m = match_points(ms, points_of(g.census), 1e-6);
        CHECK(m.unmatched_found.empty());
        CHECK(ms.size() == 6);
    }
}

TEST_CASE("point matching")
{
    CVector a(1), b(1);
    a << Complex(1, 0);
    b << Complex(0, 1);
    const auto m = match_points({a}, {a, b}, 1e-9);
    CHECK(m.matched == 1);
    CHECK(m.unmatched_reference == std::vector<int>{1});
    CHECK(match_points({}, {}, 1e-9).matched == 0);
}
