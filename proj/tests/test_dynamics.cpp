#include <doctest.h>

#include <random>

#include "kuracycle/analysis.hpp"
#include "kuracycle/dynamics.hpp"
#include "kuracycle/solver.hpp"

using namespace kuracycle;

namespace {

OdeConfig small_spread(int N, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    OdeConfig cfg;
    cfg.K = 1.0;
    cfg.omega = RVector(N - 1);
    for (auto& w : cfg.omega)
        w = u(rng);
    return cfg;
}

}  // namespace

TEST_CASE("config validation")
{
    OdeConfig cfg;
    cfg.omega = RVector::Zero(3);
    cfg.dt = 0.0;
    CHECK_THROWS(cfg.validate());
    cfg.dt = 0.01;
    cfg.K = 0.0;
    CHECK_THROWS(cfg.validate());
    cfg.K = 1.0;
    cfg.t_max = -1.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("synchronized state is a fixed point")
{
    OdeConfig cfg;
    cfg.omega = RVector::Zero(4);
    const auto e = integrate(PhaseState::Zero(4), cfg);
    CHECK(e.theta.cwiseAbs().maxCoeff() == 0.0);
    CHECK(e.derivative_norm == 0.0);
    CHECK(e.converged);
}

TEST_CASE("random start converges for small spread")
{
    const OdeConfig cfg = small_spread(5, 1);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    PhaseState th(4);
    for (auto& t : th)
        t = u(rng);
    const auto e = integrate(th, cfg);
    CHECK(e.converged);
    CHECK(e.derivative_norm < 1e-8);
    CHECK(e.time <= cfg.t_max);
    CHECK(residual_sine(e.theta, cfg.K, cfg.omega) < 1e-8);
    for (double t : e.theta) {
        CHECK(t > -M_PI);
        CHECK(t <= M_PI);
    }
}

TEST_CASE("algebraic equilibria are fixed points of the flow")
{
    const OdeConfig cfg = small_spread(5, 3);
    SolverConfig sc;
    sc.seed = 3;
    const auto c = solve_all(make_real_instance(5, cfg.K, cfg.omega), sc);
    const auto phases = torus_filter(c.solutions, 1e-6);
    REQUIRE(!phases.empty());
    OdeConfig one = cfg;
    one.t_max = cfg.dt;
    for (const auto& th : phases)
        CHECK(integrate(th, one).derivative_norm < 1e-6);
}

TEST_CASE("find_stable_equilibria")
{
    OdeConfig zero;
    zero.omega = RVector::Zero(2);
    CHECK(find_stable_equilibria(zero, 0, 1).empty());

    const auto eq = find_stable_equilibria(zero, 20, 1);
    bool has_origin = false;
    for (const auto& th : eq)
        has_origin = has_origin || th.cwiseAbs().maxCoeff() < 1e-6;
    CHECK(has_origin);
}

TEST_CASE("ODE equilibria match torus solutions for N = 5")
{
    const OdeConfig cfg = small_spread(5, 4);
    const auto eq = find_stable_equilibria(cfg, 200, 4);
    REQUIRE(!eq.empty());
    for (const auto& th : eq)
        CHECK(residual_sine(th, cfg.K, cfg.omega) < cfg.convergence_tol);
    SolverConfig sc;
    sc.seed = 4;
    const auto c = solve_all(make_real_instance(5, cfg.K, cfg.omega), sc);
    const auto rep = match_equilibria(eq, torus_filter(c.solutions, 1e-6), 1e-5);
    CHECK(rep.unmatched.empty());
    CHECK(rep.matched.size() == eq.size());
}

TEST_CASE("match_equilibria trivial cases")
{
    const auto empty = match_equilibria({}, {}, 1e-5);
    CHECK(empty.matched.empty());
    CHECK(empty.unmatched.empty());

    PhaseState a(2), b(2);
    a << 0.1, -3.1;
    b << 1.0, 2.0;
    const auto same = match_equilibria({a, b}, {a, b}, 1e-5);
    REQUIRE(same.matched.size() == 2);
    for (const auto& m : same.matched)
        CHECK(m.distance == 0.0);
    CHECK(same.unmatched.empty());
}

TEST_CASE("angular distance wraps")
{
    PhaseState a(1), b(1);
    a << M_PI - 0.01;
    b << -M_PI + 0.01;
    CHECK(angular_distance(a, b) == doctest::Approx(0.02));
}
