#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Dense>
#include <json.hpp>

#include "kuracycle/json_io.hpp"
#include "kuracycle/polytope.hpp"

using namespace kuracycle;

namespace {

using VertexSet = std::set<std::vector<long>>;

VertexSet columns_of(const IntMatrix& V)
{
    VertexSet s;
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        std::vector<long> v(V.rows());
        for (Eigen::Index r = 0; r < V.rows(); ++r)
            v[r] = static_cast<long>(V(r, c));
        s.insert(v);
    }
    return s;
}

// Brute-force facets of the convex hull of the columns of W (origin
// interior): every d-subset spanning a hyperplane <alpha, v> = -1 that
// supports all vertices.
std::set<VertexSet> hull_facets(const IntMatrix& W)
{
    const int d = static_cast<int>(W.rows());
    const int m = static_cast<int>(W.cols());
    const Eigen::MatrixXd Wd = W.cast<double>();
    std::set<VertexSet> out;
    std::vector<int> pick(d);
    for (int i = 0; i < d; ++i)
        pick[i] = i;
    while (true) {
        Eigen::MatrixXd A(d, d);
        for (int i = 0; i < d; ++i)
            A.row(i) = Wd.col(pick[i]).transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() == d) {
            const Eigen::VectorXd alpha = lu.solve(-Eigen::VectorXd::Ones(d));
            const Eigen::VectorXd vals = Wd.transpose() * alpha;
            if (vals.minCoeff() > -1.0 - 1e-9) {
                VertexSet face;
                for (int c = 0; c < m; ++c)
                    if (std::abs(vals[c] + 1.0) < 1e-9) {
                        std::vector<long> v(d);
                        for (int r = 0; r < d; ++r)
                            v[r] = static_cast<long>(W(r, c));
                        face.insert(v);
                    }
                out.insert(face);
            }
        }
        int k = d - 1;
        while (k >= 0 && pick[k] == m - d + k)
            --k;
        if (k < 0)
            break;
        ++pick[k];
        for (int i = k + 1; i < d; ++i)
            pick[i] = pick[i - 1] + 1;
    }
    return out;
}

std::int64_t exact_det(const IntMatrix& A) { return determinant(A); }

}  // namespace

TEST_CASE("facet counts")
{
    CHECK(facet_count(4) == 6);
    CHECK(facet_count(5) == 30);
    CHECK(facet_count(6) == 20);
    for (int N = 3; N <= 12; ++N) {
        const auto facets = enumerate_facets(N);
        CHECK(static_cast<std::int64_t>(facets.size()) == facet_count(N));
        const std::int64_t expected =
            N % 2 == 1 ? N * binomial(N - 1, (N - 1) / 2) : binomial(N, N / 2);
        CHECK(facet_count(N) == expected);
    }
    CHECK_THROWS(facet_count(2));
}

TEST_CASE("adjacency polytope bound")
{
    CHECK(adjacency_polytope_bound(4) == 12);
    CHECK(adjacency_polytope_bound(3) == 6);
    CHECK(adjacency_polytope_bound(6) == 60);
}

TEST_CASE("N = 3 hexagon by brute force")
{
    const IntMatrix W = polytope_vertices(3);
    const auto hull = hull_facets(W);
    CHECK(hull.size() == 6);
    for (const auto& face : hull)
        CHECK(face.size() == 2);

    std::set<VertexSet> enumerated;
    for (const auto& f : enumerate_facets(3))
        enumerated.insert(columns_of(facet_matrix(f)));
    CHECK(enumerated == hull);

    // Normalized area of the hexagon via the shoelace formula.
    std::vector<std::pair<double, std::pair<long, long>>> pts;
    for (Eigen::Index c = 0; c < W.cols(); ++c)
        pts.push_back({std::atan2(double(W(1, c)), double(W(0, c))), {W(0, c), W(1, c)}});
    std::sort(pts.begin(), pts.end());
    long twice_area = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i].second;
        const auto& q = pts[(i + 1) % pts.size()].second;
        twice_area += p.first * q.second - p.second * q.first;
    }
    CHECK(twice_area == adjacency_polytope_bound(3));
}

TEST_CASE("enumerated facets equal the brute-force hull")
{
    for (int N = 4; N <= 8; ++N) {
        const auto hull = hull_facets(polytope_vertices(N));
        std::set<VertexSet> enumerated;
        for (const auto& f : enumerate_facets(N))
            enumerated.insert(columns_of(facet_matrix(f)));
        CHECK(enumerated.size() == static_cast<std::size_t>(facet_count(N)));
        CHECK(enumerated == hull);
    }
}

TEST_CASE("N = 4 facets are the six listed vertex sets")
{
    const std::set<VertexSet> listed = {
        {{1, 0, 0}, {1, -1, 0}, {0, -1, 1}, {0, 0, 1}},
        {{1, 0, 0}, {-1, 1, 0}, {0, 1, -1}, {0, 0, 1}},
        {{1, 0, 0}, {1, -1, 0}, {0, 1, -1}, {0, 0, -1}},
        {{-1, 0, 0}, {-1, 1, 0}, {0, -1, 1}, {0, 0, 1}},
        {{-1, 0, 0}, {-1, 1, 0}, {0, 1, -1}, {0, 0, -1}},
        {{-1, 0, 0}, {1, -1, 0}, {0, -1, 1}, {0, 0, -1}},
    };
    std::set<VertexSet> enumerated;
    for (const auto& f : enumerate_facets(4))
        enumerated.insert(columns_of(facet_matrix(f)));
    CHECK(enumerated == listed);
}

TEST_CASE("shaded N = 4 facet")
{
    // Column j is lambda_j (e_{j-1} - e_j) with e_0 = e_4 = 0, so the vertex
    // (1,0,0) = -(e_0 - e_1) forces lambda_1 = -1.
    Facet f{4, std::nullopt, {-1, +1, -1, +1}};
    IntMatrix expected(3, 4);
    expected << 1, 1, 0, 0,
                0, -1, -1, 0,
                0, 0, 1, 1;
    CHECK(facet_matrix(f) == expected);
}

TEST_CASE("facet shape")
{
    for (const auto& f : enumerate_facets(6)) {
        CHECK(std::count(f.lambda.begin(), f.lambda.end(), 1) == 3);
        CHECK(facet_matrix(f).cols() == 6);
    }
    for (const auto& f : enumerate_facets(5)) {
        REQUIRE(f.removed_edge.has_value());
        CHECK(f.lambda.size() == 4);
        CHECK(std::count(f.lambda.begin(), f.lambda.end(), 1) == 2);
    }
    Facet bad{4, std::nullopt, {1, 1, 1, -1}};
    CHECK_THROWS(bad.validate());
    Facet odd_missing{5, std::nullopt, {1, -1, 1, -1}};
    CHECK_THROWS(odd_missing.validate());
}

TEST_CASE("N = 3 facet matrix")
{
    Facet f{3, 3, {+1, -1}};
    IntMatrix expected(2, 2);
    expected << -1, -1,
                0, 1;
    CHECK(facet_matrix(f) == expected);
    CHECK(std::abs(exact_det(facet_matrix(f))) == 1);
}

TEST_CASE("odd facets are unimodular simplices")
{
    for (int N : {3, 5, 7, 9})
        for (const auto& f : enumerate_facets(N))
            CHECK(std::abs(exact_det(facet_matrix(f))) == 1);
}

TEST_CASE("facet reduction identities")
{
    for (int N = 3; N <= 10; ++N) {
        const int n = N - 1;
        for (const auto& f : enumerate_facets(N)) {
            const IntMatrix V = facet_matrix(f);
            const auto red = facet_reduction(f);
            CHECK(std::abs(exact_det(red.Q)) == 1);
            CHECK(multiply(red.Q, V) == red.Vstar);
            if (f.odd()) {
                CHECK(red.Vstar == IntMatrix::Identity(n, n));
                continue;
            }
            CHECK(red.Vstar.leftCols(n) == IntMatrix::Identity(n, n));
            CHECK(red.Vstar.col(n) == red.h);
            int plus = 0;
            for (int i = 0; i < n; ++i) {
                CHECK(red.h[i] == -f.lambda[i] * f.lambda[N - 1]);
                plus += red.h[i] == 1;
            }
            CHECK(plus == N / 2);
        }
    }
}

TEST_CASE("N = 4 reduction example")
{
    Facet f{4, std::nullopt, {+1, -1, +1, -1}};
    const auto red = facet_reduction(f);
    IntVector h(3);
    h << 1, -1, 1;
    CHECK(red.h == h);
}

TEST_CASE("facet normals support the polytope")
{
    for (int N = 3; N <= 9; ++N) {
        const IntMatrix W = polytope_vertices(N);
        for (const auto& f : enumerate_facets(N)) {
            const auto alpha = facet_normal(f);
            CHECK(is_supporting_normal(f, alpha));
            // Independent check in floating point.
            Eigen::VectorXd a(N - 1);
            for (int i = 0; i < N - 1; ++i)
                a[i] = double(alpha[i].num) / double(alpha[i].den);
            const Eigen::VectorXd vals = W.cast<double>().transpose() * a;
            CHECK(vals.minCoeff() == doctest::Approx(-1.0));
            const Eigen::VectorXd on = facet_matrix(f).cast<double>().transpose() * a;
            CHECK((on.array() + 1.0).abs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("unimodular equivalence certificates")
{
    SUBCASE("identity")
    {
        const auto f = enumerate_facets(6).front();
        const auto e = unimodular_equivalence(f, f);
        const IntMatrix V = facet_matrix(f);
        CHECK(multiply(multiply(e.U, V), e.P) == V);
    }
    SUBCASE("first and last N = 4 facets")
    {
        const auto facets = enumerate_facets(4);
        const auto e = unimodular_equivalence(facets.front(), facets.back());
        CHECK(multiply(multiply(e.U, facet_matrix(facets.front())), e.P) == facet_matrix(facets.back()));
        CHECK(std::abs(exact_det(e.U)) == 1);
    }
    SUBCASE("random pairs")
    {
        for (int N : {5, 6, 7, 8}) {
            const auto facets = enumerate_facets(N);
            std::mt19937_64 rng(static_cast<std::uint64_t>(N));
            std::uniform_int_distribution<std::size_t> pick(0, facets.size() - 1);
            for (int t = 0; t < 100; ++t) {
                const Facet& f1 = facets[pick(rng)];
                const Facet& f2 = facets[pick(rng)];
                const auto e = unimodular_equivalence(f1, f2);
                CHECK(multiply(multiply(e.U, facet_matrix(f1)), e.P) == facet_matrix(f2));
                CHECK(std::abs(exact_det(e.U)) == 1);
                CHECK(std::abs(exact_det(e.P)) == 1);
            }
        }
    }
}

TEST_CASE("facet JSON round trip")
{
    for (int N : {5, 6})
        for (const auto& f : enumerate_facets(N)) {
            const std::string text = facet_to_json(f).dump();
            CHECK(facet_from_json(nlohmann::json::parse(text)) == f);
        }
}
