#include "kuracycle/polytope.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kuracycle {

namespace {

void require_cycle(int N)
{
    if (N < 3)
        throw std::invalid_argument("cycle needs N >= 3, got " + std::to_string(N));
}

// All zero-sum sign vectors of length len (len even), lexicographic with -1 < +1.
std::vector<std::vector<int>> balanced_signs(int len)
{
    std::vector<std::vector<int>> out;
    std::vector<int> v(len);
    // Enumerate by bitmask in lexicographic order: bit set = +1, high bit first.
    const std::uint32_t total = 1u << len;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (std::popcount(mask) != len / 2)
            continue;
        for (int k = 0; k < len; ++k)
            v[k] = (mask >> (len - 1 - k)) & 1u ? 1 : -1;
        out.push_back(v);
    }
    return out;
}

// Column of l * (e_{j-1} - e_j) in Z^n with e_0 = e_N = 0.
void write_edge_column(IntMatrix& M, Eigen::Index col, int edge, int sign, int N)
{
    const int n = N - 1;
    M.col(col).setZero();
    const int tail = edge - 1;
    const int head = edge;  // == N for the wrap-around edge
    if (tail >= 1 && tail <= n)
        M(tail - 1, col) += sign;
    if (head >= 1 && head <= n)
        M(head - 1, col) -= sign;
}

}  // namespace

std::vector<int> Facet::edges() const
{
    std::vector<int> e;
    for (int j = 1; j <= N; ++j)
        if (!removed_edge || *removed_edge != j)
            e.push_back(j);
    return e;
}

void Facet::validate() const
{
    require_cycle(N);
    if (odd() != removed_edge.has_value())
        throw std::invalid_argument("removed_edge must be present exactly when N is odd");
    if (removed_edge && (*removed_edge < 1 || *removed_edge > N))
        throw std::invalid_argument("removed_edge out of range");
    const std::size_t expected = odd() ? N - 1 : N;
    if (lambda.size() != expected)
        throw std::invalid_argument("lambda has wrong length");
    int sum = 0;
    for (int l : lambda) {
        if (l != 1 && l != -1)
            throw std::invalid_argument("lambda entries must be +-1");
        sum += l;
    }
    if (sum != 0)
        throw std::invalid_argument("lambda must sum to zero");
}

std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = checked_mul(r, n - k + i) / i;
    return r;
}

std::int64_t facet_count(int N)
{
    require_cycle(N);
    if (N % 2 == 1)
        return checked_mul(N, binomial(N - 1, (N - 1) / 2));
    return binomial(N, N / 2);
}

std::int64_t adjacency_polytope_bound(int N)
{
    require_cycle(N);
    return checked_mul(N, binomial(N - 1, (N - 1) / 2));
}

std::vector<Facet> enumerate_facets(int N)
{
    require_cycle(N);
    if (N > 30)
        throw std::invalid_argument("enumerate_facets supports N <= 30");
    std::vector<Facet> out;
    out.reserve(static_cast<std::size_t>(facet_count(N)));
    if (N % 2 == 1) {
        const auto signs = balanced_signs(N - 1);
        for (int q = 1; q <= N; ++q)
            for (const auto& l : signs)
                out.push_back(Facet{N, q, l});
    } else {
        for (auto& l : balanced_signs(N))
            out.push_back(Facet{N, std::nullopt, std::move(l)});
    }
    return out;
}

IntMatrix facet_matrix(const Facet& f)
{
    f.validate();
    const auto edges = f.edges();
    IntMatrix V(f.N - 1, static_cast<Eigen::Index>(edges.size()));
    for (std::size_t c = 0; c < edges.size(); ++c)
        write_edge_column(V, static_cast<Eigen::Index>(c), edges[c], f.lambda[c], f.N);
    return V;
}

IntMatrix polytope_vertices(int N)
{
    require_cycle(N);
    IntMatrix W(N - 1, 2 * N);
    for (int j = 1; j <= N; ++j) {
        write_edge_column(W, 2 * (j - 1), j, 1, N);
        write_edge_column(W, 2 * (j - 1) + 1, j, -1, N);
    }
    return W;
}

FacetReduction facet_reduction(const Facet& f)
{
    const IntMatrix V = facet_matrix(f);
    const int n = f.N - 1;
    FacetReduction red;
    if (f.odd()) {
        red.Q = unimodular_inverse(V);
    } else {
        // Q = diag(-lambda_1..-lambda_n) * (upper-triangular ones)
        red.Q = IntMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                red.Q(i, j) = -f.lambda[i];
    }
    red.Vstar = multiply(red.Q, V);
    if (!f.odd())
        red.h = red.Vstar.col(n);
    return red;
}

std::vector<Rational> facet_normal(const Facet& f)
{
    const IntMatrix V = facet_matrix(f);
    const IntMatrix Vt = V.transpose();
    return solve_rational(Vt, std::vector<Rational>(Vt.rows(), Rational(-1)));
}

bool is_supporting_normal(const Facet& f, const std::vector<Rational>& alpha)
{
    const IntMatrix V = facet_matrix(f);
    const IntMatrix W = polytope_vertices(f.N);
    auto pairing = [&](const IntMatrix& M, Eigen::Index col) {
        Rational s(0);
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            if (M(i, col) != 0)
                s = s + alpha[i] * Rational(M(i, col));
        return s;
    };
    auto on_facet = [&](Eigen::Index wcol) {
        for (Eigen::Index c = 0; c < V.cols(); ++c)
            if (V.col(c) == W.col(wcol))
                return true;
        return false;
    };
    for (Eigen::Index c = 0; c < V.cols(); ++c)
        if (!(pairing(V, c) == Rational(-1)))
            return false;
    for (Eigen::Index c = 0; c < W.cols(); ++c)
        if (!on_facet(c) && !(pairing(W, c) > Rational(-1)))
            return false;
    return true;
}

Equivalence unimodular_equivalence(const Facet& f1, const Facet& f2)
{
    if (f1.N != f2.N)
        throw std::invalid_argument("facets belong to different cycles");
    const int n = f1.N - 1;
    Equivalence eq;
    if (f1.odd()) {
        const IntMatrix V1 = facet_matrix(f1);
        const IntMatrix V2 = facet_matrix(f2);
        eq.U = multiply(V2, unimodular_inverse(V1));
        eq.P = IntMatrix::Identity(n, n);
        return eq;
    }
    const FacetReduction r1 = facet_reduction(f1);
    const FacetReduction r2 = facet_reduction(f2);
    // Row permutation L with (L h1) = h2: pair up +1 rows and -1 rows in order.
    std::vector<int> plus1, minus1, perm(n);
    for (int i = 0; i < n; ++i)
        (r1.h[i] > 0 ? plus1 : minus1).push_back(i);
    std::size_t ip = 0, im = 0;
    for (int i = 0; i < n; ++i)
        perm[i] = r2.h[i] > 0 ? plus1.at(ip++) : minus1.at(im++);
    const IntMatrix L = permutation_matrix(perm);  // (L x)_i = x_{perm[i]}
    // L [I | h1] P = [I | h2] with P = blockdiag(L^T, 1).
    eq.P = IntMatrix::Zero(n + 1, n + 1);
    eq.P.topLeftCorner(n, n) = L.transpose();
    eq.P(n, n) = 1;
    eq.U = multiply(multiply(unimodular_inverse(r2.Q), L), r1.Q);
    return eq;
}

}  // namespace kuracycle
