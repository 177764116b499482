#pragma once

// Facets of the adjacency polytope conv{ +-(e_i - e_j) : {i,j} edge of C_N }.
//
// Edges are numbered 1..N with edge j = {j-1, j mod N}.  The vertex attached
// to edge j with sign l is l * (e_{j-1} - e_j), where e_0 = e_N = 0.  Even-N
// facets pick one sign per edge with zero sum; odd-N facets drop one edge and
// pick zero-sum signs on the remaining N-1 edges.

#include <cstdint>
#include <optional>
#include <vector>

#include "kuracycle/int_matrix.hpp"

namespace kuracycle {

struct Facet {
    int N = 0;
    /// Odd N only: the dropped edge q in 1..N.
    std::optional<int> removed_edge;
    /// Signs for the retained edges, in increasing edge order.
    std::vector<int> lambda;

    bool odd() const { return N % 2 == 1; }
    /// Edge numbers (1..N) of the columns of the facet matrix.
    std::vector<int> edges() const;
    /// Throws std::invalid_argument when the record is not a facet of C_N.
    void validate() const;

    friend bool operator==(const Facet&, const Facet&) = default;
};

std::int64_t binomial(int n, int k);

std::int64_t facet_count(int N);
std::int64_t adjacency_polytope_bound(int N);

/// All facets in canonical order: odd N by removed edge then lambda, even N
/// by lambda; lambda compared lexicographically with -1 < +1.
std::vector<Facet> enumerate_facets(int N);

/// Integer n x m matrix whose columns are the facet vertices.
IntMatrix facet_matrix(const Facet& f);

/// Vertices of the whole polytope as integer columns (2N of them),
/// edge by edge: +(e_{j-1} - e_j), -(e_{j-1} - e_j).
IntMatrix polytope_vertices(int N);

struct FacetReduction {
    IntMatrix Q;      // n x n, det = +-1
    IntMatrix Vstar;  // Q * V
    IntVector h;      // even N: last column of Vstar; empty for odd N
};

FacetReduction facet_reduction(const Facet& f);

/// Exact rational alpha with <alpha, v> = -1 on every facet vertex.
std::vector<Rational> facet_normal(const Facet& f);

/// True iff <alpha, w> > -1 for every polytope vertex w off the facet and
/// == -1 on the facet vertices.
bool is_supporting_normal(const Facet& f, const std::vector<Rational>& alpha);

struct Equivalence {
    IntMatrix U;  // n x n unimodular
    IntMatrix P;  // m x m permutation
};

/// U * V1 * P == V2 with det U = +-1.
Equivalence unimodular_equivalence(const Facet& f1, const Facet& f2);

}  // namespace kuracycle
