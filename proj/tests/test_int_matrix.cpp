#include <doctest.h>

#include <random>

#include "kuracycle/int_matrix.hpp"

using namespace kuracycle;

TEST_CASE("checked arithmetic detects overflow")
{
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    CHECK(checked_add(2, 3) == 5);
    CHECK(checked_mul(-4, 6) == -24);
    CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), std::overflow_error);
}

TEST_CASE("determinant of small matrices")
{
    IntMatrix A(3, 3);
    A << 2, 0, 1, 1, 3, 2, 1, 1, 1;
    CHECK(determinant(A) == 2 * (3 - 2) - 0 + 1 * (1 - 3));
    CHECK(determinant(IntMatrix::Identity(5, 5)) == 1);
    IntMatrix S(2, 2);
    S << 1, 2, 2, 4;
    CHECK(determinant(S) == 0);
}

TEST_CASE("unimodular inverse of random products of elementary matrices")
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(0, 5), coef(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix A = IntMatrix::Identity(6, 6);
        for (int k = 0; k < 20; ++k) {
            const int i = pick(rng), j = pick(rng);
            if (i != j)
                A.row(i) += coef(rng) * A.row(j);
        }
        const IntMatrix B = unimodular_inverse(A);
        CHECK(multiply(A, B) == IntMatrix::Identity(6, 6));
        CHECK(std::abs(determinant(A)) == 1);
    }
    IntMatrix D = IntMatrix::Identity(2, 2);
    D(0, 0) = 2;
    CHECK_THROWS(unimodular_inverse(D));
}

TEST_CASE("permutation matrix")
{
    const IntMatrix P = permutation_matrix({2, 0, 1});
    CHECK(P(0, 2) == 1);
    CHECK(P(1, 0) == 1);
    CHECK(P(2, 1) == 1);
    CHECK(std::abs(determinant(P)) == 1);
}

TEST_CASE("rationals reduce and compare")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -3) == Rational(-1, 3));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational linear solve")
{
    IntMatrix A(3, 2);
    A << 1, 1, 1, -1, 2, 0;
    const auto x = solve_rational(A, {Rational(3), Rational(1), Rational(4)});
    CHECK(x[0] == Rational(2));
    CHECK(x[1] == Rational(1));
    CHECK_THROWS(solve_rational(A, {Rational(3), Rational(1), Rational(5)}));
}
