#include "kuracycle/int_matrix.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace kuracycle {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("int64 overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("int64 overflow in multiplication");
    return r;
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B)
{
    if (A.cols() != B.rows())
        throw std::invalid_argument("matrix product: inner dimensions differ");
    IntMatrix C = IntMatrix::Zero(A.rows(), B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index k = 0; k < A.cols(); ++k) {
            if (A(i, k) == 0)
                continue;
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                C(i, j) = checked_add(C(i, j), checked_mul(A(i, k), B(k, j)));
        }
    return C;
}

std::int64_t determinant(const IntMatrix& A)
{
    if (A.rows() != A.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const Eigen::Index n = A.rows();
    if (n == 0)
        return 1;
    IntMatrix M = A;
    int sign = 1;
    std::int64_t prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            Eigen::Index swap = k + 1;
            while (swap < n && M(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            M.row(k).swap(M.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) {
                const std::int64_t t = checked_add(checked_mul(M(i, j), M(k, k)),
                                                   -checked_mul(M(i, k), M(k, j)));
                M(i, j) = t / prev;  // exact by Sylvester's identity
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& A)
{
    if (A.rows() != A.cols())
        throw std::invalid_argument("inverse of a non-square matrix");
    const Eigen::Index n = A.rows();
    IntMatrix M(n, 2 * n);
    M << A, IntMatrix::Identity(n, n);

    auto add_row_multiple = [&](Eigen::Index dst, Eigen::Index src, std::int64_t factor) {
        for (Eigen::Index j = 0; j < 2 * n; ++j)
            M(dst, j) = checked_add(M(dst, j), -checked_mul(factor, M(src, j)));
    };

    for (Eigen::Index c = 0; c < n; ++c) {
        // Euclid on column c over rows c..n-1 until a single nonzero remains.
        for (;;) {
            Eigen::Index best = -1;
            for (Eigen::Index r = c; r < n; ++r)
                if (M(r, c) != 0 && (best < 0 || std::abs(M(r, c)) < std::abs(M(best, c))))
                    best = r;
            if (best < 0)
                throw std::invalid_argument("matrix is singular");
            if (best != c)
                M.row(c).swap(M.row(best));
            bool done = true;
            for (Eigen::Index r = c + 1; r < n; ++r) {
                if (M(r, c) == 0)
                    continue;
                add_row_multiple(r, c, M(r, c) / M(c, c));
                if (M(r, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (std::abs(M(c, c)) != 1)
            throw std::invalid_argument("matrix is not unimodular");
        if (M(c, c) < 0)
            M.row(c) *= -1;
        for (Eigen::Index r = 0; r < n; ++r)
            if (r != c && M(r, c) != 0)
                add_row_multiple(r, c, M(r, c));
    }
    return M.rightCols(n);
}

IntMatrix permutation_matrix(const std::vector<int>& perm)
{
    const auto n = static_cast<Eigen::Index>(perm.size());
    IntMatrix P = IntMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        P(i, perm[i]) = 1;
    return P;
}

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    num = n / g;
    den = d / g;
}

Rational operator+(const Rational& x, const Rational& y)
{
    return {checked_add(checked_mul(x.num, y.den), checked_mul(y.num, x.den)), checked_mul(x.den, y.den)};
}

Rational operator-(const Rational& x, const Rational& y) { return x + Rational(-y.num, y.den); }

Rational operator*(const Rational& x, const Rational& y)
{
    return {checked_mul(x.num, y.num), checked_mul(x.den, y.den)};
}

Rational operator/(const Rational& x, const Rational& y)
{
    if (y.num == 0)
        throw std::domain_error("rational division by zero");
    return {checked_mul(x.num, y.den), checked_mul(x.den, y.num)};
}

bool operator<(const Rational& x, const Rational& y)
{
    return checked_mul(x.num, y.den) < checked_mul(y.num, x.den);
}

std::vector<Rational> solve_rational(const IntMatrix& A, const std::vector<Rational>& b)
{
    const auto rows = static_cast<std::size_t>(A.rows());
    const auto cols = static_cast<std::size_t>(A.cols());
    if (b.size() != rows)
        throw std::invalid_argument("right-hand side length mismatch");

    std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            M[i][j] = Rational(A(i, j));
        M[i][cols] = b[i];
    }

    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = pivot_row;
        while (p < rows && M[p][c].is_zero())
            ++p;
        if (p == rows)
            throw std::invalid_argument("rational solve: matrix lacks full column rank");
        std::swap(M[p], M[pivot_row]);
        const Rational inv = Rational(1) / M[pivot_row][c];
        for (std::size_t j = c; j <= cols; ++j)
            M[pivot_row][j] = M[pivot_row][j] * inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || M[r][c].is_zero())
                continue;
            const Rational f = M[r][c];
            for (std::size_t j = c; j <= cols; ++j)
                M[r][j] = M[r][j] - f * M[pivot_row][j];
        }
        ++pivot_row;
    }
    for (std::size_t r = pivot_row; r < rows; ++r)
        if (!M[r][cols].is_zero())
            throw std::invalid_argument("rational solve: inconsistent system");

    std::vector<Rational> x(cols);
    for (std::size_t c = 0; c < cols; ++c)
        x[c] = M[c][cols];
    return x;
}

}  // namespace kuracycle
