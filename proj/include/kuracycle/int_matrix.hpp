#pragma once

// Exact integer and rational matrix arithmetic.  All operations check for
// int64 overflow and throw std::overflow_error instead of wrapping.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace kuracycle {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// A * B with overflow checks.
IntMatrix multiply(const IntMatrix& A, const IntMatrix& B);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
std::int64_t determinant(const IntMatrix& A);

/// Inverse of a unimodular matrix using only unimodular integer row
/// operations.  Throws std::invalid_argument if |det A| != 1.
IntMatrix unimodular_inverse(const IntMatrix& A);

IntMatrix permutation_matrix(const std::vector<int>& perm);

/// Reduced rational p/q with q > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);
    friend bool operator==(const Rational& x, const Rational& y) = default;
    friend bool operator<(const Rational& x, const Rational& y);
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    bool is_zero() const { return num == 0; }
};

/// Solves A x = b exactly over the rationals.  A may be non-square; the
/// system must be consistent with a unique solution (full column rank).
/// Throws std::invalid_argument otherwise.
std::vector<Rational> solve_rational(const IntMatrix& A, const std::vector<Rational>& b);

}  // namespace kuracycle
