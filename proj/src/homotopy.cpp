#include "kuracycle/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kuracycle {

namespace {

inline Complex coord(const CVector& x, int i) { return i == 0 ? Complex(1.0, 0.0) : x[i - 1]; }

inline Complex spow(Complex s, int w)
{
    Complex r = 1.0;
    for (int k = 0; k < w; ++k)
        r *= s;
    return r;
}

// Componentwise relative size max_i |d_i| / |x_i|.
double relative_norm(const CVector& d, const CVector& x)
{
    double r2 = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        r2 = std::max(r2, std::norm(d[i]) / std::norm(x[i]));
    return std::sqrt(r2);
}

bool finite_on_torus(const CVector& x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double m = std::abs(x[i]);
        if (!std::isfinite(m) || m < 1e-12 || m > 1e12)
            return false;
    }
    return true;
}

}  // namespace

FacetHomotopy::FacetHomotopy(const CycleInstance& inst, const Facet& facet) : inst_(inst)
{
    inst_.validate();
    if (facet.N != inst.N)
        throw std::invalid_argument("facet and instance have different N");
    const auto alpha = facet_normal(facet);
    const IntMatrix W = polytope_vertices(inst.N);
    for (int j = 1; j <= inst.N; ++j) {
        const int tail = j - 1;
        const int head = j % inst.N;
        for (int sign : {1, -1}) {
            const Eigen::Index col = 2 * (j - 1) + (sign > 0 ? 0 : 1);
            Rational pairing(0);
            for (Eigen::Index i = 0; i < W.rows(); ++i)
                if (W(i, col) != 0)
                    pairing = pairing + alpha[i] * Rational(W(i, col));
            const Rational w = Rational(1) + pairing;
            if (w.den != 1 || w.num < 0)
                throw std::logic_error("facet normal gives a non-integral or negative weight");
            Term t = sign > 0 ? Term{tail, head, static_cast<int>(w.num)}
                              : Term{head, tail, static_cast<int>(w.num)};
            terms_.push_back(t);
        }
    }
}

std::vector<int> FacetHomotopy::weights() const
{
    std::vector<int> w;
    for (const auto& t : terms_)
        w.push_back(t.weight);
    return w;
}

CVector FacetHomotopy::evaluate(const CVector& x, Complex s) const
{
    CVector H = inst_.omega;
    for (const auto& t : terms_) {
        const Complex c = inst_.a * (coord(x, t.num) / coord(x, t.den)) * spow(s, t.weight);
        if (t.num != 0)
            H[t.num - 1] -= c;
        if (t.den != 0)
            H[t.den - 1] += c;
    }
    return H;
}

CMatrix FacetHomotopy::jacobian(const CVector& x, Complex s) const
{
    const int n = inst_.n();
    CMatrix J = CMatrix::Zero(n, n);
    for (const auto& t : terms_) {
        const Complex m = inst_.a * (coord(x, t.num) / coord(x, t.den)) * spow(s, t.weight);
        // gradient of the monomial
        const Complex d_num = t.num != 0 ? m / coord(x, t.num) : 0.0;
        const Complex d_den = t.den != 0 ? -m / coord(x, t.den) : 0.0;
        for (int row : {t.num, t.den}) {
            if (row == 0)
                continue;
            const double v = row == t.num ? 1.0 : -1.0;
            if (t.num != 0)
                J(row - 1, t.num - 1) -= v * d_num;
            if (t.den != 0)
                J(row - 1, t.den - 1) -= v * d_den;
        }
    }
    return J;
}

CVector FacetHomotopy::derivative_s(const CVector& x, Complex s) const
{
    CVector D = CVector::Zero(inst_.n());
    for (const auto& t : terms_) {
        if (t.weight == 0)
            continue;
        const Complex c =
            inst_.a * (coord(x, t.num) / coord(x, t.den)) * double(t.weight) * spow(s, t.weight - 1);
        if (t.num != 0)
            D[t.num - 1] -= c;
        if (t.den != 0)
            D[t.den - 1] += c;
    }
    return D;
}

TrackResult track_path(const FacetHomotopy& H, const CVector& start, const TrackerOptions& opts)
{
    const Complex ig(0.0, opts.detour);
    auto s_of = [&](double t) { return t + ig * t * (1.0 - t); };
    auto ds_of = [&](double t) { return 1.0 + ig * (1.0 - 2.0 * t); };

    // dx/dt = -H_x^{-1} H_s s'(t)
    auto velocity = [&](const CVector& x, double t) -> std::optional<CVector> {
        const Eigen::PartialPivLU<CMatrix> lu(H.jacobian(x, s_of(t)));
        CVector v = -lu.solve(H.derivative_s(x, s_of(t)) * ds_of(t));
        if (!v.allFinite())
            return std::nullopt;
        return v;
    };

    TrackResult res;
    CVector x = start;
    double t = 0.0;
    double h = opts.initial_step;
    int streak = 0;

    while (t < 1.0) {
        if (res.steps + res.rejected >= opts.max_steps) {
            res.message = "step budget exhausted at t=" + std::to_string(t);
            res.x = x;
            return res;
        }
        const double t1 = std::min(1.0, t + h);
        const double dt = t1 - t;

        bool ok = false;
        CVector xn;
        if (auto k1 = velocity(x, t)) {
            auto k2 = velocity(x + 0.5 * dt * *k1, t + 0.5 * dt);
            auto k3 = k2 ? velocity(x + 0.5 * dt * *k2, t + 0.5 * dt) : std::nullopt;
            auto k4 = k3 ? velocity(x + dt * *k3, t1) : std::nullopt;
            if (k4) {
                xn = x + dt / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
                // Newton corrector at t1: the first update must be small and
                // the iteration must contract quickly.
                // Chord iterations reuse one factorization.
                ok = finite_on_torus(xn);
                double prev = 0.0;
                const Complex s1 = s_of(t1);
                const Eigen::PartialPivLU<CMatrix> lu(H.jacobian(xn, s1));
                for (int it = 0; ok && it < 4; ++it) {
                    const CVector d = lu.solve(H.evaluate(xn, s1));
                    const double r = relative_norm(d, xn);
                    if (!std::isfinite(r) || (it == 0 && r > 1e-3) || (it > 0 && r > 0.25 * prev)) {
                        ok = false;
                        break;
                    }
                    xn -= d;
                    prev = r;
                    if (r < 1e-12)
                        break;
                }
                ok = ok && prev < 1e-9 && finite_on_torus(xn);
            }
        }

        if (ok) {
            x = xn;
            t = t1;
            ++res.steps;
            if (++streak >= 3) {
                h = std::min(opts.max_step, 2.0 * h);
                streak = 0;
            }
        } else {
            ++res.rejected;
            streak = 0;
            h *= 0.5;
            if (h < opts.min_step) {
                res.message = "step size underflow at t=" + std::to_string(t);
                res.x = x;
                return res;
            }
        }
    }
    res.success = true;
    res.x = x;
    return res;
}

}  // namespace kuracycle
