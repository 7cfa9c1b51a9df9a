#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace stg {

// Second-order jet over the 4 chart coordinates: value, gradient and
// symmetric Hessian are carried through every arithmetic operation, so
// evaluating an expression in Jet2 arithmetic yields its exact first and
// second partial derivatives (to rounding).
//
// The Hessian is stored packed (upper triangle, 10 entries), which makes
// its symmetry exact by construction.
class Jet2 {
public:
    static constexpr int kDim = 4;
    static constexpr int kHessSize = 10;

    double value = 0.0;
    std::array<double, kDim> grad{};
    std::array<double, kHessSize> hess{};  // packed upper triangle, (i,j) with i <= j

    constexpr Jet2() = default;
    constexpr Jet2(double v) : value(v) {}  // constant: zero derivatives

    static constexpr int hess_index(int i, int j) {
        if (i > j) { int t = i; i = j; j = t; }
        // row-major upper triangle of a 4x4
        return i * kDim - i * (i + 1) / 2 + j;
    }

    double hess_at(int i, int j) const { return hess[hess_index(i, j)]; }

    // Seed for the coordinate x^mu: value v, unit gradient, zero Hessian.
    static Jet2 variable(double v, int mu) {
        Jet2 j(v);
        j.grad[mu] = 1.0;
        return j;
    }

    Jet2 operator-() const {
        Jet2 r;
        r.value = -value;
        for (int i = 0; i < kDim; ++i) r.grad[i] = -grad[i];
        for (int i = 0; i < kHessSize; ++i) r.hess[i] = -hess[i];
        return r;
    }

    Jet2& operator+=(const Jet2& o) {
        value += o.value;
        for (int i = 0; i < kDim; ++i) grad[i] += o.grad[i];
        for (int i = 0; i < kHessSize; ++i) hess[i] += o.hess[i];
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        value -= o.value;
        for (int i = 0; i < kDim; ++i) grad[i] -= o.grad[i];
        for (int i = 0; i < kHessSize; ++i) hess[i] -= o.hess[i];
        return *this;
    }
    Jet2& operator*=(const Jet2& o) { *this = *this * o; return *this; }
    Jet2& operator/=(const Jet2& o) { *this = *this / o; return *this; }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { a += b; return a; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { a -= b; return a; }

    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        Jet2 r;
        r.value = a.value * b.value;
        for (int i = 0; i < kDim; ++i)
            r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
        for (int i = 0; i < kDim; ++i)
            for (int j = i; j < kDim; ++j)
                r.hess[hess_index(i, j)] =
                    a.hess_at(i, j) * b.value + a.value * b.hess_at(i, j) +
                    a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i];
        return r;
    }

    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        return a * b.reciprocal();
    }

    Jet2 reciprocal() const {
        Jet2 r;
        double inv = 1.0 / value;
        double inv2 = inv * inv;
        r.value = inv;
        for (int i = 0; i < kDim; ++i) r.grad[i] = -grad[i] * inv2;
        for (int i = 0; i < kDim; ++i)
            for (int j = i; j < kDim; ++j)
                r.hess[hess_index(i, j)] =
                    (2.0 * grad[i] * grad[j] * inv - hess_at(i, j)) * inv2;
        return r;
    }

    // Lift through a scalar function given f(x), f'(x), f''(x) at value.
    Jet2 compose(double f, double fp, double fpp) const {
        Jet2 r;
        r.value = f;
        for (int i = 0; i < kDim; ++i) r.grad[i] = fp * grad[i];
        for (int i = 0; i < kDim; ++i)
            for (int j = i; j < kDim; ++j)
                r.hess[hess_index(i, j)] =
                    fpp * grad[i] * grad[j] + fp * hess_at(i, j);
        return r;
    }

    // Jet of the partial derivative d/dx^mu of this quantity. The result's
    // value and gradient are exact; its Hessian would need third derivatives
    // of the source, so it is zeroed. Quantities built through one such
    // shift still differentiate once more with exact values.
    Jet2 derivative_component(int mu) const {
        Jet2 r;
        r.value = grad[mu];
        for (int j = 0; j < kDim; ++j) r.grad[j] = hess_at(mu, j);
        return r;
    }
};

inline Jet2 sin(const Jet2& x)  { return x.compose(std::sin(x.value),  std::cos(x.value), -std::sin(x.value)); }
inline Jet2 cos(const Jet2& x)  { return x.compose(std::cos(x.value), -std::sin(x.value), -std::cos(x.value)); }
inline Jet2 exp(const Jet2& x)  { double e = std::exp(x.value); return x.compose(e, e, e); }
inline Jet2 log(const Jet2& x)  { double v = x.value; return x.compose(std::log(v), 1.0 / v, -1.0 / (v * v)); }
inline Jet2 sinh(const Jet2& x) { return x.compose(std::sinh(x.value), std::cosh(x.value), std::sinh(x.value)); }
inline Jet2 cosh(const Jet2& x) { return x.compose(std::cosh(x.value), std::sinh(x.value), std::cosh(x.value)); }

inline Jet2 tan(const Jet2& x) {
    double t = std::tan(x.value);
    double s = 1.0 + t * t;            // sec^2
    return x.compose(t, s, 2.0 * t * s);
}
inline Jet2 tanh(const Jet2& x) {
    double t = std::tanh(x.value);
    double s = 1.0 - t * t;
    return x.compose(t, s, -2.0 * t * s);
}
inline Jet2 sqrt(const Jet2& x) {
    double s = std::sqrt(x.value);
    return x.compose(s, 0.5 / s, -0.25 / (s * s * s));
}
inline Jet2 abs(const Jet2& x) {
    return x.value < 0.0 ? -x : x;
}
inline Jet2 pow(const Jet2& a, const Jet2& b) {
    if (b.grad == std::array<double, 4>{} && b.hess == std::array<double, 10>{}) {
        // constant exponent: valid for negative bases with integral exponent
        double p = b.value;
        double f = std::pow(a.value, p);
        double fp = p * std::pow(a.value, p - 1.0);
        double fpp = p * (p - 1.0) * std::pow(a.value, p - 2.0);
        return a.compose(f, fp, fpp);
    }
    return exp(b * log(a));
}

inline double magnitude(const Jet2& x) { return std::abs(x.value); }
inline double magnitude(double x) { return std::abs(x); }

// True only when the whole jet vanishes, derivatives included; used to
// short-circuit product loops safely.
inline bool is_zero(const Jet2& x) {
    return x.value == 0.0 && x.grad == std::array<double, 4>{} &&
           x.hess == std::array<double, 10>{};
}
inline bool is_zero(double x) { return x == 0.0; }

// Scalar-concept helpers so Multivector<S> code reads uniformly.
inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.value; }

}  // namespace stg
