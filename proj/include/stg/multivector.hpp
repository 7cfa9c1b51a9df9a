#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <ostream>

#include "stg/jet.hpp"

namespace stg {

// Dense element of the real Clifford algebra of signature (1,3), the
// spacetime algebra, over a pluggable scalar type S (double or Jet2).
//
// Basis blades are indexed by a 4-bit mask over the labels {0,1,2,3}:
// bit a set means the generator theta^a participates, and the canonical
// blade is the ascending product theta^{i1}...theta^{ik}. Mask 0 is the
// scalar 1 and mask 15 the volume element theta5 = theta^0123.

using BladeMask = std::uint8_t;

constexpr int kBlades = 16;
constexpr BladeMask kVolume = 0xF;

inline int grade(BladeMask m) { return std::popcount(static_cast<unsigned>(m)); }

// eta = diag(+1,-1,-1,-1), hard-fixed
inline constexpr std::array<int, 4> kEta = {1, -1, -1, -1};

// Reduce an arbitrary word of generator labels to (sign, canonical mask) by
// literal application of theta^a theta^b = -theta^b theta^a (a != b) and
// theta^a theta^a = eta^aa. Built once at startup; the 16x16 product table
// below is filled from it.
struct BladeProduct {
    std::array<std::array<int, kBlades>, kBlades> sign{};

    BladeProduct() {
        for (BladeMask a = 0; a < kBlades; ++a) {
            for (BladeMask b = 0; b < kBlades; ++b) {
                int labels[8];
                int n = 0;
                for (int i = 0; i < 4; ++i)
                    if (a & (1 << i)) labels[n++] = i;
                for (int i = 0; i < 4; ++i)
                    if (b & (1 << i)) labels[n++] = i;
                int s = 1;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (int i = 0; i + 1 < n; ++i) {
                        if (labels[i] == labels[i + 1]) {
                            s *= kEta[labels[i]];
                            for (int j = i; j + 2 < n; ++j) labels[j] = labels[j + 2];
                            n -= 2;
                            changed = true;
                            break;
                        }
                        if (labels[i] > labels[i + 1]) {
                            int t = labels[i];
                            labels[i] = labels[i + 1];
                            labels[i + 1] = t;
                            s = -s;
                            changed = true;
                            break;
                        }
                    }
                }
                sign[a][b] = s;
            }
        }
    }
};

inline const BladeProduct& blade_table() {
    static const BladeProduct table;
    return table;
}

// blade(a) * blade(b) = product_sign(a,b) * blade(a ^ b)
inline int product_sign(BladeMask a, BladeMask b) { return blade_table().sign[a][b]; }

// reversion sign (-1)^{k(k-1)/2}
inline int reverse_sign(BladeMask m) {
    int k = grade(m);
    return (k * (k - 1) / 2) % 2 == 0 ? 1 : -1;
}

template <typename S>
class Multivector {
public:
    std::array<S, kBlades> c{};

    Multivector() = default;

    static Multivector scalar(const S& s) {
        Multivector m;
        m.c[0] = s;
        return m;
    }
    static Multivector blade(BladeMask mask, const S& s = S(1)) {
        Multivector m;
        m.c[mask] = s;
        return m;
    }
    // basis covector theta^a
    static Multivector basis(int a) { return blade(BladeMask(1u << a)); }
    // reciprocal basis theta_a = eta_aa theta^a
    static Multivector basis_lower(int a) { return blade(BladeMask(1u << a), S(kEta[a])); }
    static Multivector volume() { return blade(kVolume); }

    Multivector operator-() const {
        Multivector r;
        for (int i = 0; i < kBlades; ++i) r.c[i] = -c[i];
        return r;
    }
    Multivector& operator+=(const Multivector& o) {
        for (int i = 0; i < kBlades; ++i) c[i] += o.c[i];
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        for (int i = 0; i < kBlades; ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Multivector operator+(Multivector a, const Multivector& b) { a += b; return a; }
    friend Multivector operator-(Multivector a, const Multivector& b) { a -= b; return a; }
    friend Multivector operator*(const S& s, const Multivector& m) {
        Multivector r;
        for (int i = 0; i < kBlades; ++i) r.c[i] = s * m.c[i];
        return r;
    }
    friend Multivector operator*(const Multivector& m, const S& s) { return s * m; }

    friend Multivector operator*(const Multivector& a, const Multivector& b) {
        return geometric_product(a, b);
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < kBlades; ++i) {
            double v = magnitude(c[i]);
            if (v > m) m = v;
        }
        return m;
    }
};

template <typename S>
Multivector<S> geometric_product(const Multivector<S>& a, const Multivector<S>& b) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        if (is_zero(a.c[i])) continue;
        for (int j = 0; j < kBlades; ++j) {
            if (is_zero(b.c[j])) continue;
            int s = product_sign(BladeMask(i), BladeMask(j));
            S term = a.c[i] * b.c[j];
            if (s < 0)
                r.c[i ^ j] -= term;
            else
                r.c[i ^ j] += term;
        }
    }
    return r;
}

template <typename S>
Multivector<S> grade_project(const Multivector<S>& a, int k) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i)
        if (grade(BladeMask(i)) == k) r.c[i] = a.c[i];
    return r;
}

// A_r ^ B_s = <A_r B_s>_{r+s}: blade pairs contribute iff disjoint.
template <typename S>
Multivector<S> wedge(const Multivector<S>& a, const Multivector<S>& b) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        if (is_zero(a.c[i])) continue;
        for (int j = 0; j < kBlades; ++j) {
            if ((i & j) != 0) continue;
            if (is_zero(b.c[j])) continue;
            int s = product_sign(BladeMask(i), BladeMask(j));
            S term = a.c[i] * b.c[j];
            if (s < 0)
                r.c[i | j] -= term;
            else
                r.c[i | j] += term;
        }
    }
    return r;
}

// Left contraction: grade-(s-r) part of blade products, nonzero iff the
// left mask is contained in the right one. Grade-0 left factors act as
// plain scalar multiplication.
template <typename S>
Multivector<S> left_contract(const Multivector<S>& a, const Multivector<S>& b) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        if (is_zero(a.c[i])) continue;
        for (int j = 0; j < kBlades; ++j) {
            if ((i & j) != i) continue;  // need mask(a) subseteq mask(b)
            if (is_zero(b.c[j])) continue;
            int s = product_sign(BladeMask(i), BladeMask(j));
            S term = a.c[i] * b.c[j];
            if (s < 0)
                r.c[i ^ j] -= term;
            else
                r.c[i ^ j] += term;
        }
    }
    return r;
}

template <typename S>
Multivector<S> right_contract(const Multivector<S>& a, const Multivector<S>& b) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        if (is_zero(a.c[i])) continue;
        for (int j = 0; j < kBlades; ++j) {
            if ((i & j) != j) continue;  // need mask(b) subseteq mask(a)
            if (is_zero(b.c[j])) continue;
            int s = product_sign(BladeMask(i), BladeMask(j));
            S term = a.c[i] * b.c[j];
            if (s < 0)
                r.c[i ^ j] -= term;
            else
                r.c[i ^ j] += term;
        }
    }
    return r;
}

// A . B = <A~ B>_0 grade by grade; zero between distinct grades.
template <typename S>
S scalar_product(const Multivector<S>& a, const Multivector<S>& b) {
    S r(0);
    for (int i = 0; i < kBlades; ++i) {
        int s = reverse_sign(BladeMask(i)) * product_sign(BladeMask(i), BladeMask(i));
        S term = a.c[i] * b.c[i];
        if (s < 0)
            r -= term;
        else
            r += term;
    }
    return r;
}

template <typename S>
Multivector<S> reverse(const Multivector<S>& a) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        r.c[i] = reverse_sign(BladeMask(i)) < 0 ? -a.c[i] : a.c[i];
    }
    return r;
}

// Hodge dual: *A_k = A~_k theta5. Grade k goes to grade 4-k.
//
// The squared star is grade-dependent; with eta = diag(+,-,-,-) the table
// reduction gives **A_k = s_k A_k with s_k = (-1, +1, -1, +1, -1) for
// k = 0..4, so the inverse below applies the matching sign per blade.
template <typename S>
Multivector<S> hodge_star(const Multivector<S>& a) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        int s = reverse_sign(BladeMask(i)) * product_sign(BladeMask(i), kVolume);
        r.c[i ^ kVolume] = s < 0 ? -a.c[i] : a.c[i];
    }
    return r;
}

template <typename S>
Multivector<S> hodge_star_inverse(const Multivector<S>& a) {
    Multivector<S> r;
    for (int i = 0; i < kBlades; ++i) {
        // blade(i ^ 15) is the preimage; divide by the sign star gives it
        int pre = i ^ kVolume;
        int s = reverse_sign(BladeMask(pre)) * product_sign(BladeMask(pre), kVolume);
        r.c[pre] = s < 0 ? -a.c[i] : a.c[i];
    }
    return r;
}

// Max-abs-coefficient comparison with relative tolerance and an absolute
// floor of 1e-14.
template <typename S>
bool approx_equal(const Multivector<S>& a, const Multivector<S>& b, double rtol = 1e-12) {
    double scale = a.max_abs();
    double sb = b.max_abs();
    if (sb > scale) scale = sb;
    double tol = rtol * scale;
    if (tol < 1e-14) tol = 1e-14;
    for (int i = 0; i < kBlades; ++i)
        if (magnitude(a.c[i] - b.c[i]) > tol) return false;
    return true;
}

inline std::ostream& operator<<(std::ostream& os, const Multivector<double>& m) {
    static const char* names[] = {"1",   "t0",  "t1",  "t01", "t2",  "t02",
                                  "t12", "t012","t3",  "t03", "t13", "t013",
                                  "t23", "t023","t123","t0123"};
    bool any = false;
    for (int i = 0; i < kBlades; ++i) {
        if (m.c[i] == 0.0) continue;
        if (any) os << " + ";
        os << m.c[i] << "*" << names[i];
        any = true;
    }
    if (!any) os << "0";
    return os;
}

}  // namespace stg
