#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "stg/multivector.hpp"

using namespace stg;

using MV = Multivector<double>;

namespace {

// Independent product oracle: swap-count sign (pairs (i,j) with i in a,
// j in b, i > j each contribute one transposition) times the metric factors
// of annihilated common generators. Deliberately a different algorithm from
// the word reduction used by the library table.
int oracle_sign(unsigned a, unsigned b) {
    int swaps = 0;
    for (unsigned t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
    int sign = (swaps % 2) ? -1 : 1;
    unsigned common = a & b;
    for (int i = 0; i < 4; ++i)
        if (common & (1u << i)) sign *= kEta[i];
    return sign;
}

MV random_mv(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    MV m;
    for (int i = 0; i < kBlades; ++i) m.c[i] = dist(rng);
    return m;
}

MV random_grade(std::mt19937& rng, int k) {
    return grade_project(random_mv(rng), k);
}

double rel_diff(const MV& a, const MV& b) {
    double scale = std::max(a.max_abs(), b.max_abs());
    if (scale == 0.0) return 0.0;
    return (a - b).max_abs() / scale;
}

}  // namespace

TEST_CASE("product table matches the independent swap-count oracle") {
    for (unsigned a = 0; a < kBlades; ++a)
        for (unsigned b = 0; b < kBlades; ++b)
            CHECK(product_sign(BladeMask(a), BladeMask(b)) == oracle_sign(a, b));
}

TEST_CASE("generator relation theta^a theta^b + theta^b theta^a = 2 eta^ab") {
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            MV lhs = MV::basis(a) * MV::basis(b) + MV::basis(b) * MV::basis(a);
            MV rhs = MV::scalar(a == b ? 2.0 * kEta[a] : 0.0);
            for (int i = 0; i < kBlades; ++i) CHECK(lhs.c[i] == rhs.c[i]);  // exact
        }
    }
}

TEST_CASE("geometric product examples") {
    CHECK((MV::basis(0) * MV::basis(0)).c[0] == 1.0);
    CHECK((MV::basis(1) * MV::basis(1)).c[0] == -1.0);
    MV p = MV::basis(0) * MV::basis(1) * MV::basis(0);
    CHECK(p.c[1 << 1] == -1.0);  // theta^0 theta^1 theta^0 = -theta^1
    CHECK(p.max_abs() == 1.0);
}

TEST_CASE("geometric product is associative") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        MV a = random_mv(rng), b = random_mv(rng), c = random_mv(rng);
        CHECK(rel_diff((a * b) * c, a * (b * c)) < 1e-12);
    }
}

TEST_CASE("wedge product") {
    CHECK(wedge(MV::basis(0), MV::basis(0)).max_abs() == 0.0);
    CHECK(wedge(MV::basis(0), MV::basis(1)).c[0b0011] == 1.0);
    MV q = wedge(wedge(MV::basis(0), MV::basis(1)), wedge(MV::basis(2), MV::basis(3)));
    CHECK(q.c[kVolume] == 1.0);
    CHECK(q.max_abs() == 1.0);

    // A_r ^ B_s = (-1)^{rs} B_s ^ A_r on homogeneous inputs
    std::mt19937 rng(7);
    for (int r = 0; r <= 4; ++r)
        for (int s = 0; s + r <= 4; ++s)
            for (int trial = 0; trial < 20; ++trial) {
                MV a = random_grade(rng, r), b = random_grade(rng, s);
                double sign = (r * s) % 2 ? -1.0 : 1.0;
                MV rhs = wedge(b, a);
                for (int i = 0; i < kBlades; ++i) rhs.c[i] *= sign;
                CHECK(rel_diff(wedge(a, b), rhs) < 1e-14);
            }
}

TEST_CASE("left contraction") {
    MV b01 = wedge(MV::basis(0), MV::basis(1));
    CHECK(rel_diff(left_contract(MV::basis(0), b01), MV::basis(1)) == 0.0);
    CHECK(rel_diff(left_contract(MV::basis(1), b01), MV::basis(0)) == 0.0);

    // scalar left argument acts as pointwise product
    std::mt19937 rng(3);
    MV a = random_mv(rng);
    CHECK(rel_diff(left_contract(MV::scalar(2.5), a), 2.5 * a) == 0.0);

    // <A>_r _| <B>_s = 0 when r > s
    for (int r = 0; r <= 4; ++r)
        for (int s = 0; s < r; ++s) {
            MV x = random_grade(rng, r), y = random_grade(rng, s);
            CHECK(left_contract(x, y).max_abs() == 0.0);
        }

    // A_r _| B_s = (-1)^{r(s-1)} B_s |_ A_r
    for (int r = 0; r <= 4; ++r)
        for (int s = r; s <= 4; ++s)
            for (int trial = 0; trial < 10; ++trial) {
                MV x = random_grade(rng, r), y = random_grade(rng, s);
                double sign = (r * (s - 1)) % 2 ? -1.0 : 1.0;
                MV rhs = right_contract(y, x);
                for (int i = 0; i < kBlades; ++i) rhs.c[i] *= sign;
                CHECK(rel_diff(left_contract(x, y), rhs) < 1e-14);
            }
}

TEST_CASE("vector decomposition aB = a _| B + a ^ B") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        MV a = random_grade(rng, 1);
        MV B = random_mv(rng);
        CHECK(rel_diff(a * B, left_contract(a, B) + wedge(a, B)) < 1e-14);
    }
}

TEST_CASE("scalar product") {
    CHECK(scalar_product(MV::basis(0), MV::basis(0)) == 1.0);
    MV b01 = wedge(MV::basis(0), MV::basis(1));
    CHECK(scalar_product(b01, b01) == -1.0);
    CHECK(scalar_product(MV::basis(0), b01) == 0.0);

    // Gram determinant oracle on blades built from random vectors
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto rand_vec = [&] {
        MV v;
        for (int a = 0; a < 4; ++a) v.c[1 << a] = dist(rng);
        return v;
    };
    auto dot = [](const MV& u, const MV& v) { return scalar_product(u, v); };
    for (int trial = 0; trial < 100; ++trial) {
        MV a1 = rand_vec(), a2 = rand_vec(), b1 = rand_vec(), b2 = rand_vec();
        double det = dot(a1, b1) * dot(a2, b2) - dot(a1, b2) * dot(a2, b1);
        double got = scalar_product(wedge(a1, a2), wedge(b1, b2));
        CHECK(got == doctest::Approx(det).epsilon(1e-12));
    }
    for (int trial = 0; trial < 100; ++trial) {
        MV a1 = rand_vec(), a2 = rand_vec(), a3 = rand_vec();
        MV b1 = rand_vec(), b2 = rand_vec(), b3 = rand_vec();
        double det = dot(a1, b1) * (dot(a2, b2) * dot(a3, b3) - dot(a2, b3) * dot(a3, b2)) -
                     dot(a1, b2) * (dot(a2, b1) * dot(a3, b3) - dot(a2, b3) * dot(a3, b1)) +
                     dot(a1, b3) * (dot(a2, b1) * dot(a3, b2) - dot(a2, b2) * dot(a3, b1));
        double got = scalar_product(wedge(wedge(a1, a2), a3), wedge(wedge(b1, b2), b3));
        CHECK(got == doctest::Approx(det).epsilon(1e-12));
    }

    // symmetry and cross-grade vanishing on random homogeneous parts
    std::mt19937 rng2(13);
    for (int r = 0; r <= 4; ++r)
        for (int s = 0; s <= 4; ++s) {
            MV x = random_grade(rng2, r), y = random_grade(rng2, s);
            if (r != s)
                CHECK(scalar_product(x, y) == 0.0);
            else
                CHECK(scalar_product(x, y) == doctest::Approx(scalar_product(y, x)).epsilon(1e-14));
        }
}

TEST_CASE("reversion") {
    CHECK(reverse(MV::scalar(1.0)).c[0] == 1.0);
    MV b01 = wedge(MV::basis(0), MV::basis(1));
    CHECK(reverse(b01).c[0b0011] == -1.0);
    CHECK(reverse(MV::volume()).c[kVolume] == 1.0);

    // anti-automorphism: reverse(AB) = reverse(B) reverse(A)
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        MV a = random_mv(rng), b = random_mv(rng);
        CHECK(rel_diff(reverse(a * b), reverse(b) * reverse(a)) < 1e-14);
    }

    // involution
    MV a = random_mv(rng);
    CHECK(rel_diff(reverse(reverse(a)), a) == 0.0);
}

TEST_CASE("grade projection") {
    MV p = MV::basis(0) * MV::basis(1);
    CHECK(rel_diff(grade_project(p, 2), wedge(MV::basis(0), MV::basis(1))) == 0.0);
    MV q = MV::basis(0) * MV::basis(0);
    CHECK(grade_project(q, 0).c[0] == 1.0);
    CHECK(grade_project(q, 2).max_abs() == 0.0);

    std::mt19937 rng(19);
    MV a = random_mv(rng);
    MV sum;
    for (int k = 0; k <= 4; ++k) {
        MV pk = grade_project(a, k);
        CHECK(rel_diff(grade_project(pk, k), pk) == 0.0);  // idempotent
        sum += pk;
    }
    CHECK(rel_diff(sum, a) == 0.0);
}

TEST_CASE("hodge star") {
    CHECK(hodge_star(MV::scalar(1.0)).c[kVolume] == 1.0);
    CHECK(hodge_star(MV::volume()).c[0] == -1.0);
    MV t123 = wedge(wedge(MV::basis(1), MV::basis(2)), MV::basis(3));
    CHECK(rel_diff(hodge_star(MV::basis(0)), t123) == 0.0);

    // inverse and per-grade square signs (derived from the table)
    const int star_square[5] = {-1, +1, -1, +1, -1};
    for (int i = 0; i < kBlades; ++i) {
        MV b = MV::blade(BladeMask(i));
        CHECK(rel_diff(hodge_star_inverse(hodge_star(b)), b) == 0.0);
        CHECK(rel_diff(hodge_star(hodge_star(b)),
                       double(star_square[grade(BladeMask(i))]) * b) == 0.0);
    }

    // defining property: [B_k . A_k] tau = grade-4 part of B ^ *A, all pairs
    for (int i = 0; i < kBlades; ++i) {
        for (int j = 0; j < kBlades; ++j) {
            MV A = MV::blade(BladeMask(i)), B = MV::blade(BladeMask(j));
            MV lhs = scalar_product(B, A) * MV::volume();
            MV rhs = grade_project(wedge(B, hodge_star(A)), 4);
            CHECK(rel_diff(lhs, rhs) == 0.0);
        }
    }
}

TEST_CASE("energy-momentum sandwich identity on random vector/bivector pairs") {
    // 1/2 F n F~ = (n _| F) _| F + 1/2 n (F.F)
    std::mt19937 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        MV n = random_grade(rng, 1);
        MV F = random_grade(rng, 2);
        MV lhs = 0.5 * (F * n * reverse(F));
        MV rhs = left_contract(left_contract(n, F), F) + (0.5 * scalar_product(F, F)) * n;
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
    // spot value: n = theta^0, F = theta^0 ^ theta^1 gives both sides 1/2 theta^0
    MV n = MV::basis(0);
    MV F = wedge(MV::basis(0), MV::basis(1));
    MV lhs = 0.5 * (F * n * reverse(F));
    CHECK(lhs.c[1 << 0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rel_diff(lhs, left_contract(left_contract(n, F), F) +
                            (0.5 * scalar_product(F, F)) * n) == 0.0);
}
