#include "stg/frame_geometry.hpp"

#include <cmath>

namespace stg {

namespace {

double halton(unsigned long long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

constexpr int kPrimes[4] = {2, 3, 5, 7};

// Ascending bit labels of a mask.
int mask_bits(BladeMask m, int out[4]) {
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (m & (1 << i)) out[n++] = i;
    return n;
}

// Determinant of the k x k submatrix M[rows[i]][cols[j]] by permutation
// expansion (k <= 4).
Jet2 minor_det(const Mat4J& M, const int* rows, const int* cols, int k) {
    switch (k) {
        case 0: return Jet2(1.0);
        case 1: return M[rows[0]][cols[0]];
        case 2:
            return M[rows[0]][cols[0]] * M[rows[1]][cols[1]] -
                   M[rows[0]][cols[1]] * M[rows[1]][cols[0]];
        default: {
            Jet2 sum(0.0);
            for (int j = 0; j < k; ++j) {
                int sub_cols[4];
                int n = 0;
                for (int t = 0; t < k; ++t)
                    if (t != j) sub_cols[n++] = cols[t];
                Jet2 term = M[rows[0]][cols[j]] * minor_det(M, rows + 1, sub_cols, k - 1);
                if (j % 2)
                    sum -= term;
                else
                    sum += term;
            }
            return sum;
        }
    }
}

Mat4J invert(const Mat4J& A, Jet2* det_out) {
    // Gauss-Jordan with partial pivoting on jet values
    Mat4J a = A;
    Mat4J inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = Jet2(1.0);
    Jet2 det(1.0);
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col].value) > std::abs(a[pivot][col].value)) pivot = r;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(inv[pivot], inv[col]);
            det = -det;
        }
        det *= a[col][col];
        Jet2 scale = a[col][col].reciprocal();
        for (int c = 0; c < 4; ++c) {
            a[col][c] = a[col][c] * scale;
            inv[col][c] = inv[col][c] * scale;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            Jet2 factor = a[r][col];
            if (is_zero(factor)) continue;
            for (int c = 0; c < 4; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    if (det_out) *det_out = det;
    return inv;
}

}  // namespace

// ----------------------------------------------------------- FrameContext

FramePoint FrameContext::at(const Point& x) const {
    FramePoint fp;
    fp.x = x;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            fp.H[a][mu] = coframe.h[a][mu].empty() ? Jet2(0.0)
                                                   : coframe.h[a][mu].eval_jet(x, params);
    Jet2 det;
    fp.Hi = invert(fp.H, &det);
    fp.det = det;
    if (std::abs(det.value) <= det_floor) throw SingularFrameError(x, std::abs(det.value));
    return fp;
}

std::vector<Point> FrameContext::sample_points(int n, unsigned seed) const {
    std::vector<Point> out;
    out.reserve(n);
    unsigned long long index = 1 + static_cast<unsigned long long>(seed) * 7919ull;
    int attempts = 0;
    const int max_attempts = 100000;
    while (static_cast<int>(out.size()) < n && attempts < max_attempts) {
        Point x;
        for (int mu = 0; mu < 4; ++mu) {
            double u = halton(index, kPrimes[mu]);
            x[mu] = chart.domain[mu].lo + u * (chart.domain[mu].hi - chart.domain[mu].lo);
        }
        ++index;
        ++attempts;
        bool ok = true;
        for (const auto& locus : chart.excluded) {
            double v;
            try {
                v = locus.eval(x, params);
            } catch (const EvalDomainError&) {
                ok = false;
                break;
            }
            if (std::abs(v) < locus_margin) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        try {
            at(x);
        } catch (const SingularFrameError&) {
            continue;
        } catch (const EvalDomainError&) {
            continue;
        }
        out.push_back(x);
    }
    if (static_cast<int>(out.size()) < n)
        throw std::runtime_error("could not draw enough sample points away from excluded loci");
    return out;
}

// ------------------------------------------------------------- FramePoint

Jet2 FramePoint::pfaff(const Jet2& f, int a) const {
    Jet2 r(0.0);
    for (int mu = 0; mu < 4; ++mu) r += Hi[mu][a] * f.derivative_component(mu);
    return r;
}

std::array<Jet2, kBlades> FramePoint::to_coordinate(const FormValue& A) const {
    std::array<Jet2, kBlades> c{};
    for (int am = 0; am < kBlades; ++am) {
        if (is_zero(A.c[am])) continue;
        int rows[4];
        int k = mask_bits(BladeMask(am), rows);
        for (int mm = 0; mm < kBlades; ++mm) {
            if (grade(BladeMask(mm)) != k) continue;
            int cols[4];
            mask_bits(BladeMask(mm), cols);
            c[mm] += A.c[am] * minor_det(H, rows, cols, k);
        }
    }
    return c;
}

FormValue FramePoint::from_coordinate(const std::array<Jet2, kBlades>& c) const {
    FormValue A;
    for (int mm = 0; mm < kBlades; ++mm) {
        if (is_zero(c[mm])) continue;
        int rows[4];
        int k = mask_bits(BladeMask(mm), rows);
        for (int am = 0; am < kBlades; ++am) {
            if (grade(BladeMask(am)) != k) continue;
            int cols[4];
            mask_bits(BladeMask(am), cols);
            A.c[am] += c[mm] * minor_det(Hi, rows, cols, k);
        }
    }
    return A;
}

FormValue FramePoint::exterior_derivative(const FormValue& A) const {
    std::array<Jet2, kBlades> c = to_coordinate(A);
    std::array<Jet2, kBlades> dc{};
    for (int m = 0; m < kBlades; ++m) {
        if (grade(BladeMask(m)) == 4) continue;
        for (int nu = 0; nu < 4; ++nu) {
            int bit = 1 << nu;
            if (m & bit) continue;
            // dx^nu ^ dx^m = (-1)^{bits of m below nu} dx^{m | bit}
            int below = std::popcount(static_cast<unsigned>(m & (bit - 1)));
            Jet2 term = c[m].derivative_component(nu);
            if (below % 2)
                dc[m | bit] -= term;
            else
                dc[m | bit] += term;
        }
    }
    return from_coordinate(dc);
}

const FormValue& FramePoint::dtheta(int a) const {
    if (!dtheta_) {
        std::array<FormValue, 4> d;
        for (int b = 0; b < 4; ++b)
            d[b] = exterior_derivative(Multivector<Jet2>::basis(b));
        dtheta_ = std::move(d);
    }
    return (*dtheta_)[a];
}

namespace {

// 1/2 [ theta^d _| X^c - theta^c _| X^d + (theta^c _| (theta^d _| X_a)) theta^a ]
// for a family of grade-2 values X^a; this is the Levi-Civita connection
// when X = d theta and minus the contorsion when X = Theta.
FormValue frame_contraction(const std::array<FormValue, 4>& X, int c, int d) {
    using MV = Multivector<Jet2>;
    MV td = MV::basis(d), tc = MV::basis(c);
    FormValue r = left_contract(td, X[c]) - left_contract(tc, X[d]);
    for (int a = 0; a < 4; ++a) {
        FormValue Xlow = Jet2(double(kEta[a])) * X[a];
        Jet2 s = left_contract(tc, left_contract(td, Xlow)).c[0];
        r += s * MV::basis(a);
    }
    return Jet2(0.5) * r;
}

}  // namespace

const std::array<std::array<FormValue, 4>, 4>& FramePoint::levi_civita() const {
    if (!lc_) {
        std::array<FormValue, 4> dth;
        for (int a = 0; a < 4; ++a) dth[a] = dtheta(a);
        std::array<std::array<FormValue, 4>, 4> w{};
        for (int c = 0; c < 4; ++c) {
            for (int d = c + 1; d < 4; ++d) {
                FormValue up = frame_contraction(dth, c, d);  // omega^{cd}
                // omega^c_d = omega^{cd} eta_dd, omega^d_c = -omega^{cd} eta_cc
                w[c][d] = Jet2(double(kEta[d])) * up;
                w[d][c] = Jet2(double(-kEta[c])) * up;
            }
        }
        lc_ = std::move(w);
    }
    return *lc_;
}

Mat4J FramePoint::metric() const {
    Mat4J g{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu; nu < 4; ++nu) {
            Jet2 s(0.0);
            for (int a = 0; a < 4; ++a) {
                Jet2 t = H[a][mu] * H[a][nu];
                if (kEta[a] < 0)
                    s -= t;
                else
                    s += t;
            }
            g[mu][nu] = s;
            g[nu][mu] = s;
        }
    }
    return g;
}

std::array<std::array<std::array<Jet2, 4>, 4>, 4> FramePoint::structure_coefficients() const {
    // bracket^mu_mn = e_m^nu d_nu e_n^mu - e_n^nu d_nu e_m^mu, then project
    // on the coframe: c^a_mn = h^a_mu bracket^mu_mn
    std::array<std::array<std::array<Jet2, 4>, 4>, 4> c{};
    for (int m = 0; m < 4; ++m) {
        for (int n = m + 1; n < 4; ++n) {
            std::array<Jet2, 4> bracket{};
            for (int mu = 0; mu < 4; ++mu) {
                Jet2 s(0.0);
                for (int nu = 0; nu < 4; ++nu) {
                    s += Hi[nu][m] * Hi[mu][n].derivative_component(nu);
                    s -= Hi[nu][n] * Hi[mu][m].derivative_component(nu);
                }
                bracket[mu] = s;
            }
            for (int a = 0; a < 4; ++a) {
                Jet2 proj(0.0);
                for (int mu = 0; mu < 4; ++mu) proj += H[a][mu] * bracket[mu];
                c[a][m][n] = proj;
                c[a][n][m] = -proj;
            }
        }
    }
    return c;
}

// -------------------------------------------------------------- FormField

FormField operator+(const FormField& a, const FormField& b) {
    return {a.degree, [a, b](const FramePoint& fp) { return a(fp) + b(fp); }};
}
FormField operator-(const FormField& a, const FormField& b) {
    return {a.degree, [a, b](const FramePoint& fp) { return a(fp) - b(fp); }};
}
FormField scaled(const FormField& a, double s) {
    return {a.degree, [a, s](const FramePoint& fp) { return Jet2(s) * a(fp); }};
}
FormField wedge(const FormField& a, const FormField& b) {
    int deg = a.degree + b.degree;
    if (deg > 4) deg = 4;
    return {deg, [a, b](const FramePoint& fp) { return wedge(a(fp), b(fp)); }};
}

FormField basis_form(int a) {
    return {1, [a](const FramePoint&) { return Multivector<Jet2>::basis(a); }};
}

FormField zero_form(int degree) {
    return {degree, [](const FramePoint&) { return FormValue{}; }};
}

FormField exterior_derivative(const FormField& f) {
    if (f.degree >= 4)
        throw std::invalid_argument("exterior derivative of a degree-4 form");
    return {f.degree + 1,
            [f](const FramePoint& fp) { return fp.exterior_derivative(f(fp)); }};
}

FormField codifferential(const FormField& f) {
    if (f.degree == 0) return zero_form(0);
    int p = f.degree;
    FormField starred{4 - p, [f](const FramePoint& fp) { return hodge_star(f(fp)); }};
    FormField dstar = exterior_derivative(starred);
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return {p - 1, [dstar, sign](const FramePoint& fp) {
                return Jet2(sign) * hodge_star_inverse(dstar(fp));
            }};
}

FormField form_from_exprs(int degree, std::map<BladeMask, Expr> coeffs,
                          std::map<std::string, double> params) {
    for (const auto& [mask, e] : coeffs) {
        if (grade(mask) != degree)
            throw std::invalid_argument("form coefficient mask grade does not match degree");
        (void)e;
    }
    return {degree, [coeffs = std::move(coeffs), params = std::move(params)](const FramePoint& fp) {
                FormValue v;
                for (const auto& [mask, e] : coeffs) v.c[mask] = e.eval_jet(fp.x, params);
                return v;
            }};
}

// ------------------------------------------------------------ connections

std::array<std::array<FormValue, 4>, 4> ConnectionForms::values(const FramePoint& fp) const {
    std::array<std::array<FormValue, 4>, 4> w;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) w[a][b] = omega[a][b](fp);
    return w;
}

ConnectionForms levi_civita_connection() {
    ConnectionForms conn;
    conn.mode = ConnectionMode::LeviCivita;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            conn.omega[a][b] = {1, [a, b](const FramePoint& fp) { return fp.levi_civita()[a][b]; }};
    return conn;
}

ConnectionForms teleparallel_connection() {
    ConnectionForms conn;
    conn.mode = ConnectionMode::Teleparallel;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) conn.omega[a][b] = zero_form(1);
    return conn;
}

ConnectionForms connection_for(ConnectionMode mode) {
    return mode == ConnectionMode::LeviCivita ? levi_civita_connection()
                                              : teleparallel_connection();
}

ConnectionForms connection_from(ConnectionMode mode,
                                std::array<std::array<FormField, 4>, 4> omega) {
    ConnectionForms conn;
    conn.mode = mode;
    conn.omega = std::move(omega);
    return conn;
}

std::array<FormField, 4> torsion_forms(ConnectionMode mode) {
    std::array<FormField, 4> t;
    for (int a = 0; a < 4; ++a) {
        if (mode == ConnectionMode::Teleparallel) {
            t[a] = {2, [a](const FramePoint& fp) { return fp.dtheta(a); }};
        } else {
            t[a] = {2, [a](const FramePoint& fp) {
                        FormValue v = fp.dtheta(a);
                        const auto& w = fp.levi_civita();
                        for (int b = 0; b < 4; ++b)
                            v += wedge(w[a][b], FormValue::basis(b));
                        return v;
                    }};
        }
    }
    return t;
}

std::array<std::array<FormField, 4>, 4> curvature_forms(const ConnectionForms& conn) {
    std::array<std::array<FormField, 4>, 4> r;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            FormField dw = exterior_derivative(conn.omega[a][b]);
            auto omega = conn.omega;
            r[a][b] = {2, [dw, omega, a, b](const FramePoint& fp) {
                           FormValue v = dw(fp);
                           for (int c = 0; c < 4; ++c)
                               v += wedge(omega[a][c](fp), omega[c][b](fp));
                           return v;
                       }};
        }
    }
    return r;
}

std::array<std::array<double, 4>, 4> ricci_components(
    const std::array<std::array<FormValue, 4>, 4>& rv) {
    // R^a_b = 1/2 R^a_bcd theta^c ^ theta^d; canonical blade (c<d) carries
    // the coefficient R^a_bcd directly.
    auto riemann = [&](int a, int b, int c, int d) -> double {
        if (c == d) return 0.0;
        int lo = c < d ? c : d, hi = c < d ? d : c;
        BladeMask mask = BladeMask((1 << lo) | (1 << hi));
        double v = rv[a][b].c[mask].value;
        return c < d ? v : -v;
    };
    std::array<std::array<double, 4>, 4> ricci{};
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a) s += riemann(a, b, a, d);
            ricci[b][d] = s;
        }
    return ricci;
}

double ricci_scalar(const std::array<std::array<FormValue, 4>, 4>& rv) {
    auto ricci = ricci_components(rv);
    double r = 0.0;
    for (int b = 0; b < 4; ++b) r += kEta[b] * ricci[b][b];
    return r;
}

std::array<std::array<FormField, 4>, 4> contorsion(const std::array<FormField, 4>& torsion) {
    std::array<std::array<FormField, 4>, 4> kappa;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            kappa[a][b] = {1, [torsion, a, b](const FramePoint& fp) {
                               std::array<FormValue, 4> T;
                               for (int i = 0; i < 4; ++i) T[i] = torsion[i](fp);
                               // kappa^{ab} = -frame_contraction(T)^{ab}; lower b
                               FormValue up{};
                               if (a != b) up = frame_contraction(T, a, b);
                               return Jet2(double(-kEta[b])) * up;
                           }};
    return kappa;
}

TorsionDecomposition torsion_decomposition(const FramePoint& fp) {
    using MV = Multivector<Jet2>;
    TorsionDecomposition out;
    // trace vector: theta^b _| d theta_b
    FormValue trace{};
    for (int b = 0; b < 4; ++b)
        trace += left_contract(MV::basis(b), Jet2(double(kEta[b])) * fp.dtheta(b));
    // axial 3-form: d theta^b ^ theta_b
    FormValue axial{};
    for (int b = 0; b < 4; ++b)
        axial += wedge(fp.dtheta(b), MV::basis_lower(b));
    for (int a = 0; a < 4; ++a) {
        FormValue ax = Jet2(1.0 / 3.0) * wedge(MV::basis(a), trace);
        FormValue te = Jet2(-1.0 / 3.0) * hodge_star(wedge(MV::basis(a), hodge_star(axial)));
        out.axitor[a] = ax;
        out.tentor[a] = te;
        out.tractor[a] = fp.dtheta(a) - ax - te;
    }
    return out;
}

FormValue covariant_derivative(const FramePoint& fp, const ConnectionForms& conn,
                               const FormField& f, int a) {
    FormValue A = f(fp);
    FormValue r;
    for (int i = 0; i < kBlades; ++i) r.c[i] = fp.pfaff(A.c[i], a);
    // connection bivector omega_{e_a} = 1/2 omega_a^{bc} theta_b ^ theta_c
    auto w = conn.values(fp);
    FormValue biv{};
    for (int b = 0; b < 4; ++b) {
        for (int c = 0; c < 4; ++c) {
            // omega^{bc} = omega^b_c eta^{cc}; component along e_a
            FormValue up = Jet2(double(kEta[c])) * w[b][c];
            Jet2 comp = scalar_product(up, Multivector<Jet2>::basis_lower(a));
            biv += Jet2(0.5 * kEta[b] * kEta[c]) * comp *
                   wedge(Multivector<Jet2>::basis(b), Multivector<Jet2>::basis(c));
        }
    }
    FormValue comm = geometric_product(biv, A) - geometric_product(A, biv);
    return r + Jet2(0.5) * comm;
}

DiracSplit dirac_split_check(const FramePoint& fp, const FormField& f) {
    using MV = Multivector<Jet2>;
    ConnectionForms lc = levi_civita_connection();
    FormValue wedge_part{}, contract_part{};
    for (int a = 0; a < 4; ++a) {
        FormValue nabla = covariant_derivative(fp, lc, f, a);
        wedge_part += wedge(MV::basis(a), nabla);
        contract_part += left_contract(MV::basis(a), nabla);
    }
    FormValue dA = fp.exterior_derivative(f(fp));
    FormValue deltaA = codifferential(f)(fp);

    ResidualStat ws, cs;
    double scale_w = std::max({max_abs_value(dA), max_abs_value(wedge_part), 1e-300});
    double scale_c = std::max({max_abs_value(deltaA), max_abs_value(contract_part), 1e-300});
    ws.add(max_abs_value(wedge_part - dA), scale_w);
    cs.add(max_abs_value(contract_part + deltaA), scale_c);
    return {ws.relative(), cs.relative()};
}

double max_abs_value(const FormValue& v) {
    double m = 0.0;
    for (int i = 0; i < kBlades; ++i) {
        double a = std::abs(v.c[i].value);
        if (a > m) m = a;
    }
    return m;
}

}  // namespace stg
