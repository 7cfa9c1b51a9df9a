#include "stg/energy_momentum.hpp"

#include <cmath>

namespace stg {

namespace {

const double kPi = 3.14159265358979323846;

using MV = Multivector<Jet2>;

FormValue stress_one_form_value(const FramePoint& fp, const FormField& F, int a) {
    FormValue Fv = F(fp);
    return Jet2(-0.5) * geometric_product(geometric_product(Fv, MV::basis_lower(a)), reverse(Fv));
}

}  // namespace

StressForms em_stress_forms(const FormField& F) {
    StressForms out;
    for (int a = 0; a < 4; ++a) {
        out.one_forms[a] = {1, [F, a](const FramePoint& fp) {
                                return stress_one_form_value(fp, F, a);
                            }};
        out.dual[a] = {3, [F, a](const FramePoint& fp) {
                           return hodge_star(stress_one_form_value(fp, F, a));
                       }};
    }
    return out;
}

std::array<std::array<double, 4>, 4> stress_components_sandwich(const FramePoint& fp,
                                                                const FormField& F) {
    std::array<std::array<double, 4>, 4> out{};
    for (int a = 0; a < 4; ++a) {
        FormValue Ta = stress_one_form_value(fp, F, a);
        for (int b = 0; b < 4; ++b)
            out[a][b] = scalar_product(Ta, MV::basis_lower(b)).value;
    }
    return out;
}

std::array<std::array<double, 4>, 4> stress_components_formula(const FramePoint& fp,
                                                               const FormField& F) {
    FormValue Fv = F(fp);
    // F = 1/2 F_ab theta^a ^ theta^b: canonical blade (a<b) holds F_ab
    double Fc[4][4] = {};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            double v = Fv.c[(1 << a) | (1 << b)].value;
            Fc[a][b] = v;
            Fc[b][a] = -v;
        }
    double invariant = 0.0;  // F_cd F^cd
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
            invariant += Fc[c][d] * Fc[c][d] * kEta[c] * kEta[d];
    std::array<std::array<double, 4>, 4> out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c) s += kEta[c] * Fc[a][c] * Fc[b][c];
            out[a][b] = s - 0.25 * invariant * (a == b ? kEta[a] : 0.0);
        }
    return out;
}

MaxwellResiduals maxwell_residual(const FrameContext& ctx, const EMField& em,
                                  const std::vector<Point>& points) {
    FormField dF = exterior_derivative(em.F);
    FormField deltaF = codifferential(em.F);
    ResidualStat closed, source;
    for (const auto& x : points) {
        FramePoint fp = ctx.at(x);
        FormValue Fv = em.F(fp);
        double f_scale = std::max(1e-3, max_abs_value(Fv));
        closed.add(max_abs_value(dF(fp)), f_scale);
        FormValue s = deltaF(fp);
        if (em.J) s += (*em.J)(fp);
        source.add(max_abs_value(s), f_scale);
    }
    return {closed.relative(), source.relative()};
}

double covariant_conservation_residual(
    const FrameContext& ctx, ConnectionMode mode, const StressForms& stress,
    const std::vector<Point>& points,
    const std::array<std::array<FormField, 4>, 4>* angular) {
    ConnectionForms conn = connection_for(mode);
    auto torsion = torsion_forms(mode);
    auto curv = curvature_forms(conn);
    std::array<FormField, 4> d_dual;
    for (int c = 0; c < 4; ++c) d_dual[c] = exterior_derivative(stress.dual[c]);
    ResidualStat stat;
    for (const auto& x : points) {
        FramePoint fp = ctx.at(x);
        auto w = conn.values(fp);
        for (int c = 0; c < 4; ++c) {
            FormValue res = d_dual[c](fp);
            double scale = std::max(1e-3, max_abs_value(res));
            for (int b = 0; b < 4; ++b) {
                FormValue term = wedge(w[b][c], stress.dual[b](fp));
                scale = std::max(scale, max_abs_value(term));
                res -= term;
            }
            for (int a = 0; a < 4; ++a) {
                FormValue theta_c_torsion =
                    left_contract(MV::basis_lower(c), torsion[a](fp));
                FormValue term = wedge(stress.dual[a](fp), theta_c_torsion);
                scale = std::max(scale, max_abs_value(term));
                res += term;
            }
            if (angular) {
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        FormValue term = wedge(
                            (*angular)[a][b](fp),
                            left_contract(MV::basis_lower(c), curv[b][a](fp)));
                        scale = std::max(scale, max_abs_value(term));
                        res += term;
                    }
            }
            stat.add(max_abs_value(res), scale);
        }
    }
    return stat.relative();
}

double angular_identity_residual(
    const FrameContext& ctx, ConnectionMode mode, const StressForms& stress,
    const std::vector<Point>& points,
    const std::array<std::array<FormField, 4>, 4>* angular) {
    ConnectionForms conn = connection_for(mode);
    ResidualStat stat;
    for (const auto& x : points) {
        FramePoint fp = ctx.at(x);
        auto w = conn.values(fp);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                // 1/2 (*T^b ^ theta_a - *T_a ^ theta^b); raise with eta
                FormValue up_b = Jet2(double(kEta[b])) * stress.dual[b](fp);
                FormValue t1 = wedge(up_b, MV::basis_lower(a));
                FormValue t2 = wedge(stress.dual[a](fp), MV::basis(b));
                FormValue res = Jet2(0.5) * (t1 - t2);
                double scale = std::max({1e-3, max_abs_value(t1), max_abs_value(t2)});
                if (angular) {
                    FormValue D = fp.exterior_derivative((*angular)[b][a](fp));
                    for (int c = 0; c < 4; ++c) {
                        D += wedge(w[b][c], (*angular)[c][a](fp));
                        D -= wedge((*angular)[b][c](fp), w[c][a]);
                    }
                    scale = std::max(scale, max_abs_value(D));
                    res += D;
                }
                stat.add(max_abs_value(res), scale);
            }
    }
    return stat.relative();
}

namespace {

// *S^c = 1/2 omega_ab ^ *(theta^a ^ theta^b ^ theta^c)
FormValue superpotential_value(const FramePoint& fp, int c) {
    const auto& w = fp.levi_civita();
    FormValue out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            FormValue lowered = Jet2(double(kEta[a])) * w[a][b];  // omega_ab
            MV blades = hodge_star(wedge(wedge(MV::basis(a), MV::basis(b)), MV::basis(c)));
            out += wedge(lowered, blades);
        }
    return Jet2(0.5) * out;
}

// *t^c = -1/2 omega_ab ^ [omega^c_d ^ *(theta^a theta^b theta^d)
//                         + omega^b_d ^ *(theta^a theta^d theta^c)]
FormValue pseudo_value(const FramePoint& fp, int c) {
    const auto& w = fp.levi_civita();
    FormValue out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            FormValue lowered = Jet2(double(kEta[a])) * w[a][b];
            FormValue bracket{};
            for (int d = 0; d < 4; ++d) {
                bracket += wedge(w[c][d], hodge_star(wedge(wedge(MV::basis(a), MV::basis(b)),
                                                           MV::basis(d))));
                bracket += wedge(w[b][d], hodge_star(wedge(wedge(MV::basis(a), MV::basis(d)),
                                                           MV::basis(c))));
            }
            out += wedge(lowered, bracket);
        }
    return Jet2(-0.5) * out;
}

// *G^c = -1/2 R_ab ^ *(theta^a ^ theta^b ^ theta^c) from the curvature route
FormValue einstein_value(const FramePoint& fp,
                         const std::array<std::array<FormField, 4>, 4>& curv, int c) {
    FormValue out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            FormValue lowered = Jet2(double(kEta[a])) * curv[a][b](fp);
            out += wedge(lowered, hodge_star(wedge(wedge(MV::basis(a), MV::basis(b)),
                                                   MV::basis(c))));
        }
    return Jet2(-0.5) * out;
}

}  // namespace

GravObjects grav_objects(double m2) {
    GravObjects g;
    g.m2 = m2;
    auto curv = curvature_forms(levi_civita_connection());
    for (int c = 0; c < 4; ++c) {
        g.superpotential[c] = {2, [c](const FramePoint& fp) {
                                   return superpotential_value(fp, c);
                               }};
        g.pseudo[c] = {3, [c, m2](const FramePoint& fp) {
                           FormValue v = pseudo_value(fp, c);
                           if (m2 != 0.0)
                               v += Jet2(m2) * hodge_star(FormValue::basis(c));
                           return v;
                       }};
        g.einstein[c] = {3, [c, curv](const FramePoint& fp) {
                             return einstein_value(fp, curv, c);
                         }};
    }
    return g;
}

std::array<FormValue, 4> einstein_forms_from_ricci(const FramePoint& fp) {
    auto curv = curvature_forms(levi_civita_connection());
    std::array<std::array<FormValue, 4>, 4> rv;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) rv[a][b] = curv[a][b](fp);
    auto ricci = ricci_components(rv);
    double scalar = ricci_scalar(rv);
    std::array<FormValue, 4> out;
    for (int d = 0; d < 4; ++d) {
        // G^d = R^d_b theta^b - 1/2 R theta^d with R^d_b = eta^dd R_db
        FormValue G{};
        for (int b = 0; b < 4; ++b)
            G += Jet2(kEta[d] * ricci[d][b]) * FormValue::basis(b);
        G -= Jet2(0.5 * scalar) * FormValue::basis(d);
        out[d] = hodge_star(G);
    }
    return out;
}

double sparling_residual(const FrameContext& ctx, double m2, const std::vector<Point>& points) {
    GravObjects g = grav_objects(m2);
    std::array<FormField, 4> dS;
    for (int a = 0; a < 4; ++a) dS[a] = exterior_derivative(g.superpotential[a]);
    ResidualStat stat;
    for (const auto& x : points) {
        FramePoint fp = ctx.at(x);
        for (int a = 0; a < 4; ++a) {
            FormValue ge = g.einstein[a](fp);
            FormValue ps = g.pseudo[a](fp);
            FormValue ds = dS[a](fp);
            FormValue res = ge + ps + ds;
            if (m2 != 0.0) res -= Jet2(m2) * hodge_star(FormValue::basis(a));
            double scale = std::max({max_abs_value(ge), max_abs_value(ps), max_abs_value(ds)});
            stat.add(max_abs_value(res), scale);
        }
    }
    return stat.relative();
}

double superpotential_gauge_residual(const FrameContext& ctx, const std::vector<Point>& points) {
    GravObjects g = grav_objects(0.0);
    ResidualStat stat(1e-15);
    for (int a = 0; a < 4; ++a) {
        // closed shift: constant coefficients on the coordinate cobasis
        FormField alpha{2, [a](const FramePoint& fp) {
                            std::array<Jet2, kBlades> coord{};
                            coord[0b0011] = Jet2(0.7 + 0.1 * a);
                            coord[0b1010] = Jet2(-0.4);
                            coord[0b1100] = Jet2(0.25 * (a + 1));
                            return fp.from_coordinate(coord);
                        }};
        FormField base = exterior_derivative(g.superpotential[a]);
        FormField shifted = exterior_derivative(g.superpotential[a] + alpha);
        for (const auto& x : points) {
            FramePoint fp = ctx.at(x);
            FormValue b = base(fp), s = shifted(fp);
            stat.add(max_abs_value(s - b), std::max(1.0, max_abs_value(b)));
        }
    }
    return stat.relative();
}

ConservedCurrent conserved_current(
    const FrameContext& ctx, ConnectionMode mode, const KillingCandidate& xi,
    const StressForms& stress, const std::vector<Point>& points,
    const std::array<std::array<FormField, 4>, 4>* angular) {
    ConnectionForms conn = connection_for(mode);
    auto params = ctx.params;
    std::array<FormField, 4> dual = stress.dual;
    FormField current{3, [xi, params, dual, conn, angular](const FramePoint& fp) {
        KillingData kd = frame_components(fp, xi, params);
        FormValue out{};
        for (int a = 0; a < 4; ++a) out += kd.frame[a] * dual[a](fp);
        if (angular) {
            auto kappa = kappa_matrix(fp, xi, params);
            auto w = conn.values(fp);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    Jet2 M = kappa[a][b] + scalar_product(kd.flat, w[a][b]);
                    out += M * (*angular)[b][a](fp);
                }
        }
        return out;
    }};
    FormField closure = exterior_derivative(current);
    ResidualStat stat;
    for (const auto& x : points) {
        FramePoint fp = ctx.at(x);
        double scale = std::max(1e-3, max_abs_value(current(fp)));
        stat.add(max_abs_value(closure(fp)), scale);
    }
    return {current, stat.relative()};
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

}  // namespace

MassIntegralResult mass_integral(const FrameContext& ctx, const std::vector<double>& radii,
                                 int n_polar, int n_azimuth) {
    if (radii.empty()) throw std::invalid_argument("mass integral needs at least one radius");
    std::vector<double> nodes, weights;
    gauss_legendre(n_polar, nodes, weights);

    double t0 = 0.5 * (ctx.chart.domain[0].lo + ctx.chart.domain[0].hi);
    MassIntegralResult out;
    out.radii = radii;

    for (double radius : radii) {
        double sum = 0.0;  // compensated
        double carry = 0.0;
        for (int iu = 0; iu < n_polar; ++iu) {
            double u = nodes[iu];  // cos(theta)
            double su = std::sqrt(1.0 - u * u);
            for (int ip = 0; ip < n_azimuth; ++ip) {
                double phi = 2.0 * kPi * (ip + 0.5) / n_azimuth;
                Point x{t0, radius * su * std::cos(phi), radius * su * std::sin(phi),
                        radius * u};
                FramePoint fp = ctx.at(x);
                Mat4J g = fp.metric();
                // positive spatial metric s_ij = -g_ij, required diagonal
                Jet2 s[3];
                double diag_scale = 0.0;
                for (int i = 0; i < 3; ++i) {
                    s[i] = -g[i + 1][i + 1];
                    diag_scale = std::max(diag_scale, std::abs(s[i].value));
                }
                for (int i = 1; i < 4; ++i)
                    for (int jj = 1; jj < 4; ++jj)
                        if (i != jj && std::abs(g[i][jj].value) > 1e-10 * diag_scale)
                            throw UnsupportedChartError(
                                "mass integral needs a diagonal spatial metric in "
                                "Cartesian-like coordinates");
                double integrand = 0.0;
                for (int i = 0; i < 3; ++i) {
                    // x_i = s_ij x^j (diagonal), P^{ii} = s11 s22 s33 / s_ii
                    double xi_low = s[i].value * x[i + 1];
                    Jet2 P = s[0] * s[1] * s[2] / s[i];
                    // d_j P^{ij} contributes only j = i for diagonal s
                    double dP = P.derivative_component(i + 1).value;
                    integrand += (xi_low / radius) * dP;
                }
                double w = weights[iu] * (2.0 * kPi / n_azimuth) * radius * radius;
                double term = integrand * w;
                // Kahan update keeps the reduction order-independent enough
                double y = term - carry;
                double t = sum + y;
                carry = (t - sum) - y;
                sum = t;
            }
        }
        out.values.push_back(-sum / (16.0 * kPi));
    }

    // Neville extrapolation in 1/r to r -> infinity
    std::vector<double> u(out.radii.size()), v = out.values;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 1.0 / out.radii[i];
    for (std::size_t level = 1; level < v.size(); ++level)
        for (std::size_t i = v.size() - 1; i >= level; --i)
            v[i] = v[i] + (v[i] - v[i - 1]) * (0.0 - u[i]) / (u[i] - u[i - level]);
    out.extrapolated = v.back();
    return out;
}

}  // namespace stg
