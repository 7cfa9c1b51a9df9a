#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stg/frame_geometry.hpp"
#include "stg/symmetry.hpp"

namespace stg {

struct UnsupportedChartError : std::runtime_error {
    explicit UnsupportedChartError(const std::string& msg) : std::runtime_error(msg) {}
};

// Electromagnetic field: grade-2 F plus an optional grade-1 source J.
struct EMField {
    FormField F;
    std::optional<FormField> J;
};

// Energy-momentum of F. One-forms and dual 3-forms carry the lower frame
// index; sign convention follows the field-theory variation, so the
// physical energy density is the negative of component [0][0].
struct StressForms {
    std::array<FormField, 4> one_forms;  // T_a = -1/2 F theta_a F~ (grade 1)
    std::array<FormField, 4> dual;       // *T_a (grade 3)
};

StressForms em_stress_forms(const FormField& F);

// Component matrix T_ab = T_a . theta_b via the Clifford sandwich.
std::array<std::array<double, 4>, 4> stress_components_sandwich(const FramePoint& fp,
                                                                const FormField& F);
// The same matrix from the index formula eta^cl F_ac F_bl - 1/4 F.F eta_ab;
// an independent code path used to cross-check the sandwich.
std::array<std::array<double, 4>, 4> stress_components_formula(const FramePoint& fp,
                                                               const FormField& F);

struct MaxwellResiduals {
    double closed;  // |dF|
    double source;  // |delta F + J|
};
MaxwellResiduals maxwell_residual(const FrameContext& ctx, const EMField& em,
                                  const std::vector<Point>& points);

// D*T_c + *T_a ^ (theta_c _| Theta^a) + *J^a_b ^ (theta_c _| R^b_a) = 0,
// with D*T_c = d*T_c - omega^b_c ^ *T_b and *J the optional angular
// momentum density 3-forms (indexed [b][a] for *J^b_a).
double covariant_conservation_residual(
    const FrameContext& ctx, ConnectionMode mode, const StressForms& stress,
    const std::vector<Point>& points,
    const std::array<std::array<FormField, 4>, 4>* angular = nullptr);

// D*J^b_a + 1/2 (*T^b ^ theta_a - *T_a ^ theta^b) = 0; with *J = 0 this
// measures the stress symmetry in 3-form language.
double angular_identity_residual(
    const FrameContext& ctx, ConnectionMode mode, const StressForms& stress,
    const std::vector<Point>& points,
    const std::array<std::array<FormField, 4>, 4>* angular = nullptr);

// Gravitational objects built from the Levi-Civita connection values:
// superpotential 2-forms *S^c, pseudo-tensor 3-forms *t^c and Einstein
// 3-forms *G^c (from the curvature route). A cosmological term m^2 shifts
// the pseudo-tensor by m^2 *theta^c.
struct GravObjects {
    std::array<FormField, 4> superpotential;  // *S^c
    std::array<FormField, 4> pseudo;          // *t^c (+ m^2 *theta^c when set)
    std::array<FormField, 4> einstein;        // *G^c
    double m2 = 0.0;
};
GravObjects grav_objects(double m2 = 0.0);

// Einstein 3-forms through the Ricci one-form route *(R^d - 1/2 R theta^d);
// must agree with the curvature route.
std::array<FormValue, 4> einstein_forms_from_ricci(const FramePoint& fp);

// |*G^a + *t^a + d*S^a| (the cosmological term cancels between *t and the
// explicit m^2 *theta^a): a connection identity that holds for any coframe.
double sparling_residual(const FrameContext& ctx, double m2, const std::vector<Point>& points);

// Adding a closed 2-form (constant coordinate coefficients) to *S^a must
// leave d*S^a unchanged.
double superpotential_gauge_residual(const FrameContext& ctx, const std::vector<Point>& points);

struct ConservedCurrent {
    FormField current;        // (xi . theta^a) *T_a + (theta_b . L_xi theta^a) *J^b_a
    double closure_residual;  // sup |d current|
};
ConservedCurrent conserved_current(
    const FrameContext& ctx, ConnectionMode mode, const KillingCandidate& xi,
    const StressForms& stress, const std::vector<Point>& points,
    const std::array<std::array<FormField, 4>, 4>* angular = nullptr);

// Surface-integral inertial mass for charts with Cartesian-like coordinates
// and a diagonal spatial metric: -(1/16 pi) times the flux of
// d_j(s11 s22 s33 s^{ij}) x_i / r over spheres of the given radii, with
// s_ij = -g_ij the positive spatial metric, plus polynomial extrapolation
// in 1/r.
struct MassIntegralResult {
    std::vector<double> radii;
    std::vector<double> values;
    double extrapolated;
};
MassIntegralResult mass_integral(const FrameContext& ctx, const std::vector<double>& radii,
                                 int n_polar = 32, int n_azimuth = 64);

}  // namespace stg
