#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stg/expr.hpp"
#include "stg/jet.hpp"
#include "stg/multivector.hpp"

namespace stg {

using Point = std::array<double, 4>;
using FormValue = Multivector<Jet2>;  // orthonormal-coframe components, jet scalars
using Mat4J = std::array<std::array<Jet2, 4>, 4>;

struct SingularFrameError : std::runtime_error {
    SingularFrameError(const Point& p, double det)
        : std::runtime_error("singular coframe at (" + std::to_string(p[0]) + ", " +
                             std::to_string(p[1]) + ", " + std::to_string(p[2]) + ", " +
                             std::to_string(p[3]) + "), |det| = " + std::to_string(det)) {}
};

struct Interval {
    double lo = 0.0, hi = 1.0;
};

// Coordinate chart: names, sampling box, and expressions whose zero-sets
// sample points must stay away from (e.g. "sin(theta)", "r").
struct Chart {
    std::array<std::string, 4> coords;
    std::array<Interval, 4> domain;
    std::vector<Expr> excluded;
};

// Orthonormal coframe theta^a = h[a][mu] dx^mu given by expressions.
struct Coframe {
    std::array<std::array<Expr, 4>, 4> h;
};

enum class ConnectionMode { LeviCivita, Teleparallel };

class FramePoint;

// Chart + coframe + parameter values: the evaluation context that turns
// points into concrete frame data.
class FrameContext {
public:
    Chart chart;
    Coframe coframe;
    std::map<std::string, double> params;
    double locus_margin = 1e-3;
    double det_floor = 1e-10;

    FramePoint at(const Point& x) const;

    // Deterministic low-discrepancy (Halton) points inside the domain box,
    // filtered against excluded loci and frame degeneracy. The seed offsets
    // the sequence start.
    std::vector<Point> sample_points(int n, unsigned seed) const;
};

// All frame data at one point, with exact first/second derivatives carried
// by the jets: h^a_mu, its inverse, and lazily cached d(theta^a) and
// Levi-Civita connection values. Caches make a FramePoint cheap to reuse
// but not shareable across threads; everything else here is immutable.
class FramePoint {
public:
    Point x{};
    Mat4J H;    // h^a_mu           (row a, column mu)
    Mat4J Hi;   // (h^-1)^mu_a      (row mu, column a); e_a = Hi[mu][a] d_mu
    Jet2 det;

    // Pfaff derivative e_a(f) of a jet scalar.
    Jet2 pfaff(const Jet2& f, int a) const;

    // Exterior derivative of a form value given its coefficient jets;
    // computed through the coordinate cobasis so that d(dA) = 0 reduces to
    // Hessian symmetry.
    FormValue exterior_derivative(const FormValue& A) const;

    // Conversions between orthonormal and coordinate cobasis components
    // (mask-indexed, minor-determinant transform).
    std::array<Jet2, kBlades> to_coordinate(const FormValue& A) const;
    FormValue from_coordinate(const std::array<Jet2, kBlades>& c) const;

    const FormValue& dtheta(int a) const;
    // Levi-Civita connection values omega^a_b (grade-1), from the coframe
    // via the contraction formula; metric-compatible by construction.
    const std::array<std::array<FormValue, 4>, 4>& levi_civita() const;

    // g_munu = eta_ab h^a_mu h^b_nu, exactly symmetric.
    Mat4J metric() const;

    // [e_m, e_n] = c^a_mn e_a
    std::array<std::array<std::array<Jet2, 4>, 4>, 4> structure_coefficients() const;

private:
    mutable std::optional<std::array<FormValue, 4>> dtheta_;
    mutable std::optional<std::array<std::array<FormValue, 4>, 4>> lc_;
};

// A differential form on the chart: degree plus a point-evaluator returning
// orthonormal components as jets. Evaluators are pure; fields compose by
// capturing each other by value.
struct FormField {
    int degree = 0;
    std::function<FormValue(const FramePoint&)> eval;

    FormValue operator()(const FramePoint& fp) const { return eval(fp); }
};

FormField operator+(const FormField& a, const FormField& b);
FormField operator-(const FormField& a, const FormField& b);
FormField scaled(const FormField& a, double s);
FormField wedge(const FormField& a, const FormField& b);

// The coframe covectors theta^a as fields (constant orthonormal components).
FormField basis_form(int a);
FormField zero_form(int degree);

FormField exterior_derivative(const FormField& f);

// delta A_p = (-1)^p *^-1 d * A_p; degree-0 input yields the zero field.
FormField codifferential(const FormField& f);

// Field with expression coefficients on canonical orthonormal blades:
// A = sum over masks of coeff[mask](x) theta^mask.
FormField form_from_exprs(int degree, std::map<BladeMask, Expr> coeffs,
                          std::map<std::string, double> params);

// Connection one-forms omega^a_b in the orthonormal gauge.
struct ConnectionForms {
    ConnectionMode mode = ConnectionMode::LeviCivita;
    std::array<std::array<FormField, 4>, 4> omega;

    std::array<std::array<FormValue, 4>, 4> values(const FramePoint& fp) const;
};

ConnectionForms levi_civita_connection();
// In the gauge that defines the parallelism the teleparallel connection
// forms vanish identically.
ConnectionForms teleparallel_connection();
ConnectionForms connection_for(ConnectionMode mode);
// Any omega matrix packaged as a connection (rotated gauges, LC + contorsion).
ConnectionForms connection_from(ConnectionMode mode, std::array<std::array<FormField, 4>, 4> omega);

// Torsion 2-forms: teleparallel Theta^a = d theta^a; Levi-Civita
// Theta^a = d theta^a + omega^a_b ^ theta^b (vanishing up to rounding).
std::array<FormField, 4> torsion_forms(ConnectionMode mode);

// Curvature 2-forms R^a_b = d omega^a_b + omega^a_c ^ omega^c_b.
std::array<std::array<FormField, 4>, 4> curvature_forms(const ConnectionForms& conn);

// Frame components R^a_bcd, Ricci R_bd = R^a_bad, scalar R = eta^bd R_bd
// from curvature values at a point. The overall sign is pinned by the
// vacuum and constant-curvature checks in the test suite and is asserted
// constant across sample points there.
double ricci_scalar(const std::array<std::array<FormValue, 4>, 4>& curvature_values);
std::array<std::array<double, 4>, 4> ricci_components(
    const std::array<std::array<FormValue, 4>, 4>& curvature_values);

// Contorsion kappa^a_b of the teleparallel connection: the same contraction
// formula as the Levi-Civita one applied to the torsion, with opposite sign,
// so kappa = -omega(LC) pointwise when Theta^a = d theta^a.
std::array<std::array<FormField, 4>, 4> contorsion(const std::array<FormField, 4>& torsion);

// Irreducible pieces of d theta^a: trace part (axitor), axial part (tentor
// dual), and the remainder (tractor); parts sum to d theta^a exactly.
struct TorsionDecomposition {
    std::array<FormValue, 4> tractor;  // (1)
    std::array<FormValue, 4> axitor;   // (2)
    std::array<FormValue, 4> tentor;   // (3)
};
TorsionDecomposition torsion_decomposition(const FramePoint& fp);

// Covariant derivative of a multivector field along e_a (Pfaff derivative
// plus half-commutator with the connection bivector), and the Dirac-split
// residuals |d/\ A - dA| and |d_| A + delta A| at a point.
FormValue covariant_derivative(const FramePoint& fp, const ConnectionForms& conn,
                               const FormField& f, int a);
struct DiracSplit {
    double wedge_residual;
    double contract_residual;
};
DiracSplit dirac_split_check(const FramePoint& fp, const FormField& f);

// Residual accumulator: sup of per-point |residual| normalized by the
// magnitude of what cancels, with an absolute floor below which residuals
// count as zero.
class ResidualStat {
public:
    explicit ResidualStat(double abs_floor = 1e-12) : floor_(abs_floor) {}
    void add(double residual_abs, double scale) {
        if (residual_abs > sup_abs_) sup_abs_ = residual_abs;
        if (scale > sup_scale_) sup_scale_ = scale;
    }
    void merge(const ResidualStat& o) {
        if (o.sup_abs_ > sup_abs_) sup_abs_ = o.sup_abs_;
        if (o.sup_scale_ > sup_scale_) sup_scale_ = o.sup_scale_;
    }
    double sup_abs() const { return sup_abs_; }
    double scale() const { return sup_scale_; }
    double relative() const {
        if (sup_abs_ <= floor_) return 0.0;
        return sup_abs_ / (sup_scale_ > floor_ ? sup_scale_ : floor_);
    }

private:
    double floor_;
    double sup_abs_ = 0.0;
    double sup_scale_ = 0.0;
};

double max_abs_value(const FormValue& v);

}  // namespace stg
