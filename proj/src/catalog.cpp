#include "stg/catalog.hpp"

namespace stg {

namespace {

SpacetimeSpec::KillingRow row(const std::string& name, const std::string& c0,
                              const std::string& c1, const std::string& c2,
                              const std::string& c3) {
    return {name, {c0, c1, c2, c3}};
}

void diagonal(SpacetimeSpec& s, const std::string& d0, const std::string& d1,
              const std::string& d2, const std::string& d3) {
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) s.coframe[a][mu] = "0";
    s.coframe[0][0] = d0;
    s.coframe[1][1] = d1;
    s.coframe[2][2] = d2;
    s.coframe[3][3] = d3;
}

CatalogEntry minkowski_cartesian() {
    CatalogEntry e;
    SpacetimeSpec& s = e.spec;
    s.name = "minkowski_cartesian";
    s.coordinates = {"t", "x", "y", "z"};
    diagonal(s, "1", "1", "1", "1");
    s.domain = {{{0.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
    s.connection = "teleparallel";
    s.killing = {
        row("time translation", "1", "0", "0", "0"),
        row("x translation", "0", "1", "0", "0"),
        row("y translation", "0", "0", "1", "0"),
        row("z translation", "0", "0", "0", "1"),
        row("xy rotation", "0", "-y", "x", "0"),
        row("yz rotation", "0", "0", "-z", "y"),
        row("zx rotation", "0", "z", "0", "-x"),
        row("x boost", "x", "t", "0", "0"),
        row("y boost", "y", "0", "t", "0"),
        row("z boost", "z", "0", "0", "t"),
    };
    e.reference = "flat spacetime, Cartesian chart; full Poincare generator set";
    e.reported_all_rows = true;
    e.expected_torsion_rows = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    e.mass_parameter = "0";
    return e;
}

CatalogEntry minkowski_spherical() {
    CatalogEntry e;
    SpacetimeSpec& s = e.spec;
    s.name = "minkowski_spherical";
    s.coordinates = {"t", "r", "theta", "phi"};
    diagonal(s, "1", "1", "r", "r*sin(theta)");
    s.domain = {{{0.0, 1.0}, {1.0, 10.0}, {0.3, 2.84}, {0.1, 6.18}}};
    s.excluded = {"sin(theta)", "r"};
    s.connection = "levi-civita";
    s.killing = {
        row("time translation", "1", "0", "0", "0"),
        row("rotation 1", "0", "0", "-sin(phi)", "-cot(theta)*cos(phi)"),
        row("rotation 2", "0", "0", "cos(phi)", "-cot(theta)*sin(phi)"),
        row("azimuthal rotation", "0", "0", "0", "1"),
    };
    e.reference = "flat spacetime, spherical chart";
    e.reported_all_rows = true;
    e.expected_torsion_rows = {1, 4};
    return e;
}

CatalogEntry schwarzschild() {
    CatalogEntry e;
    SpacetimeSpec& s = e.spec;
    s.name = "schwarzschild";
    s.coordinates = {"t", "r", "theta", "phi"};
    s.parameters["k"] = 1.0;
    diagonal(s, "sqrt(1 - k/r)", "(1 - k/r)^(-1/2)", "r", "r*sin(theta)");
    s.domain = {{{0.0, 1.0}, {3.0, 10.0}, {0.3, 2.84}, {0.1, 6.18}}};
    s.excluded = {"sin(theta)", "r", "1 - k/r"};
    s.connection = "teleparallel";
    s.killing = {
        row("row 1", "1", "0", "0", "0"),
        row("row 2", "0", "0", "-sin(phi)", "-cot(theta)*cos(phi)"),
        row("row 3", "0", "0", "cos(phi)", "-cot(theta)*sin(phi)"),
        row("row 4", "0", "0", "0", "1"),
    };
    e.reference = "teleparallel Schwarzschild, Killing table rows 1-4";
    e.reported_structure = {
        {"0,1,0", "-(k/r^2)*(1 - k/r)^(-1/2)"},
        {"2,1,2", "sqrt(1 - k/r)/r"},
        {"3,1,3", "sqrt(1 - k/r)/r"},
        {"3,2,3", "cot(theta)/r"},
    };
    e.reported_symmetry_rows = {4};
    e.expected_torsion_rows = {1, 4};
    return e;
}

CatalogEntry schwarzschild_isotropic() {
    CatalogEntry e;
    SpacetimeSpec& s = e.spec;
    s.name = "schwarzschild_isotropic";
    s.coordinates = {"t", "x", "y", "z"};
    s.parameters["m"] = 1.0;
    const std::string rho = "sqrt(x^2 + y^2 + z^2)";
    const std::string phi = "(1 + m/(2*" + rho + "))";
    diagonal(s, "(1 - m/(2*" + rho + "))/" + phi, phi + "^2", phi + "^2", phi + "^2");
    s.domain = {{{0.0, 1.0}, {2.0, 4.0}, {2.0, 4.0}, {2.0, 4.0}}};
    s.excluded = {"x^2 + y^2 + z^2"};
    s.connection = "levi-civita";
    s.killing = {row("time translation", "1", "0", "0", "0")};
    e.reference = "Schwarzschild in isotropic Cartesian coordinates (mass-integral chart)";
    e.expected_torsion_rows = {1};
    e.mass_parameter = "m";
    return e;
}

CatalogEntry desitter(bool inner) {
    CatalogEntry e;
    SpacetimeSpec& s = e.spec;
    s.name = inner ? "desitter_inner" : "desitter_outer";
    s.coordinates = {"t", "r", "theta", "phi"};
    s.parameters["alpha"] = 1.0;
    // inner branch: omega = (1 - alpha r^2)^(1/2); outer: Omega = (alpha r^2 - 1)^(1/2)
    const std::string W = inner ? "(1 - alpha*r^2)^(1/2)" : "(alpha*r^2 - 1)^(1/2)";
    const std::string Wi = inner ? "(1 - alpha*r^2)^(-1/2)" : "(alpha*r^2 - 1)^(-1/2)";
    diagonal(s, W, Wi, "r", "r*sin(theta)");
    if (inner)
        s.domain = {{{0.0, 1.0}, {0.1, 0.9}, {0.3, 2.84}, {0.1, 6.18}}};
    else
        s.domain = {{{0.0, 1.0}, {1.1, 2.0}, {0.3, 2.84}, {0.1, 6.18}}};
    s.excluded = {"sin(theta)", "r",
                  inner ? std::string("1 - alpha*r^2") : std::string("alpha*r^2 - 1")};
    s.connection = "teleparallel";

    // boost-like rows mix cosh/sinh(sqrt(alpha) t); stored verbatim from the
    // table, including the bare factor in row 2's second entry
    const std::string C = "cosh(sqrt(alpha)*t)";
    const std::string S = "sinh(sqrt(alpha)*t)";
    const std::string A = inner ? S : C;  // multiplies the spatial entries of rows 1-3
    const std::string B = inner ? C : S;  // and vice versa for rows 4-6
    const std::string T1 = inner ? C : S;  // multiplies the time entry of rows 1-3
    const std::string T2 = inner ? S : C;  // rows 4-6
    s.killing = {
        row("row 1", "r*" + Wi + "*sin(theta)*cos(phi)*" + T1,
            "sqrt(alpha)*" + W + "*sin(theta)*cos(phi)*" + A,
            "(sqrt(alpha)/r)*" + W + "*cos(theta)*cos(phi)*" + A,
            "-(sqrt(alpha)/r)*" + W + "*(sin(phi)/sin(theta))*" + A),
        row("row 2", "r*" + Wi + "*sin(theta)*sin(phi)*" + T1,
            "sqrt(alpha)*sin(theta)*sin(phi)*" + A,
            "(sqrt(alpha)/r)*" + W + "*cos(theta)*sin(phi)*" + A,
            "-(sqrt(alpha)/r)*" + W + "*(cos(phi)/sin(theta))*" + A),
        row("row 3", "r*" + Wi + "*cos(theta)*" + T1,
            "-sqrt(alpha)*" + W + "*cos(theta)*" + A,
            "-(sqrt(alpha)/r)*" + W + "*sin(theta)*" + A, "0"),
        row("row 4", "-r*" + Wi + "*sin(theta)*cos(phi)*" + T2,
            "-sqrt(alpha)*" + W + "*sin(theta)*cos(phi)*" + B,
            "-(sqrt(alpha)/r)*" + W + "*cos(theta)*cos(phi)*" + B,
            "(sqrt(alpha)/r)*" + W + "*(sin(phi)/sin(theta))*" + B),
        row("row 5", "-r*" + Wi + "*sin(theta)*sin(phi)*" + T2,
            "-sqrt(alpha)*" + W + "*sin(theta)*sin(phi)*" + B,
            "-(sqrt(alpha)/r)*" + W + "*cos(theta)*sin(phi)*" + B,
            "-(sqrt(alpha)/r)*" + W + "*(cos(phi)/sin(theta))*" + B),
        row("row 6", "-r*" + Wi + "*cos(theta)*" + T2,
            "-sqrt(alpha)*" + W + "*cos(theta)*" + B,
            "(sqrt(alpha)/r)*" + W + "*sin(theta)*" + B, "0"),
        row("row 7", "sqrt(alpha)", "0", "0", "0"),
        row("row 8", "0", "0", "-cos(phi)", "cot(theta)*sin(phi)"),
        row("row 9", "0", "0", "-sin(phi)", "-cot(theta)*cos(phi)"),
        row("row 10", "0", "0", "0", "-1"),
    };
    e.reference = inner ? "teleparallel de Sitter, static chart inside the horizon"
                        : "teleparallel de Sitter, static chart outside the horizon";
    e.reported_structure = {
        {"0,1,0", "alpha*r*" + Wi},
        {"2,1,2", W + "/r"},
        {"3,1,3", W + "/r"},
        {"3,2,3", "cot(theta)/r"},
    };
    e.reported_symmetry_rows = {7};
    e.expected_killing_flags = inner ? std::vector<int>{2, 3} : std::vector<int>{1, 2, 3, 4, 5, 6};
    e.expected_torsion_rows = {7, 10};
    return e;
}

CatalogEntry friedmann_entry(const std::string& scale_factor, bool with_reported) {
    CatalogEntry e;
    SpacetimeSpec& s = e.spec;
    s.name = "friedmann";
    s.coordinates = {"t", "x", "y", "z"};
    diagonal(s, "1", scale_factor, scale_factor, scale_factor);
    s.domain = {{{1.0, 2.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
    s.excluded = {scale_factor};
    s.connection = "teleparallel";
    s.killing = {
        row("row 1", "0", "1", "0", "0"),
        row("row 2", "0", "0", "1", "0"),
        row("row 3", "0", "0", "0", "1"),
        row("row 4", "0", "-y", "x", "0"),
        row("row 5", "0", "0", "z", "y"),
        row("row 6", "0", "z", "0", "-x"),
    };
    e.reference = "teleparallel Friedmann, comoving chart, Killing table rows 1-6";
    if (with_reported) {
        // the reported list starts with an upper index 0 where the bracket
        // computation produces an upper index 1; stored verbatim
        e.reported_structure = {
            {"0,1,0", "2/(3*t)"},
            {"2,2,0", "2/(3*t)"},
            {"3,3,0", "2/(3*t)"},
        };
    }
    e.reported_all_rows = true;
    e.expected_killing_flags = {5};
    e.expected_torsion_rows = {1, 2, 3, 4, 5, 6};
    return e;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "minkowski_cartesian", "minkowski_spherical",  "schwarzschild",
        "schwarzschild_isotropic", "desitter_inner",   "desitter_outer",
        "friedmann",
    };
    return names;
}

const CatalogEntry& builtin(const std::string& name) {
    static const std::map<std::string, CatalogEntry> entries = [] {
        std::map<std::string, CatalogEntry> m;
        m["minkowski_cartesian"] = minkowski_cartesian();
        m["minkowski_spherical"] = minkowski_spherical();
        m["schwarzschild"] = schwarzschild();
        m["schwarzschild_isotropic"] = schwarzschild_isotropic();
        m["desitter_inner"] = desitter(true);
        m["desitter_outer"] = desitter(false);
        m["friedmann"] = friedmann_entry("t^(2/3)", true);
        return m;
    }();
    auto it = entries.find(name);
    if (it == entries.end()) {
        std::string valid;
        for (const auto& n : builtin_names()) {
            if (!valid.empty()) valid += ", ";
            valid += n;
        }
        throw UnknownSpacetimeError(name, valid);
    }
    return it->second;
}

CatalogEntry friedmann_with_scale(const std::string& scale_factor) {
    return friedmann_entry(scale_factor, scale_factor == "t^(2/3)");
}

}  // namespace stg
