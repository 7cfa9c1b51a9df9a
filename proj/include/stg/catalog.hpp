#pragma once

#include "stg/spacetime_spec.hpp"

namespace stg {

struct UnknownSpacetimeError : std::runtime_error {
    explicit UnknownSpacetimeError(const std::string& name, const std::string& valid)
        : std::runtime_error("unknown spacetime '" + name + "' (valid names: " + valid + ")") {}
};

// A built-in spacetime plus the values reported alongside it in the
// literature tables, kept verbatim so the engine can cross-check its own
// computation and flag discrepancies instead of silently correcting them.
struct CatalogEntry {
    SpacetimeSpec spec;
    std::string reference;
    // reported nonzero structure coefficients, key "a,m,n" -> expression
    std::map<std::string, std::string> reported_structure;
    // 1-based rows of the Killing table reported to satisfy the torsion
    // compatibility condition; empty plus all_rows=false means no claim
    std::vector<int> reported_symmetry_rows;
    bool reported_all_rows = false;
    // golden verdicts established by computation (and kept as regression
    // data): rows that fail the Killing check as printed, and rows that
    // actually satisfy the torsion condition
    std::vector<int> expected_killing_flags;
    std::vector<int> expected_torsion_rows;
    // name of the parameter the mass integral should reproduce; "0" means
    // the integral must vanish, empty means no golden value
    std::string mass_parameter;
};

const std::vector<std::string>& builtin_names();
const CatalogEntry& builtin(const std::string& name);

// Friedmann with a caller-supplied scale factor expression in t (the
// reported structure-coefficient cross-check only applies to the default).
CatalogEntry friedmann_with_scale(const std::string& scale_factor);

}  // namespace stg
