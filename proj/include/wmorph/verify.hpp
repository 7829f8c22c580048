#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmorph/forms.hpp"

namespace wmorph {

struct PropertyResult {
    std::string name;
    bool pass;
    double worst;        // worst observed deviation (or -1 when not applicable)
    double tol;          // tolerance the property was checked at
    std::string detail;  // first counterexample input, empty when passing
};

struct VerifyOptions {
    uint64_t trials = 0;  // 0 = per-property default
    double tol = 0.0;     // 0 = per-property default
    uint64_t seed = 42;
    QuadratureSpec quad;
    int workers = 0;
};

// Suites: "equivariance" (chart/action compatibility), "lemma33" (pointwise
// chart formula vs numeric pullback, scaling and invariance), "caps" (cap
// independence and orientation), "orders" (period arithmetic), "all".
// Throws std::invalid_argument for an unknown suite name.
std::vector<PropertyResult> verify_suite(const std::string& suite,
                                         const VerifyOptions& opts);

bool all_pass(const std::vector<PropertyResult>& results);

}  // namespace wmorph
