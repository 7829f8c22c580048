#pragma once

#include <stdexcept>
#include <string>

namespace wmorph {

// Homogeneous point with w_{n+1} = 0: outside the affine chart, so chart
// operations have no value there.
struct HypersurfacePoint : std::domain_error {
    explicit HypersurfacePoint(const std::string& msg) : std::domain_error(msg) {}
};

// The published closed-form average has a vanishing denominator (n = 4).
struct SingularFormula : std::domain_error {
    explicit SingularFormula(const std::string& msg) : std::domain_error(msg) {}
};

// A quadrature or Monte-Carlo node evaluated to NaN or infinity.
struct NonFiniteIntegrand : std::runtime_error {
    explicit NonFiniteIntegrand(const std::string& msg) : std::runtime_error(msg) {}
};

// Reduction or order analysis against a period group with zero generator.
struct ZeroPeriod : std::domain_error {
    explicit ZeroPeriod(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace wmorph
