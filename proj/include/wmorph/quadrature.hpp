#pragma once

#include <functional>
#include <vector>

namespace wmorph {

struct GaussLegendre {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;
};

// Nodes and weights on [-1, 1], computed by Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);
GaussLegendre gauss_legendre_mapped(int n, double a, double b);

// Adaptive bisection with 16-node Gauss-Legendre panels; the panel-vs-halves
// gap drives refinement down to the absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol);

}  // namespace wmorph
