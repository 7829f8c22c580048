#include "wmorph/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wmorph {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussLegendre out;
    out.nodes.assign(static_cast<size_t>(n), 0.0);
    out.weights.assign(static_cast<size_t>(n), 0.0);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root (descending).
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p = 1.0, pm1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double pm2 = pm1;
                pm1 = p;
                p = ((2.0 * j - 1.0) * x * pm1 - (j - 1.0) * pm2) / j;
            }
            dp = n * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.nodes[static_cast<size_t>(i)] = -x;  // ascending order
        out.nodes[static_cast<size_t>(n - 1 - i)] = x;
        out.weights[static_cast<size_t>(i)] = w;
        out.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) out.nodes[static_cast<size_t>(n / 2)] = 0.0;
    return out;
}

GaussLegendre gauss_legendre_mapped(int n, double a, double b) {
    GaussLegendre rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = mid + halfwidth * rule.nodes[i];
        rule.weights[i] *= halfwidth;
    }
    return rule;
}

namespace {

double panel(const std::function<double(double)>& f, const GaussLegendre& rule,
             double a, double b) {
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(mid + halfwidth * rule.nodes[i]);
    }
    return acc * halfwidth;
}

double refine(const std::function<double(double)>& f, const GaussLegendre& rule,
              double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, rule, a, mid);
    const double right = panel(f, rule, mid, b);
    if (std::abs(left + right - whole) <= tol || depth >= 48) return left + right;
    return refine(f, rule, a, mid, left, 0.5 * tol, depth + 1) +
           refine(f, rule, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
    static const GaussLegendre rule = gauss_legendre(16);
    return refine(f, rule, a, b, panel(f, rule, a, b), abs_tol, 0);
}

}  // namespace wmorph
