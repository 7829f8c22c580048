#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "wmorph/geometry.hpp"

namespace wmorph {

// Tangent data for evaluating omega^k: a base point and 2k vectors, all in
// the real coordinates (x_1, y_1, ..., x_n, y_n) of C^n.
struct Frame {
    std::vector<double> point;
    std::vector<std::vector<double>> vectors;
};

// omega_0(u, v) = sum_m (u_{x_m} v_{y_m} - u_{y_m} v_{x_m}).
double omega0_pair(std::span<const double> u, std::span<const double> v);

// Pfaffian of an antisymmetric dim x dim matrix (row-major), by recursive
// cofactor expansion along the first row. Intended for dim <= 8.
double pfaffian(const std::vector<double>& a, int dim);

// Value of omega_0^k (raw) or omega_0^k / k! (normalized) on the frame: the
// normalized value is the Pfaffian of the Gram matrix G_ij = omega_0(v_i, v_j).
double omega_power_eval(const Frame& frame, int k, Convention conv);

// Smooth map D^{2k} -> C^n whose boundary traces a prescribed (2k-1)-sphere.
// Evaluators take the 2k real coordinates of the domain point and fill the 2n
// real coordinates of the image; they must stay evaluable slightly outside
// the closed ball (|w| <= 1 + h) for finite-difference Jacobians.
class CappingMap {
public:
    enum class Kind { flat_disk, warped, general };
    using Evaluator = std::function<void(std::span<const double>, std::span<double>)>;

    // Rescaling of the closed unit 4-ball to radius sqrt(|z1|^2 + |z2|^2),
    // included into the (z_1, z_2)-plane of C^n. Carries an analytic
    // (constant) Jacobian.
    static CappingMap flat_disk(int n, Complex z1, Complex z2);

    // base(w) + amplitude * (1 - |w|^2)^2 * e_j, with e_j the real coordinate
    // direction of index `real_coord_index` in (x_1, y_1, ..., x_n, y_n).
    // The bump vanishes on the boundary, so the boundary sphere is unchanged.
    static CappingMap warped(const CappingMap& base, double amplitude,
                             int real_coord_index);

    static CappingMap general(int k, int n, Evaluator evaluate);

    int k() const { return k_; }
    int n() const { return n_; }
    Kind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double flat_radius() const { return radius_; }

    void evaluate(std::span<const double> w, std::span<double> out) const {
        evaluate_(w, out);
    }

    bool has_analytic_jacobian() const { return kind_ == Kind::flat_disk; }

    // Columns are the pushforwards of the 2k coordinate directions; layout is
    // column-major, jac[col * 2n + row].
    void analytic_jacobian(std::span<const double> w, std::span<double> jac) const;

private:
    CappingMap(Kind kind, int k, int n, Evaluator evaluate)
        : kind_(kind), k_(k), n_(n), evaluate_(std::move(evaluate)) {}

    Kind kind_;
    int k_;
    int n_;
    Evaluator evaluate_;
    double radius_ = 0.0;     // flat_disk
    double amplitude_ = 0.0;  // warped
};

// The same map with an orientation-reversing reflection (y_1 -> -y_1)
// precomposed on the domain; its pullback integral is exactly negated.
CappingMap orientation_reversed(const CappingMap& u);

struct QuadratureSpec {
    int radial_nodes = 32;   // u_1 and u_2 axes
    int angular_nodes = 32;  // phi_1 and phi_2 axes
    double fd_step = 1e-5;   // central-difference step for map Jacobians
    bool force_finite_differences = false;

    void validate() const;  // node counts >= 2, fd_step in [1e-7, 1e-3]
};

// Integral of the pullback u*(omega^k, convention-adjusted) over D^4 with
// k = 2. D^4 is parametrized by (u_1, u_2, phi_1, phi_2) in [0,1]^2 x [0,2pi)^2
// with |w_1|^2 = u_1 u_2, |w_2|^2 = (1 - u_1) u_2 and volume element
// (1/4) u_2 du_1 du_2 dphi_1 dphi_2; the integrand is omega_power_eval on the
// pushed-forward coordinate frame times that volume factor. Gauss-Legendre
// per axis, deterministic pairwise-tree accumulation (worker-count
// independent). Throws NonFiniteIntegrand if any node is NaN/inf; throws
// std::invalid_argument for k != 2 (use integrate_pullback_mc).
double integrate_pullback(const CappingMap& u, const QuadratureSpec& spec,
                          Convention conv, int workers = 0);

struct MonteCarloIntegral {
    double value;
    double std_error;
    uint64_t samples;
    uint64_t seed;
};

// Monte-Carlo fallback for any k: uniform samples over D^{2k}, scaled by
// vol(D^{2k}) = pi^k / k!. The only pullback path for k > 2.
MonteCarloIntegral integrate_pullback_mc(const CappingMap& u, uint64_t samples,
                                         uint64_t seed, Convention conv,
                                         const QuadratureSpec& spec = {},
                                         int workers = 0);

// (pi^2/2) (|z1|^2 + |z2|^2)^2, doubled under the raw convention: the capped
// orbit-sphere area in closed form.
double flat_disk_closed_form(Complex z1, Complex z2, Convention conv);

}  // namespace wmorph
