#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "wmorph/errors.hpp"

namespace wmorph {

using Complex = std::complex<double>;

// Whether a wedge power means omega^k (raw) or omega^k / k! (normalized).
// Fixed once per computation run and recorded in every report. All shipped
// closed forms match the normalized convention.
enum class Convention { normalized, raw };

std::string to_string(Convention conv);
Convention convention_from_string(std::string_view s);

// k! scaling that turns a normalized value into a raw one.
double convention_factor(Convention conv, int k);

bool is_finite(const Complex& z);

// Point of the open unit ball B^{2n}(1) in C^n: sum |z_j|^2 < 1, all
// components finite. Immutable.
class BallPoint {
public:
    explicit BallPoint(std::vector<Complex> z);

    int dim() const { return static_cast<int>(z_.size()); }
    const std::vector<Complex>& coords() const { return z_; }
    const Complex& operator[](int j) const { return z_[static_cast<size_t>(j)]; }
    double norm_sq() const { return norm_sq_; }

private:
    std::vector<Complex> z_;
    double norm_sq_ = 0.0;
};

// Homogeneous coordinates [w_1 : ... : w_{n+1}] on CP^n. At least one
// coordinate nonzero; equality is up to a common nonzero complex scalar.
class ProjPoint {
public:
    explicit ProjPoint(std::vector<Complex> w);

    int dim() const { return static_cast<int>(w_.size()) - 1; }  // n
    const std::vector<Complex>& coords() const { return w_; }
    const Complex& operator[](int j) const { return w_[static_cast<size_t>(j)]; }

    // Unit-norm representative with the first nonzero coordinate made real
    // and positive; the canonical form equality and distance are based on.
    std::vector<Complex> canonical() const;

private:
    std::vector<Complex> w_;
};

// Max-norm gap between canonical representatives.
double proj_distance(const ProjPoint& p, const ProjPoint& q);
bool proj_equal(const ProjPoint& p, const ProjPoint& q, double tol);

// Element of SU(2) stored as the first row (a, b); the matrix is
//   (  a        b     )
//   ( -conj(b)  conj(a) ).
// Construction enforces | |a|^2 + |b|^2 - 1 | <= 1e-12.
class SU2Element {
public:
    static constexpr double kUnitNormTol = 1e-12;

    SU2Element(Complex a, Complex b);
    static SU2Element identity() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }

    const Complex& a() const { return a_; }
    const Complex& b() const { return b_; }

    std::pair<Complex, Complex> apply(const Complex& z1, const Complex& z2) const {
        return {a_ * z1 + b_ * z2, -std::conj(b_) * z1 + std::conj(a_) * z2};
    }

    SU2Element operator*(const SU2Element& rhs) const;
    SU2Element inverse() const { return {std::conj(a_), -b_}; }

private:
    Complex a_, b_;
};

}  // namespace wmorph
