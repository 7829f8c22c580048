#include "wmorph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmorph {

std::string to_string(Convention conv) {
    return conv == Convention::normalized ? "normalized" : "raw";
}

Convention convention_from_string(std::string_view s) {
    if (s == "normalized") return Convention::normalized;
    if (s == "raw") return Convention::raw;
    throw std::invalid_argument("unknown convention: " + std::string(s));
}

double convention_factor(Convention conv, int k) {
    if (conv == Convention::normalized) return 1.0;
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace {

void require_all_finite(const std::vector<Complex>& v, const char* what) {
    for (const auto& z : v) {
        if (!is_finite(z)) {
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
        }
    }
}

}  // namespace

BallPoint::BallPoint(std::vector<Complex> z) : z_(std::move(z)) {
    if (z_.empty()) throw std::invalid_argument("BallPoint: empty coordinate vector");
    require_all_finite(z_, "BallPoint");
    for (const auto& c : z_) norm_sq_ += std::norm(c);
    if (!(norm_sq_ < 1.0)) {
        throw std::invalid_argument("BallPoint: sum |z_j|^2 must be < 1");
    }
}

ProjPoint::ProjPoint(std::vector<Complex> w) : w_(std::move(w)) {
    if (w_.size() < 2) {
        throw std::invalid_argument("ProjPoint: need at least two homogeneous coordinates");
    }
    require_all_finite(w_, "ProjPoint");
    const bool any_nonzero = std::any_of(w_.begin(), w_.end(),
                                         [](const Complex& z) { return std::abs(z) > 0.0; });
    if (!any_nonzero) {
        throw std::invalid_argument("ProjPoint: all-zero homogeneous coordinates");
    }
}

std::vector<Complex> ProjPoint::canonical() const {
    // Scale by the largest component first so the norm cannot overflow.
    double peak = 0.0;
    for (const auto& z : w_) {
        peak = std::max({peak, std::abs(z.real()), std::abs(z.imag())});
    }
    std::vector<Complex> v(w_.size());
    double norm_sq = 0.0;
    for (size_t j = 0; j < w_.size(); ++j) {
        v[j] = w_[j] / peak;
        norm_sq += std::norm(v[j]);
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);

    size_t ref = 0;
    while (ref < v.size() && std::abs(v[ref]) == 0.0) ++ref;
    const Complex phase = std::conj(v[ref]) / std::abs(v[ref]);
    for (auto& z : v) z *= phase * inv_norm;
    v[ref] = Complex{std::abs(v[ref].real()), 0.0};  // exactly real positive
    return v;
}

double proj_distance(const ProjPoint& p, const ProjPoint& q) {
    if (p.dim() != q.dim()) {
        throw std::invalid_argument("proj_distance: dimension mismatch");
    }
    const auto a = p.canonical();
    const auto b = q.canonical();
    double worst = 0.0;
    for (size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    return worst;
}

bool proj_equal(const ProjPoint& p, const ProjPoint& q, double tol) {
    return proj_distance(p, q) <= tol;
}

SU2Element::SU2Element(Complex a, Complex b) : a_(a), b_(b) {
    if (!is_finite(a_) || !is_finite(b_)) {
        throw std::invalid_argument("SU2Element: non-finite entries");
    }
    const double drift = std::abs(std::norm(a_) + std::norm(b_) - 1.0);
    if (drift > kUnitNormTol) {
        throw std::invalid_argument("SU2Element: |a|^2 + |b|^2 deviates from 1 beyond 1e-12");
    }
}

SU2Element SU2Element::operator*(const SU2Element& rhs) const {
    return {a_ * rhs.a_ - b_ * std::conj(rhs.b_), a_ * rhs.b_ + b_ * std::conj(rhs.a_)};
}

}  // namespace wmorph
