#include "wmorph/projective.hpp"

#include <cmath>
#include <stdexcept>

namespace wmorph {

Chart::Chart(int n_) : n(n_) {
    if (n < 2) throw std::invalid_argument("Chart: complex dimension must be >= 2");
}

ProjPoint embed(const Chart& chart, const BallPoint& z) {
    if (z.dim() != chart.n) throw std::invalid_argument("embed: dimension mismatch");
    std::vector<Complex> w = z.coords();
    w.emplace_back(std::sqrt(1.0 - z.norm_sq()), 0.0);
    return ProjPoint(std::move(w));
}

BallPoint chart_inverse(const Chart& chart, const ProjPoint& p) {
    if (p.dim() != chart.n) throw std::invalid_argument("chart_inverse: dimension mismatch");
    const auto& w = p.coords();
    const Complex last = w.back();
    const double last_abs = std::abs(last);
    if (last_abs == 0.0) {
        throw HypersurfacePoint("chart_inverse: w_{n+1} = 0, point outside the chart");
    }
    double norm_sq = 0.0;
    for (const auto& c : w) norm_sq += std::norm(c);
    // Common scalar that makes the vector unit norm and w_{n+1} real positive.
    const Complex scale = std::conj(last) / (last_abs * std::sqrt(norm_sq));
    std::vector<Complex> z(w.size() - 1);
    double z_norm_sq = 0.0;
    for (size_t j = 0; j + 1 < w.size(); ++j) {
        z[j] = w[j] * scale;
        z_norm_sq += std::norm(z[j]);
    }
    if (!(z_norm_sq < 1.0)) {
        throw HypersurfacePoint("chart_inverse: point within roundoff of the hypersurface");
    }
    return BallPoint(std::move(z));
}

ProjPoint act_proj(const SU2Element& A, const ProjPoint& p) {
    std::vector<Complex> w = p.coords();
    const auto [w1, w2] = A.apply(w[0], w[1]);
    w[0] = w1;
    w[1] = w2;
    return ProjPoint(std::move(w));
}

BallPoint act_ball(const SU2Element& A, const BallPoint& z) {
    if (z.dim() < 2) throw std::invalid_argument("act_ball: need complex dimension >= 2");
    std::vector<Complex> out = z.coords();
    const auto [z1, z2] = A.apply(out[0], out[1]);
    out[0] = z1;
    out[1] = z2;
    return BallPoint(std::move(out));
}

SU2Element haar_sample(rng::Stream& stream) {
    for (;;) {
        const double g0 = stream.next_gaussian();
        const double g1 = stream.next_gaussian();
        const double g2 = stream.next_gaussian();
        const double g3 = stream.next_gaussian();
        const double norm = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2 + g3 * g3);
        if (norm == 0.0) continue;
        return {Complex{g0 / norm, g1 / norm}, Complex{g2 / norm, g3 / norm}};
    }
}

BallPoint sample_ball(int n, rng::Stream& stream) {
    if (n < 1) throw std::invalid_argument("sample_ball: need n >= 1");
    for (;;) {
        std::vector<Complex> z(static_cast<size_t>(n));
        double norm_sq = 0.0;
        for (int j = 0; j < n; ++j) {
            const double re = stream.next_gaussian();
            const double im = stream.next_gaussian();
            z[static_cast<size_t>(j)] = Complex{re, im};
            norm_sq += re * re + im * im;
        }
        const double u = stream.next_double();
        if (norm_sq == 0.0) continue;
        // Exact inverse CDF of the radius: U^(1/2n); no rejection.
        const double scale = std::pow(u, 1.0 / (2.0 * n)) / std::sqrt(norm_sq);
        for (auto& c : z) c *= scale;
        return BallPoint(std::move(z));
    }
}

}  // namespace wmorph
