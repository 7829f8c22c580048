#include "wmorph/forms.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "wmorph/parallel.hpp"
#include "wmorph/quadrature.hpp"
#include "wmorph/rng.hpp"

namespace wmorph {

double omega0_pair(std::span<const double> u, std::span<const double> v) {
    double acc = 0.0;
    for (size_t m = 0; m + 1 < u.size(); m += 2) {
        acc += u[m] * v[m + 1] - u[m + 1] * v[m];
    }
    return acc;
}

namespace {

double pfaffian_rec(const std::vector<double>& a, int dim, const std::vector<int>& idx) {
    const size_t m = idx.size();
    if (m == 0) return 1.0;
    if (m == 2) return a[static_cast<size_t>(idx[0] * dim + idx[1])];
    double acc = 0.0;
    double sign = 1.0;
    for (size_t j = 1; j < m; ++j) {
        const double aij = a[static_cast<size_t>(idx[0] * dim + idx[j])];
        if (aij != 0.0) {
            std::vector<int> rest;
            rest.reserve(m - 2);
            for (size_t t = 1; t < m; ++t) {
                if (t != j) rest.push_back(idx[t]);
            }
            acc += sign * aij * pfaffian_rec(a, dim, rest);
        }
        sign = -sign;
    }
    return acc;
}

}  // namespace

double pfaffian(const std::vector<double>& a, int dim) {
    if (dim < 0 || dim % 2 != 0) {
        throw std::invalid_argument("pfaffian: dimension must be even");
    }
    if (a.size() != static_cast<size_t>(dim) * static_cast<size_t>(dim)) {
        throw std::invalid_argument("pfaffian: matrix size mismatch");
    }
    std::vector<int> idx(static_cast<size_t>(dim));
    std::iota(idx.begin(), idx.end(), 0);
    return pfaffian_rec(a, dim, idx);
}

double omega_power_eval(const Frame& frame, int k, Convention conv) {
    if (k < 1) throw std::invalid_argument("omega_power_eval: k must be >= 1");
    const size_t dim2n = frame.point.size();
    if (dim2n % 2 != 0 || dim2n == 0) {
        throw std::invalid_argument("omega_power_eval: point must have 2n real coordinates");
    }
    if (static_cast<size_t>(k) > dim2n / 2) {
        throw std::invalid_argument("omega_power_eval: k exceeds the complex dimension");
    }
    const int dim = 2 * k;
    if (frame.vectors.size() != static_cast<size_t>(dim)) {
        throw std::invalid_argument("omega_power_eval: need exactly 2k vectors");
    }
    for (const auto& v : frame.vectors) {
        if (v.size() != dim2n) {
            throw std::invalid_argument("omega_power_eval: vector dimension mismatch");
        }
    }
    std::vector<double> gram(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double g = omega0_pair(frame.vectors[static_cast<size_t>(i)],
                                         frame.vectors[static_cast<size_t>(j)]);
            gram[static_cast<size_t>(i * dim + j)] = g;
            gram[static_cast<size_t>(j * dim + i)] = -g;
        }
    }
    return pfaffian(gram, dim) * convention_factor(conv, k);
}

CappingMap CappingMap::flat_disk(int n, Complex z1, Complex z2) {
    if (n < 2) throw std::invalid_argument("flat_disk: need complex dimension >= 2");
    const double radius = std::sqrt(std::norm(z1) + std::norm(z2));
    const size_t dim2n = static_cast<size_t>(2 * n);
    CappingMap map(Kind::flat_disk, 2, n,
                   [radius, dim2n](std::span<const double> w, std::span<double> out) {
                       for (size_t j = 0; j < dim2n; ++j) out[j] = 0.0;
                       out[0] = radius * w[0];
                       out[1] = radius * w[1];
                       out[2] = radius * w[2];
                       out[3] = radius * w[3];
                   });
    map.radius_ = radius;
    return map;
}

CappingMap CappingMap::warped(const CappingMap& base, double amplitude,
                              int real_coord_index) {
    if (real_coord_index < 0 || real_coord_index >= 2 * base.n()) {
        throw std::invalid_argument("warped: coordinate index out of range");
    }
    auto base_eval = base.evaluate_;
    const size_t dim2k = static_cast<size_t>(2 * base.k());
    const size_t target = static_cast<size_t>(real_coord_index);
    CappingMap map(Kind::warped, base.k(), base.n(),
                   [base_eval, amplitude, dim2k, target](std::span<const double> w,
                                                         std::span<double> out) {
                       base_eval(w, out);
                       double s_sq = 0.0;
                       for (size_t j = 0; j < dim2k; ++j) s_sq += w[j] * w[j];
                       const double t = 1.0 - s_sq;
                       out[target] += amplitude * t * t;
                   });
    map.amplitude_ = amplitude;
    return map;
}

CappingMap CappingMap::general(int k, int n, Evaluator evaluate) {
    if (k < 1 || n < 1) throw std::invalid_argument("general: k and n must be positive");
    if (!evaluate) throw std::invalid_argument("general: missing evaluator");
    return CappingMap(Kind::general, k, n, std::move(evaluate));
}

void CappingMap::analytic_jacobian(std::span<const double> /*w*/,
                                   std::span<double> jac) const {
    if (kind_ != Kind::flat_disk) {
        throw std::logic_error("analytic_jacobian: only the flat disk carries one");
    }
    const size_t rows = static_cast<size_t>(2 * n_);
    for (size_t col = 0; col < 4; ++col) {
        for (size_t row = 0; row < rows; ++row) jac[col * rows + row] = 0.0;
        jac[col * rows + col] = radius_;
    }
}

CappingMap orientation_reversed(const CappingMap& u) {
    const size_t dim2k = static_cast<size_t>(2 * u.k());
    CappingMap inner = u;
    return CappingMap::general(
        u.k(), u.n(),
        [inner, dim2k](std::span<const double> w, std::span<double> out) {
            double reflected[16];
            for (size_t j = 0; j < dim2k; ++j) reflected[j] = w[j];
            reflected[1] = -reflected[1];
            inner.evaluate(std::span<const double>(reflected, dim2k), out);
        });
}

void QuadratureSpec::validate() const {
    if (radial_nodes < 2 || angular_nodes < 2) {
        throw std::invalid_argument("QuadratureSpec: node counts must be >= 2");
    }
    if (!(fd_step >= 1e-7 && fd_step <= 1e-3)) {
        throw std::invalid_argument("QuadratureSpec: fd_step must lie in [1e-7, 1e-3]");
    }
}

namespace {

// Shared scratch for one integration worker: evaluation buffers reused across
// the nodes of a leaf range.
struct JacobianScratch {
    std::vector<double> plus, minus, jac;

    explicit JacobianScratch(int k, int n)
        : plus(static_cast<size_t>(2 * n)),
          minus(static_cast<size_t>(2 * n)),
          jac(static_cast<size_t>(2 * k) * static_cast<size_t>(2 * n)) {}
};

// Columns jac[col * 2n + row] = pushforward of the col-th coordinate
// direction, by central differences with step h.
void fd_jacobian(const CappingMap& u, std::span<const double> w, double h,
                 JacobianScratch& scratch) {
    const size_t dim2k = static_cast<size_t>(2 * u.k());
    const size_t dim2n = static_cast<size_t>(2 * u.n());
    double probe[16];
    for (size_t j = 0; j < dim2k; ++j) probe[j] = w[j];
    const double inv_2h = 1.0 / (2.0 * h);
    for (size_t col = 0; col < dim2k; ++col) {
        const double w_col = probe[col];
        probe[col] = w_col + h;
        u.evaluate(std::span<const double>(probe, dim2k), scratch.plus);
        probe[col] = w_col - h;
        u.evaluate(std::span<const double>(probe, dim2k), scratch.minus);
        probe[col] = w_col;
        for (size_t row = 0; row < dim2n; ++row) {
            scratch.jac[col * dim2n + row] = (scratch.plus[row] - scratch.minus[row]) * inv_2h;
        }
    }
}

// Pfaffian of the omega_0 Gram matrix of 4 Jacobian columns: the normalized
// integrand for k = 2.
double gram_pfaffian_k2(const std::vector<double>& jac, size_t dim2n) {
    const auto col = [&](size_t c) {
        return std::span<const double>(jac.data() + c * dim2n, dim2n);
    };
    const double g01 = omega0_pair(col(0), col(1));
    const double g02 = omega0_pair(col(0), col(2));
    const double g03 = omega0_pair(col(0), col(3));
    const double g12 = omega0_pair(col(1), col(2));
    const double g13 = omega0_pair(col(1), col(3));
    const double g23 = omega0_pair(col(2), col(3));
    return g01 * g23 - g02 * g13 + g03 * g12;
}

double gram_pfaffian(const std::vector<double>& jac, int k, size_t dim2n) {
    if (k == 2) return gram_pfaffian_k2(jac, dim2n);
    const int dim = 2 * k;
    std::vector<double> gram(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double g =
                omega0_pair(std::span<const double>(jac.data() + static_cast<size_t>(i) * dim2n, dim2n),
                            std::span<const double>(jac.data() + static_cast<size_t>(j) * dim2n, dim2n));
            gram[static_cast<size_t>(i * dim + j)] = g;
            gram[static_cast<size_t>(j * dim + i)] = -g;
        }
    }
    return pfaffian(gram, dim);
}

}  // namespace

double integrate_pullback(const CappingMap& u, const QuadratureSpec& spec,
                          Convention conv, int workers) {
    if (u.k() != 2) {
        throw std::invalid_argument(
            "integrate_pullback: quadrature path requires k = 2; use integrate_pullback_mc");
    }
    spec.validate();

    const GaussLegendre rule_u = gauss_legendre_mapped(spec.radial_nodes, 0.0, 1.0);
    const GaussLegendre rule_phi =
        gauss_legendre_mapped(spec.angular_nodes, 0.0, 2.0 * std::numbers::pi);
    const size_t nu = static_cast<size_t>(spec.radial_nodes);
    const size_t nphi = static_cast<size_t>(spec.angular_nodes);

    std::vector<double> cos_phi(nphi), sin_phi(nphi);
    for (size_t j = 0; j < nphi; ++j) {
        cos_phi[j] = std::cos(rule_phi.nodes[j]);
        sin_phi[j] = std::sin(rule_phi.nodes[j]);
    }

    const size_t dim2n = static_cast<size_t>(2 * u.n());
    const bool analytic = u.has_analytic_jacobian() && !spec.force_finite_differences;
    const uint64_t total = static_cast<uint64_t>(nu) * nu * nphi * nphi;

    const auto leaf = [&](uint64_t lo, uint64_t hi) -> double {
        JacobianScratch scratch(u.k(), u.n());
        double acc = 0.0;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            const size_t j2 = static_cast<size_t>(idx % nphi);
            const size_t j1 = static_cast<size_t>((idx / nphi) % nphi);
            const size_t i2 = static_cast<size_t>((idx / (nphi * nphi)) % nu);
            const size_t i1 = static_cast<size_t>(idx / (nphi * nphi * nu));

            const double u1 = rule_u.nodes[i1];
            const double u2 = rule_u.nodes[i2];
            const double r1 = std::sqrt(u1 * u2);
            const double r2 = std::sqrt((1.0 - u1) * u2);
            const double w[4] = {r1 * cos_phi[j1], r1 * sin_phi[j1],
                                 r2 * cos_phi[j2], r2 * sin_phi[j2]};

            if (analytic) {
                u.analytic_jacobian(std::span<const double>(w, 4), scratch.jac);
            } else {
                fd_jacobian(u, std::span<const double>(w, 4), spec.fd_step, scratch);
            }
            const double density = gram_pfaffian_k2(scratch.jac, dim2n);
            const double weight = rule_u.weights[i1] * rule_u.weights[i2] *
                                  rule_phi.weights[j1] * rule_phi.weights[j2] * 0.25 * u2;
            const double term = density * weight;
            if (!std::isfinite(term)) {
                throw NonFiniteIntegrand("integrate_pullback: non-finite integrand node");
            }
            acc += term;
        }
        return acc;
    };

    const int worker_count = resolve_worker_count(workers);
    const double sum = pairwise_reduce(uint64_t{0}, total, uint64_t{4096},
                                       spawn_depth_for(worker_count), leaf,
                                       [](double a, double b) { return a + b; });
    return sum * convention_factor(conv, u.k());
}

MonteCarloIntegral integrate_pullback_mc(const CappingMap& u, uint64_t samples,
                                         uint64_t seed, Convention conv,
                                         const QuadratureSpec& spec, int workers) {
    if (samples == 0) throw std::invalid_argument("integrate_pullback_mc: need samples >= 1");
    spec.validate();
    const int k = u.k();
    const size_t dim2k = static_cast<size_t>(2 * k);
    const size_t dim2n = static_cast<size_t>(2 * u.n());
    const bool analytic = u.has_analytic_jacobian() && !spec.force_finite_differences;

    double ball_volume = 1.0;  // vol(D^{2k}) = pi^k / k!
    for (int j = 1; j <= k; ++j) ball_volume *= std::numbers::pi / j;

    struct Acc {
        double sum = 0.0, sum_sq = 0.0;
    };
    const auto leaf = [&](uint64_t lo, uint64_t hi) -> Acc {
        JacobianScratch scratch(u.k(), u.n());
        Acc acc;
        double w[16];
        for (uint64_t i = lo; i < hi; ++i) {
            rng::Stream stream(seed, i);
            double norm_sq = 0.0;
            for (size_t j = 0; j < dim2k; ++j) {
                w[j] = stream.next_gaussian();
                norm_sq += w[j] * w[j];
            }
            const double radius = std::pow(stream.next_double(), 1.0 / (2.0 * k));
            const double scale = norm_sq > 0.0 ? radius / std::sqrt(norm_sq) : 0.0;
            for (size_t j = 0; j < dim2k; ++j) w[j] *= scale;

            if (analytic) {
                u.analytic_jacobian(std::span<const double>(w, dim2k), scratch.jac);
            } else {
                fd_jacobian(u, std::span<const double>(w, dim2k), spec.fd_step, scratch);
            }
            const double density = gram_pfaffian(scratch.jac, k, dim2n);
            if (!std::isfinite(density)) {
                throw NonFiniteIntegrand("integrate_pullback_mc: non-finite integrand sample");
            }
            acc.sum += density;
            acc.sum_sq += density * density;
        }
        return acc;
    };

    const int worker_count = resolve_worker_count(workers);
    const Acc acc = pairwise_reduce(uint64_t{0}, samples, uint64_t{8192},
                                    spawn_depth_for(worker_count), leaf,
                                    [](Acc a, Acc b) {
                                        return Acc{a.sum + b.sum, a.sum_sq + b.sum_sq};
                                    });
    const double n_samples = static_cast<double>(samples);
    const double mean = acc.sum / n_samples;
    double variance = 0.0;
    if (samples > 1) {
        variance = (acc.sum_sq - n_samples * mean * mean) / (n_samples - 1.0);
        variance = std::max(variance, 0.0);
    }
    const double factor = ball_volume * convention_factor(conv, k);
    return {mean * factor, std::sqrt(variance / n_samples) * std::abs(factor), samples, seed};
}

double flat_disk_closed_form(Complex z1, Complex z2, Convention conv) {
    const double s = std::norm(z1) + std::norm(z2);
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return 0.5 * pi_sq * s * s * convention_factor(conv, 2);
}

}  // namespace wmorph
