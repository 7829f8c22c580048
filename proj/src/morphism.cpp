#include "wmorph/morphism.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wmorph/parallel.hpp"
#include "wmorph/quadrature.hpp"

namespace wmorph {

BallPoint orbit_point(const SU2Element& A, const BallPoint& z) {
    return act_ball(A, z);
}

double orbit_area_pointwise(const BallPoint& z, Convention conv, PointwiseMethod method,
                            const QuadratureSpec& spec, int workers) {
    if (z.dim() < 2) {
        throw std::invalid_argument("orbit_area_pointwise: need complex dimension >= 2");
    }
    if (method == PointwiseMethod::closed_form) {
        return flat_disk_closed_form(z[0], z[1], conv);
    }
    return integrate_pullback(CappingMap::flat_disk(z.dim(), z[0], z[1]), spec, conv,
                              workers);
}

double chart_area_closed_form(const ProjPoint& p, Convention conv) {
    const auto& w = p.coords();
    if (std::abs(w.back()) == 0.0) {
        throw HypersurfacePoint("chart_area_closed_form: w_{n+1} = 0, outside the chart");
    }
    // Equal to the displayed chart formula after dividing numerator and
    // denominator by |w_{n+1}|^2; this form has no overflow near the
    // hypersurface.
    double head = std::norm(w[0]) + std::norm(w[1]);
    double total = 0.0;
    for (const auto& c : w) total += std::norm(c);
    const double ratio = head / total;
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return 0.5 * pi_sq * ratio * ratio * convention_factor(conv, 2);
}

namespace {

struct MeanAcc {
    double sum = 0.0, sum_sq = 0.0;
};

template <class Integrand>
MorphismEstimate run_average(const SamplerConfig& cfg, const Integrand& integrand) {
    if (cfg.n < 2) throw std::invalid_argument("average_mc: need n >= 2");
    if (cfg.samples == 0) throw std::invalid_argument("average_mc: need samples >= 1");

    const auto leaf = [&](uint64_t lo, uint64_t hi) -> MeanAcc {
        MeanAcc acc;
        for (uint64_t i = lo; i < hi; ++i) {
            rng::Stream stream(cfg.seed, i);
            const BallPoint z = sample_ball(cfg.n, stream);
            const double v = integrand(z);
            acc.sum += v;
            acc.sum_sq += v * v;
        }
        return acc;
    };

    const int workers = resolve_worker_count(cfg.workers);
    const MeanAcc acc =
        pairwise_reduce(uint64_t{0}, cfg.samples, uint64_t{8192}, spawn_depth_for(workers),
                        leaf, [](MeanAcc a, MeanAcc b) {
                            return MeanAcc{a.sum + b.sum, a.sum_sq + b.sum_sq};
                        });

    const double n_samples = static_cast<double>(cfg.samples);
    const double mean = acc.sum / n_samples;
    double variance = 0.0;
    if (cfg.samples > 1) {
        variance = (acc.sum_sq - n_samples * mean * mean) / (n_samples - 1.0);
        variance = std::max(variance, 0.0);
    }
    const PeriodGroup period = period_generator(cfg.n, cfg.convention);
    return {mean,
            std::sqrt(variance / n_samples),
            cfg.samples,
            cfg.seed,
            cfg.convention,
            reduce_mod(mean, period),
            period.generator};
}

}  // namespace

MorphismEstimate average_mc(const SamplerConfig& cfg) {
    const Convention conv = cfg.convention;
    return run_average(cfg, [conv](const BallPoint& z) {
        return flat_disk_closed_form(z[0], z[1], conv);
    });
}

MorphismEstimate average_mc_selftest(const SamplerConfig& cfg) {
    return run_average(cfg, [](const BallPoint&) { return 1.0; });
}

double average_quadrature(int n, Convention conv) {
    if (n < 2) throw std::invalid_argument("average_quadrature: need n >= 2");
    // Mean of (|z_1|^2 + |z_2|^2)^2 over B^{2n}(1), reduced to the radial
    // density of s = |z_1|^2 + |z_2|^2: f(s) = n(n-1) s (1-s)^(n-2).
    const double mean_s_sq =
        2.0 * n * (n - 1) *
        integrate_adaptive(
            [n](double rho) {
                return std::pow(rho, 7) * std::pow(1.0 - rho * rho, n - 2);
            },
            0.0, 1.0, 1e-12);
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return 0.5 * pi_sq * mean_s_sq * convention_factor(conv, 2);
}

ExactValue closed_form_average(int n, ClosedFormSource source, Convention conv) {
    if (n < 2) throw std::invalid_argument("closed_form_average: need n >= 2");
    ExactValue value;
    if (source == ClosedFormSource::derived) {
        value = ExactValue::from_term(
            2, Rational(3, static_cast<long long>(n + 1) * (n + 2)));
    } else if (n == 2) {
        value = ExactValue(
            {{3, Rational(97, 256)}, {2, Rational(1, 32)}});
    } else {
        // Denominator n^2 (n^3 - 4n^2 - 4n + 16) = n^2 (n-4)(n^2-4); it is
        // negative for n = 3 and vanishes at n = 4.
        const BigInt nn(n);
        BigInt den = nn * nn * (nn * nn * nn - 4 * nn * nn - 4 * nn + 16);
        if (den == 0) {
            throw SingularFormula("closed_form_average: published formula singular at n = 4");
        }
        BigInt num = 96;
        if (den < 0) {
            num = -num;
            den = -den;
        }
        value = ExactValue::from_term(n - 1, Rational(num, den));
    }
    if (conv == Convention::raw) value = value.scaled(Rational(2));
    return value;
}

DiscrepancyReport discrepancy_report(int n, const SamplerConfig& cfg) {
    SamplerConfig run = cfg;
    run.n = n;
    if (run.samples < 1000) {
        throw std::invalid_argument("discrepancy_report: reported runs need >= 1000 samples");
    }

    DiscrepancyReport rep;
    rep.n = n;
    rep.convention = run.convention;
    rep.mc = average_mc(run);
    rep.quadrature = average_quadrature(n, run.convention);

    const MorphismEstimate selftest = average_mc_selftest(run);
    rep.selftest_value = selftest.value;
    rep.selftest_gap = selftest.value - 1.0;

    rep.derived_exact = closed_form_average(n, ClosedFormSource::derived, run.convention);
    rep.derived_real = rep.derived_exact.to_real();

    rep.paper_singular = false;
    try {
        const ExactValue paper =
            closed_form_average(n, ClosedFormSource::paper, run.convention);
        rep.paper_exact = paper;
        rep.paper_real = paper.to_real();
    } catch (const SingularFormula&) {
        rep.paper_singular = true;
    }

    rep.mc_quadrature_gap = std::abs(rep.mc.value - rep.quadrature);
    rep.derived_rel_gap =
        std::abs(rep.quadrature - rep.derived_real) / std::abs(rep.derived_real);
    if (rep.paper_real) {
        rep.paper_abs_gap = std::abs(*rep.paper_real - rep.quadrature);
        rep.paper_rel_gap = *rep.paper_abs_gap / std::abs(rep.quadrature);
    }

    const PeriodGroup period = period_generator(n, run.convention);
    rep.period = period.generator;
    rep.reduced_value = reduce_mod(rep.mc.value, period);

    rep.verdicts.push_back(rep.mc_quadrature_gap <= 4.0 * rep.mc.std_error
                               ? kVerdictMcAgrees
                               : kVerdictMcDisagrees);
    rep.verdicts.push_back(rep.derived_rel_gap <= 1e-10 ? kVerdictDerivedMatches
                                                        : kVerdictDerivedMismatch);
    if (rep.paper_singular) {
        std::ostringstream os;
        os << kVerdictPaperSingular << " at n = " << n;
        rep.verdicts.push_back(os.str());
    } else {
        // The integrand of the average is nonnegative, so a negative value can
        // never be consistent, whatever the tolerance.
        const bool consistent = *rep.paper_real >= 0.0 && *rep.paper_rel_gap <= 1e-6;
        rep.verdicts.push_back(consistent ? kVerdictPaperConsistent
                                          : kVerdictPaperInconsistent);
        if (*rep.paper_real < 0.0) rep.verdicts.push_back(kVerdictPaperNegative);
    }
    rep.verdicts.push_back(rep.selftest_gap == 0.0 ? kVerdictSelfTestExact
                                                   : kVerdictSelfTestBroken);
    return rep;
}

}  // namespace wmorph
