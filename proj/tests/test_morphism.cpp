#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "wmorph/morphism.hpp"

using wmorph::average_mc;
using wmorph::average_quadrature;
using wmorph::BallPoint;
using wmorph::Chart;
using wmorph::closed_form_average;
using wmorph::ClosedFormSource;
using wmorph::Complex;
using wmorph::Convention;
using wmorph::ExactValue;
using wmorph::orbit_area_pointwise;
using wmorph::ProjPoint;
using wmorph::Rational;
using wmorph::SamplerConfig;

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

}  // namespace

TEST_CASE("orbit points under single group elements") {
    const BallPoint z = bp({{1.0 / 3.0, 0}, {0, 0}});
    const BallPoint same = wmorph::orbit_point(wmorph::SU2Element::identity(), z);
    CHECK(same[0] == z[0]);
    CHECK(same[1] == z[1]);

    const BallPoint swapped = wmorph::orbit_point(wmorph::SU2Element({0, 0}, {1, 0}), z);
    CHECK(std::abs(swapped[0]) == 0.0);
    CHECK(std::abs(swapped[1] - Complex{-1.0 / 3.0, 0}) < 1e-16);
}

TEST_CASE("pointwise values at known points") {
    const BallPoint fixed = bp({{0, 0}, {0, 0}, {0.5, 0}});
    CHECK(orbit_area_pointwise(fixed, Convention::normalized) == 0.0);

    const BallPoint diag = bp({{0.5, 0}, {0.5, 0}});
    CHECK(orbit_area_pointwise(diag, Convention::normalized) ==
          doctest::Approx(kPiSq / 8.0).epsilon(1e-14));

    // the numeric pullback path agrees
    CHECK(orbit_area_pointwise(diag, Convention::normalized,
                               wmorph::PointwiseMethod::numeric) ==
          doctest::Approx(kPiSq / 8.0).epsilon(1e-8));
}

TEST_CASE("chart formula at known points") {
    const ProjPoint center = pp({{0, 0}, {0, 0}, {1, 0}});
    CHECK(wmorph::chart_area_closed_form(center, Convention::normalized) == 0.0);

    const ProjPoint ones = pp({{1, 0}, {1, 0}, {1, 0}});
    CHECK(wmorph::chart_area_closed_form(ones, Convention::normalized) ==
          doctest::Approx(2.0 * kPiSq / 9.0).epsilon(1e-14));
    CHECK(wmorph::chart_area_closed_form(ones, Convention::raw) ==
          doctest::Approx(4.0 * kPiSq / 9.0).epsilon(1e-14));

    CHECK_THROWS_AS(
        wmorph::chart_area_closed_form(pp({{1, 0}, {0, 0}, {0, 0}}),
                                       Convention::normalized),
        wmorph::HypersurfacePoint);
}

TEST_CASE("chart formula is equivalent to the ball closed form") {
    for (uint64_t i = 0; i < 1000; ++i) {
        wmorph::rng::Stream stream(53, i);
        const int n = 2 + static_cast<int>(i % 3);
        const BallPoint z = wmorph::sample_ball(n, stream);
        const double via_chart =
            wmorph::chart_area_closed_form(wmorph::embed(Chart(n), z), Convention::normalized);
        REQUIRE(std::abs(via_chart - orbit_area_pointwise(z, Convention::normalized)) <
                1e-12);
    }
}

TEST_CASE("quadrature oracle values") {
    CHECK(average_quadrature(2, Convention::normalized) ==
          doctest::Approx(kPiSq / 4.0).epsilon(1e-10));
    CHECK(average_quadrature(3, Convention::normalized) ==
          doctest::Approx(3.0 * kPiSq / 20.0).epsilon(1e-10));
    CHECK(average_quadrature(2, Convention::raw) ==
          doctest::Approx(kPiSq / 2.0).epsilon(1e-10));
}

TEST_CASE("derived closed form agrees with the quadrature oracle for n = 2..8") {
    for (int n = 2; n <= 8; ++n) {
        const double oracle = average_quadrature(n, Convention::normalized);
        const double derived =
            closed_form_average(n, ClosedFormSource::derived, Convention::normalized)
                .to_real();
        REQUIRE(std::abs(oracle - derived) / std::abs(derived) <= 1e-10);
    }
}

TEST_CASE("published closed forms, bit exact") {
    CHECK(closed_form_average(3, ClosedFormSource::paper, Convention::normalized) ==
          ExactValue::from_term(2, Rational(-32, 15)));
    CHECK(closed_form_average(2, ClosedFormSource::paper, Convention::normalized) ==
          ExactValue({{3, Rational(97, 256)}, {2, Rational(1, 32)}}));
    CHECK(closed_form_average(2, ClosedFormSource::derived, Convention::normalized) ==
          ExactValue::from_term(2, Rational(1, 4)));
    CHECK_THROWS_AS(closed_form_average(4, ClosedFormSource::paper, Convention::normalized),
                    wmorph::SingularFormula);

    // a few more rows of the same formula
    CHECK(closed_form_average(5, ClosedFormSource::paper, Convention::normalized) ==
          ExactValue::from_term(4, Rational(32, 175)));
    CHECK(closed_form_average(6, ClosedFormSource::paper, Convention::normalized) ==
          ExactValue::from_term(5, Rational(1, 24)));
    CHECK(closed_form_average(8, ClosedFormSource::paper, Convention::normalized) ==
          ExactValue::from_term(7, Rational(1, 160)));

    // raw convention doubles the exact values
    CHECK(closed_form_average(3, ClosedFormSource::paper, Convention::raw) ==
          ExactValue::from_term(2, Rational(-64, 15)));
    CHECK(closed_form_average(3, ClosedFormSource::derived, Convention::raw) ==
          ExactValue::from_term(2, Rational(3, 10)));
}

TEST_CASE("monte carlo average hits the oracles") {
    SamplerConfig cfg;
    cfg.n = 2;
    cfg.samples = 200000;
    cfg.seed = 42;
    const wmorph::MorphismEstimate est = average_mc(cfg);
    const double oracle = average_quadrature(2, Convention::normalized);
    CHECK(std::abs(est.value - oracle) <= 4.0 * est.std_error);
    CHECK(est.std_error / est.value <= 0.01);
    CHECK(est.reduced == doctest::Approx(est.value));  // pi^2/4 is already reduced

    SamplerConfig raw = cfg;
    raw.n = 3;
    raw.convention = Convention::raw;
    raw.samples = 200000;
    const wmorph::MorphismEstimate est_raw = average_mc(raw);
    CHECK(std::abs(est_raw.value - 3.0 * kPiSq / 10.0) <= 4.0 * est_raw.std_error);
}

TEST_CASE("monte carlo self-test channel is exact") {
    SamplerConfig cfg;
    cfg.n = 4;
    cfg.samples = 20000;
    const wmorph::MorphismEstimate est = wmorph::average_mc_selftest(cfg);
    CHECK(est.value == 1.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("monte carlo is worker-count invariant") {
    SamplerConfig cfg;
    cfg.n = 3;
    cfg.samples = 50000;
    cfg.seed = 7;
    cfg.workers = 1;
    const auto a = average_mc(cfg);
    cfg.workers = 4;
    const auto b = average_mc(cfg);
    cfg.workers = 9;
    const auto c = average_mc(cfg);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.std_error == c.std_error);
}

TEST_CASE("standard error scales like 1/sqrt(samples)") {
    SamplerConfig cfg;
    cfg.n = 2;
    cfg.seed = 12;
    cfg.samples = 10000;
    const double s4 = average_mc(cfg).std_error;
    cfg.samples = 100000;
    const double s5 = average_mc(cfg).std_error;
    cfg.samples = 1000000;
    const double s6 = average_mc(cfg).std_error;
    const double root10 = std::sqrt(10.0);
    CHECK(s4 / s5 > root10 / 2.0);
    CHECK(s4 / s5 < root10 * 2.0);
    CHECK(s5 / s6 > root10 / 2.0);
    CHECK(s5 / s6 < root10 * 2.0);
}

TEST_CASE("positivity of the averaged integrand") {
    for (uint64_t i = 0; i < 1000; ++i) {
        wmorph::rng::Stream stream(59, i);
        const BallPoint z = wmorph::sample_ball(3, stream);
        REQUIRE(orbit_area_pointwise(z, Convention::normalized) >= 0.0);
    }
    SamplerConfig cfg;
    cfg.n = 3;
    cfg.samples = 10000;
    CHECK(average_mc(cfg).value >= 0.0);
}

TEST_CASE("brute-force Riemann oracle confirms the n = 2 average") {
    // Midpoint grid over [-1,1]^4; independent of both the radial reduction
    // and the Monte-Carlo path.
    const int n_cells = 48;
    const double h = 2.0 / n_cells;
    double sum_f = 0.0;
    uint64_t count = 0;
    for (int i0 = 0; i0 < n_cells; ++i0) {
        const double x0 = -1.0 + (i0 + 0.5) * h;
        for (int i1 = 0; i1 < n_cells; ++i1) {
            const double x1 = -1.0 + (i1 + 0.5) * h;
            const double r01 = x0 * x0 + x1 * x1;
            if (r01 >= 1.0) continue;
            for (int i2 = 0; i2 < n_cells; ++i2) {
                const double x2 = -1.0 + (i2 + 0.5) * h;
                const double r012 = r01 + x2 * x2;
                if (r012 >= 1.0) continue;
                for (int i3 = 0; i3 < n_cells; ++i3) {
                    const double x3 = -1.0 + (i3 + 0.5) * h;
                    const double r_sq = r012 + x3 * x3;
                    if (r_sq >= 1.0) continue;
                    sum_f += r_sq * r_sq;
                    ++count;
                }
            }
        }
    }
    const double riemann = 0.5 * kPiSq * sum_f / static_cast<double>(count);
    const double quadrature = average_quadrature(2, Convention::normalized);
    CHECK(std::abs(riemann - quadrature) / quadrature < 0.005);

    SamplerConfig cfg;
    cfg.n = 2;
    cfg.samples = 1000000;
    cfg.seed = 42;
    const auto est = average_mc(cfg);
    CHECK(std::abs(est.value - riemann) <=
          5.0 * est.std_error + 0.005 * riemann);
}

TEST_CASE("discrepancy report flags the published n = 3 value") {
    SamplerConfig cfg;
    cfg.samples = 50000;
    cfg.seed = 42;
    const wmorph::DiscrepancyReport rep = wmorph::discrepancy_report(3, cfg);
    CHECK(rep.paper_real.has_value());
    CHECK(*rep.paper_real < 0.0);
    bool flagged = false;
    bool negative_flag = false;
    for (const auto& v : rep.verdicts) {
        if (v == wmorph::kVerdictPaperInconsistent) flagged = true;
        if (v == wmorph::kVerdictPaperNegative) negative_flag = true;
    }
    CHECK(flagged);
    CHECK(negative_flag);
    CHECK(rep.selftest_gap == 0.0);
    CHECK(rep.mc_quadrature_gap <= 4.0 * rep.mc.std_error);
    CHECK(rep.derived_rel_gap <= 1e-10);
}

TEST_CASE("discrepancy report at n = 2 measures the published gap") {
    SamplerConfig cfg;
    cfg.samples = 20000;
    cfg.seed = 1;
    const wmorph::DiscrepancyReport rep = wmorph::discrepancy_report(2, cfg);
    REQUIRE(rep.paper_abs_gap.has_value());
    // 97/256 pi^3 + 1/32 pi^2 - pi^2/4, evaluated independently
    CHECK(*rep.paper_abs_gap == doctest::Approx(9.589496060656556).epsilon(1e-10));
}

TEST_CASE("discrepancy report marks n = 4 singular") {
    SamplerConfig cfg;
    cfg.samples = 10000;
    const wmorph::DiscrepancyReport rep = wmorph::discrepancy_report(4, cfg);
    CHECK(rep.paper_singular);
    bool mentioned = false;
    for (const auto& v : rep.verdicts) {
        if (v.find(wmorph::kVerdictPaperSingular) != std::string::npos) mentioned = true;
    }
    CHECK(mentioned);
}

TEST_CASE("sampler validation") {
    SamplerConfig cfg;
    cfg.n = 1;
    CHECK_THROWS_AS(average_mc(cfg), std::invalid_argument);
    SamplerConfig small;
    small.samples = 100;
    CHECK_THROWS_AS(wmorph::discrepancy_report(2, small), std::invalid_argument);
}
