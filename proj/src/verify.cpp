#include "wmorph/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wmorph/arith.hpp"
#include "wmorph/morphism.hpp"
#include "wmorph/projective.hpp"

namespace wmorph {

namespace {

std::string describe_ball(const BallPoint& z) {
    std::ostringstream os;
    os << "z=(";
    for (int j = 0; j < z.dim(); ++j) {
        if (j) os << "; ";
        os << z[j].real() << "," << z[j].imag();
    }
    os << ")";
    return os.str();
}

std::string describe_su2(const SU2Element& A) {
    std::ostringstream os;
    os << "A=(a=" << A.a().real() << "+" << A.a().imag() << "i, b=" << A.b().real()
       << "+" << A.b().imag() << "i)";
    return os.str();
}

struct Checker {
    PropertyResult result;

    Checker(std::string name, double tol) {
        result.name = std::move(name);
        result.pass = true;
        result.worst = 0.0;
        result.tol = tol;
    }

    void observe(double deviation, const std::string& input) {
        if (deviation > result.worst) result.worst = deviation;
        if (deviation > result.tol && result.pass) {
            result.pass = false;
            result.detail = input;
        }
    }

    void fail(const std::string& why) {
        result.pass = false;
        if (result.detail.empty()) result.detail = why;
    }
};

uint64_t pick_trials(const VerifyOptions& opts, uint64_t fallback) {
    return opts.trials > 0 ? opts.trials : fallback;
}

double pick_tol(const VerifyOptions& opts, double fallback) {
    return opts.tol > 0.0 ? opts.tol : fallback;
}

// Ball point whose first-two-coordinate weight is bounded away from 0 and 1,
// so relative comparisons stay well conditioned.
BallPoint sample_chart_point(int n, rng::Stream& stream, double s_min, double s_max) {
    for (;;) {
        const BallPoint z = sample_ball(n, stream);
        const double s = std::norm(z[0]) + std::norm(z[1]);
        if (s >= s_min && s <= s_max) return z;
    }
}

// ---------------------------------------------------------------- equivariance

std::vector<PropertyResult> suite_equivariance(const VerifyOptions& opts) {
    std::vector<PropertyResult> out;
    const uint64_t trials = pick_trials(opts, 10000);
    const double tol = pick_tol(opts, 1e-12);

    {
        Checker check("embed is SU(2)-equivariant", tol);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed, i);
            const int n = 2 + static_cast<int>(i % 3);
            const Chart chart(n);
            const SU2Element A = haar_sample(stream);
            const BallPoint z = sample_ball(n, stream);
            const double dev =
                proj_distance(embed(chart, act_ball(A, z)), act_proj(A, embed(chart, z)));
            check.observe(dev, describe_su2(A) + " " + describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("chart inverse undoes embed", pick_tol(opts, 1e-12));
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 1, i);
            const int n = 2 + static_cast<int>(i % 3);
            const Chart chart(n);
            const BallPoint z = sample_ball(n, stream);
            const BallPoint back = chart_inverse(chart, embed(chart, z));
            double dev = 0.0;
            for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(back[j] - z[j]));
            check.observe(dev, describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("projective action composes", pick_tol(opts, 1e-12));
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 2, i);
            const int n = 2 + static_cast<int>(i % 3);
            const Chart chart(n);
            const SU2Element A = haar_sample(stream);
            const SU2Element B = haar_sample(stream);
            const ProjPoint p = embed(chart, sample_ball(n, stream));
            const double dev = proj_distance(act_proj(A * B, p), act_proj(A, act_proj(B, p)));
            check.observe(dev, describe_su2(A));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("orbit is a point exactly at (z1, z2) = (0, 0)", 0.0);
        check.result.tol = 1e-12;
        const uint64_t cases = std::max<uint64_t>(trials / 100, 10);
        for (uint64_t i = 0; i < cases; ++i) {
            rng::Stream stream(opts.seed + 3, i);
            const int n = 3;
            BallPoint moving = sample_chart_point(n, stream, 0.05, 0.9);
            std::vector<Complex> fixed_coords(static_cast<size_t>(n), Complex{0.0, 0.0});
            fixed_coords[2] = Complex{0.4, -0.1};
            const BallPoint fixed(fixed_coords);

            const auto spread = [&](const BallPoint& z) {
                double worst = 0.0;
                const BallPoint first = act_ball(haar_sample(stream), z);
                for (int rep = 0; rep < 99; ++rep) {
                    const BallPoint img = act_ball(haar_sample(stream), z);
                    double dist = 0.0;
                    for (int j = 0; j < n; ++j) dist += std::norm(img[j] - first[j]);
                    worst = std::max(worst, std::sqrt(dist));
                }
                return worst;
            };
            if (spread(fixed) > 1e-12) {
                check.fail("fixed point moved: " + describe_ball(fixed));
            }
            if (spread(moving) <= 1e-12) {
                check.fail("free orbit collapsed: " + describe_ball(moving));
            }
        }
        out.push_back(check.result);
    }
    return out;
}

// ------------------------------------------------------- pointwise chart formula

std::vector<PropertyResult> suite_lemma33(const VerifyOptions& opts) {
    std::vector<PropertyResult> out;
    const Convention conv = Convention::normalized;

    {
        Checker check("chart formula matches ball closed form", pick_tol(opts, 1e-12));
        const uint64_t trials = pick_trials(opts, 1000);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed, i);
            const int n = 2 + static_cast<int>(i % 3);
            const Chart chart(n);
            const BallPoint z = sample_ball(n, stream);
            const double via_chart = chart_area_closed_form(embed(chart, z), conv);
            const double direct = orbit_area_pointwise(z, conv);
            check.observe(std::abs(via_chart - direct), describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        const double tol = pick_tol(opts, 1e-6);
        Checker check("numeric pullback matches closed form (relative)", tol);
        const uint64_t trials = pick_trials(opts, 100);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 1, i);
            const int n = 2 + static_cast<int>(i % 2);
            const BallPoint z = sample_chart_point(n, stream, 0.01, 0.99);
            const double closed = orbit_area_pointwise(z, conv);
            const double numeric = orbit_area_pointwise(
                z, conv, PointwiseMethod::numeric, opts.quad, opts.workers);
            check.observe(std::abs(numeric - closed) / closed, describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("pointwise value scales quartically", pick_tol(opts, 1e-12));
        const uint64_t trials = pick_trials(opts, 1000);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 2, i);
            const BallPoint z = sample_ball(3, stream);
            const double lambda = 0.05 + 0.9 * stream.next_double();
            std::vector<Complex> scaled = z.coords();
            scaled[0] *= lambda;
            scaled[1] *= lambda;
            const double lhs = orbit_area_pointwise(BallPoint(scaled), conv);
            const double rhs =
                lambda * lambda * lambda * lambda * orbit_area_pointwise(z, conv);
            check.observe(std::abs(lhs - rhs), describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("pointwise value is orbit invariant", pick_tol(opts, 1e-12));
        const uint64_t trials = pick_trials(opts, 1000);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 3, i);
            const int n = 2 + static_cast<int>(i % 3);
            const SU2Element A = haar_sample(stream);
            const BallPoint z = sample_ball(n, stream);
            const double dev = std::abs(orbit_area_pointwise(act_ball(A, z), conv) -
                                        orbit_area_pointwise(z, conv));
            check.observe(dev, describe_su2(A) + " " + describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("reparametrized family leaves the value fixed", pick_tol(opts, 1e-12));
        const uint64_t trials = pick_trials(opts, 1000);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 4, i);
            const SU2Element A = haar_sample(stream);
            const SU2Element B = haar_sample(stream);
            const BallPoint z = sample_ball(2, stream);
            // {psi_{A B}}_A traces the same orbit spheres as {psi_A}_A.
            const double dev = std::abs(orbit_area_pointwise(orbit_point(A * B, z), conv) -
                                        orbit_area_pointwise(z, conv));
            check.observe(dev, describe_su2(B) + " " + describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    return out;
}

// ------------------------------------------------------------------------ caps

std::vector<PropertyResult> suite_caps(const VerifyOptions& opts) {
    std::vector<PropertyResult> out;
    const Convention conv = Convention::normalized;
    const int n = 3;

    {
        const double tol = pick_tol(opts, 1e-6);
        Checker check("warped cap reproduces the flat value (relative)", tol);
        const uint64_t caps = pick_trials(opts, 20);
        for (uint64_t i = 0; i < caps; ++i) {
            rng::Stream stream(opts.seed, i);
            const BallPoint z = sample_chart_point(n, stream, 0.05, 0.95);
            const double amplitude = 0.2 * (2.0 * stream.next_double() - 1.0);
            const int coord = 4 + static_cast<int>(i % 2);  // re/im of z_3
            const CappingMap cap = CappingMap::warped(
                CappingMap::flat_disk(n, z[0], z[1]), amplitude, coord);
            const double flat = flat_disk_closed_form(z[0], z[1], conv);
            const double warped = integrate_pullback(cap, opts.quad, conv, opts.workers);
            std::ostringstream os;
            os << describe_ball(z) << " amplitude=" << amplitude << " coord=" << coord;
            check.observe(std::abs(warped - flat) / flat, os.str());
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        // Warping inside the disk plane changes the integrand pointwise but
        // not the integral; this exercises real cancellation in the
        // quadrature rather than an identical integrand.
        Checker check("in-plane warp conserves the integral (relative)", pick_tol(opts, 1e-6));
        const uint64_t caps = std::min<uint64_t>(pick_trials(opts, 20) / 4 + 1, 8);
        for (uint64_t i = 0; i < caps; ++i) {
            rng::Stream stream(opts.seed + 1, i);
            const BallPoint z = sample_chart_point(n, stream, 0.1, 0.9);
            const double amplitude = 0.1 * (2.0 * stream.next_double() - 1.0);
            const int coord = static_cast<int>(i % 4);
            const CappingMap cap = CappingMap::warped(
                CappingMap::flat_disk(n, z[0], z[1]), amplitude, coord);
            const double flat = flat_disk_closed_form(z[0], z[1], conv);
            const double warped = integrate_pullback(cap, opts.quad, conv, opts.workers);
            std::ostringstream os;
            os << describe_ball(z) << " amplitude=" << amplitude << " coord=" << coord;
            check.observe(std::abs(warped - flat) / flat, os.str());
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("orientation reversal negates the integral", pick_tol(opts, 1e-8));
        for (uint64_t i = 0; i < 5; ++i) {
            rng::Stream stream(opts.seed + 2, i);
            const BallPoint z = sample_chart_point(n, stream, 0.1, 0.9);
            const CappingMap cap = CappingMap::flat_disk(n, z[0], z[1]);
            const double forward = integrate_pullback(cap, opts.quad, conv, opts.workers);
            const double reversed =
                integrate_pullback(orientation_reversed(cap), opts.quad, conv, opts.workers);
            check.observe(std::abs(forward + reversed), describe_ball(z));
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("degenerate disk integrates to zero", 1e-15);
        const double v = integrate_pullback(
            CappingMap::flat_disk(n, Complex{0.0, 0.0}, Complex{0.0, 0.0}), opts.quad,
            conv, opts.workers);
        check.observe(std::abs(v), "flat_disk(0, 0)");
        out.push_back(check.result);
    }
    return out;
}

// ---------------------------------------------------------------------- orders

std::vector<PropertyResult> suite_orders(const VerifyOptions& opts) {
    std::vector<PropertyResult> out;
    const PeriodGroup period = period_generator(2, Convention::normalized);

    {
        Checker check("fixed order verdicts", 0.0);
        check.result.worst = -1.0;
        const auto expect_finite = [&](const ExactValue& v, uint64_t q,
                                       const std::string& label) {
            const OrderReport r = order_exact(v, period);
            if (r.verdict != OrderReport::Verdict::finite || *r.q != q) {
                check.fail(label);
            }
        };
        expect_finite(ExactValue::from_term(2, Rational(1, 4)), 2, "pi^2/4 should be q=2");
        expect_finite(ExactValue::from_term(2, Rational(-32, 15)), 15,
                      "-32/15 pi^2 should be q=15");
        expect_finite(ExactValue{}, 1, "zero class should be q=1");

        const ExactValue mixed({{3, Rational(97, 256)}, {2, Rational(1, 32)}});
        OrderReport r = order_exact(mixed, period);
        if (r.verdict != OrderReport::Verdict::infinite_by_irrationality ||
            *r.witness_power != 3) {
            check.fail("97/256 pi^3 + 1/32 pi^2 should be infinite with witness 3");
        }
        r = order_exact(ExactValue::from_term(3, Rational(3, 8)), period);
        if (r.verdict != OrderReport::Verdict::infinite_by_irrationality) {
            check.fail("3/8 pi^3 should be infinite");
        }
        r = order_numeric(ExactValue::from_term(2, Rational(1, 4)).to_real(), period,
                          1000000, 1e-9);
        if (r.verdict != OrderReport::Verdict::finite || *r.q != 2) {
            check.fail("numeric order of pi^2/4 should be 2");
        }
        r = order_numeric(ExactValue::from_term(3, Rational(3, 8)).to_real(), period,
                          1000000, 1e-9);
        if (r.verdict != OrderReport::Verdict::no_order_up_to) {
            check.fail("numeric order of 3/8 pi^3 should be open up to 1e6");
        }
        out.push_back(check.result);
    }
    {
        Checker check("numeric order agrees with exact order", 0.0);
        check.result.worst = -1.0;
        const uint64_t trials = pick_trials(opts, 1000);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed, i);
            const long long den = 1 + static_cast<long long>(stream.next_u64() % 10000);
            long long num = static_cast<long long>(stream.next_u64() % 20001) - 10000;
            if (num == 0) num = 1;
            const ExactValue v = ExactValue::from_term(2, Rational(num, den));
            const OrderReport exact = order_exact(v, period);
            const OrderReport numeric = order_numeric(v.to_real(), period, 100000, 1e-9);
            if (numeric.verdict != OrderReport::Verdict::finite || *numeric.q != *exact.q) {
                std::ostringstream os;
                os << "v = " << num << "/" << den << " pi^2";
                check.fail(os.str());
                break;
            }
        }
        out.push_back(check.result);
    }
    {
        Checker check("reported finite order is minimal", 0.0);
        check.result.worst = -1.0;
        const uint64_t trials = std::min<uint64_t>(pick_trials(opts, 1000), 2000);
        const double g = period.generator.to_real();
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 1, i);
            const long long den = 1 + static_cast<long long>(stream.next_u64() % 1000);
            long long num = static_cast<long long>(stream.next_u64() % 2001) - 1000;
            const ExactValue v = ExactValue::from_term(2, Rational(num, den));
            const OrderReport exact = order_exact(v, period);
            const double x = v.to_real() / g;
            for (uint64_t q = 1; q < *exact.q; ++q) {
                const double y = static_cast<double>(q) * x;
                if (std::abs(y - std::round(y)) <= 1e-9) {
                    std::ostringstream os;
                    os << "q=" << q << " beats reported " << *exact.q << " for " << num
                       << "/" << den << " pi^2";
                    check.fail(os.str());
                    break;
                }
            }
            if (!check.result.pass) break;
        }
        out.push_back(check.result);
    }
    {
        Checker check("reduce_mod is exactly idempotent", 0.0);
        check.result.worst = -1.0;
        const uint64_t trials = pick_trials(opts, 1000);
        for (uint64_t i = 0; i < trials; ++i) {
            rng::Stream stream(opts.seed + 2, i);
            const double v = (stream.next_double() - 0.5) * 200.0;
            const double once = reduce_mod(v, period);
            const double twice = reduce_mod(once, period);
            if (once != twice) {
                std::ostringstream os;
                os << "v=" << v;
                check.fail(os.str());
                break;
            }
        }
        out.push_back(check.result);
    }
    return out;
}

}  // namespace

std::vector<PropertyResult> verify_suite(const std::string& suite,
                                         const VerifyOptions& opts) {
    if (suite == "equivariance") return suite_equivariance(opts);
    if (suite == "lemma33") return suite_lemma33(opts);
    if (suite == "caps") return suite_caps(opts);
    if (suite == "orders") return suite_orders(opts);
    if (suite == "all") {
        std::vector<PropertyResult> all;
        for (const char* name : {"equivariance", "lemma33", "caps", "orders"}) {
            auto part = verify_suite(name, opts);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw std::invalid_argument(
        "unknown suite (expected equivariance, lemma33, caps, orders or all): " + suite);
}

bool all_pass(const std::vector<PropertyResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.pass; });
}

}  // namespace wmorph
