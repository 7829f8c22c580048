// Acceptance suite: every shipped guarantee, one pass/fail line each, with
// the tolerance pinned in code. Exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "wmorph/json_io.hpp"
#include "wmorph/morphism.hpp"
#include "wmorph/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = Clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start)
            .count();
    std::printf("%s  %s  [%.1fs]%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds,
                detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

// C1: 100 random chart points, numeric pullback at 32 nodes/axis vs closed
// form, relative error <= 1e-6, total runtime <= 60 s.
bool c1_pointwise_agreement(std::string& detail) {
    const auto start = Clock::now();
    wmorph::QuadratureSpec spec;  // 32 nodes per axis
    double worst = 0.0;
    for (uint64_t i = 0; i < 100; ++i) {
        wmorph::rng::Stream stream(1001, i);
        const int n = 2 + static_cast<int>(i % 2);
        const wmorph::Chart chart(n);
        wmorph::BallPoint z = wmorph::sample_ball(n, stream);
        while (std::norm(z[0]) + std::norm(z[1]) < 0.01 ||
               std::norm(z[0]) + std::norm(z[1]) > 0.99) {
            z = wmorph::sample_ball(n, stream);
        }
        const wmorph::ProjPoint p = wmorph::embed(chart, z);
        const double closed =
            wmorph::chart_area_closed_form(p, wmorph::Convention::normalized);
        const double numeric = wmorph::orbit_area_pointwise(
            wmorph::chart_inverse(chart, p), wmorph::Convention::normalized,
            wmorph::PointwiseMethod::numeric, spec);
        worst = std::max(worst, std::abs(numeric - closed) / closed);
    }
    const double seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start)
            .count();
    detail = "worst rel err " + wmorph::format_sig(worst, 3) + ", " +
             wmorph::format_sig(seconds, 3) + " s";
    return worst <= 1e-6 && seconds <= 60.0;
}

// C2: oracle triangle at n in {2, 3, 5}: MC (1e6 samples) within 4 stderr of
// the quadrature, stderr/value <= 1%, quadrature within 1e-10 relative of the
// derived closed form; runtime <= 2 min.
bool c2_oracle_triangle(std::string& detail) {
    const auto start = Clock::now();
    for (const int n : {2, 3, 5}) {
        wmorph::SamplerConfig cfg;
        cfg.n = n;
        cfg.samples = 1000000;
        cfg.seed = 42;
        const wmorph::MorphismEstimate mc = wmorph::average_mc(cfg);
        const double quad = wmorph::average_quadrature(n, wmorph::Convention::normalized);
        const double derived =
            wmorph::closed_form_average(n, wmorph::ClosedFormSource::derived,
                                        wmorph::Convention::normalized)
                .to_real();
        if (std::abs(mc.value - quad) > 4.0 * mc.std_error) {
            detail = "n=" + std::to_string(n) + ": |mc-quad| " +
                     wmorph::format_sig(std::abs(mc.value - quad), 3) + " > 4*stderr " +
                     wmorph::format_sig(4.0 * mc.std_error, 3);
            return false;
        }
        if (mc.std_error / mc.value > 0.01) {
            detail = "n=" + std::to_string(n) + ": stderr/value too large";
            return false;
        }
        if (std::abs(quad - derived) / std::abs(derived) > 1e-10) {
            detail = "n=" + std::to_string(n) + ": quadrature vs derived formula gap";
            return false;
        }
    }
    const double seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start)
            .count();
    detail = wmorph::format_sig(seconds, 3) + " s";
    return seconds <= 120.0;
}

// C3: published formulas as exact rationals, bit exact, singular at n = 4.
bool c3_paper_formula_fidelity(std::string& detail) {
    using wmorph::ClosedFormSource;
    using wmorph::Convention;
    using wmorph::ExactValue;
    using wmorph::Rational;
    if (wmorph::closed_form_average(3, ClosedFormSource::paper, Convention::normalized) !=
        ExactValue::from_term(2, Rational(-32, 15))) {
        detail = "n=3 value wrong";
        return false;
    }
    if (wmorph::closed_form_average(2, ClosedFormSource::paper, Convention::normalized) !=
        ExactValue({{3, Rational(97, 256)}, {2, Rational(1, 32)}})) {
        detail = "n=2 value wrong";
        return false;
    }
    try {
        wmorph::closed_form_average(4, ClosedFormSource::paper, Convention::normalized);
        detail = "n=4 did not raise SingularFormula";
        return false;
    } catch (const wmorph::SingularFormula&) {
    }
    return true;
}

// C4: the discrepancy report at n = 3 must flag the published value as
// inconsistent with both oracles.
bool c4_discrepancy_flag(std::string& detail) {
    wmorph::SamplerConfig cfg;
    cfg.samples = 100000;
    cfg.seed = 42;
    const wmorph::DiscrepancyReport rep = wmorph::discrepancy_report(3, cfg);
    bool flagged = false;
    for (const auto& verdict : rep.verdicts) {
        if (verdict == wmorph::kVerdictPaperInconsistent) flagged = true;
    }
    if (!flagged) {
        detail = "inconsistency flag missing";
        return false;
    }
    bool oracles_agree = false;
    for (const auto& verdict : rep.verdicts) {
        if (verdict == wmorph::kVerdictMcAgrees) oracles_agree = true;
    }
    if (!oracles_agree) {
        detail = "oracles unexpectedly disagree";
        return false;
    }
    return true;
}

// C5: order verdicts, exact and numeric.
bool c5_order_verdicts(std::string& detail) {
    using wmorph::ExactValue;
    using wmorph::OrderReport;
    using wmorph::Rational;
    const wmorph::PeriodGroup period =
        wmorph::period_generator(2, wmorph::Convention::normalized);

    OrderReport r = wmorph::order_exact(ExactValue::from_term(2, Rational(1, 4)), period);
    if (r.verdict != OrderReport::Verdict::finite || *r.q != 2) {
        detail = "pi^2/4 should have order 2";
        return false;
    }
    r = wmorph::order_exact(ExactValue::from_term(2, Rational(-32, 15)), period);
    if (r.verdict != OrderReport::Verdict::finite || *r.q != 15) {
        detail = "-32/15 pi^2 should have image order 15";
        return false;
    }
    r = wmorph::order_exact(ExactValue({{3, Rational(97, 256)}, {2, Rational(1, 32)}}),
                            period);
    if (r.verdict != OrderReport::Verdict::infinite_by_irrationality) {
        detail = "n=2 published value should be infinite";
        return false;
    }
    r = wmorph::order_exact(ExactValue::from_term(3, Rational(3, 8)), period);
    if (r.verdict != OrderReport::Verdict::infinite_by_irrationality) {
        detail = "3/8 pi^3 should be infinite";
        return false;
    }
    r = wmorph::order_numeric(kPiSq / 4.0, period, 1000000, 1e-9);
    if (r.verdict != OrderReport::Verdict::finite || *r.q != 2) {
        detail = "numeric order of pi^2/4 should be 2";
        return false;
    }
    r = wmorph::order_numeric(ExactValue::from_term(3, Rational(3, 8)).to_real(), period,
                              1000000, 1e-9);
    if (r.verdict != OrderReport::Verdict::no_order_up_to || *r.qmax != 1000000) {
        detail = "3/8 pi^3 should report no order up to 1e6";
        return false;
    }
    return true;
}

// C6: equivariance over 1e4 random (A, z), max projective deviation <= 1e-12.
bool c6_equivariance(std::string& detail) {
    wmorph::VerifyOptions opts;
    opts.trials = 10000;
    opts.tol = 1e-12;
    const auto results = wmorph::verify_suite("equivariance", opts);
    for (const auto& r : results) {
        if (r.name == "embed is SU(2)-equivariant") {
            detail = "max deviation " + wmorph::format_sig(r.worst, 3);
            return r.pass;
        }
    }
    detail = "property not found";
    return false;
}

// C7: 20 warped caps at n = 3, amplitude <= 0.2, relative deviation from the
// flat value <= 1e-6.
bool c7_cap_independence(std::string& detail) {
    wmorph::VerifyOptions opts;
    opts.trials = 20;
    opts.tol = 1e-6;
    const auto results = wmorph::verify_suite("caps", opts);
    for (const auto& r : results) {
        if (r.name.rfind("warped cap", 0) == 0) {
            detail = "worst rel deviation " + wmorph::format_sig(r.worst, 3);
            return r.pass;
        }
    }
    detail = "property not found";
    return false;
}

// C8: quartic scaling and orbit invariance, 1e3 cases each, deviation <= 1e-12.
bool c8_scaling_and_invariance(std::string& detail) {
    double worst = 0.0;
    for (uint64_t i = 0; i < 1000; ++i) {
        wmorph::rng::Stream stream(1008, i);
        const wmorph::BallPoint z = wmorph::sample_ball(3, stream);
        const double base =
            wmorph::orbit_area_pointwise(z, wmorph::Convention::normalized);

        const double lambda = 0.05 + 0.9 * stream.next_double();
        std::vector<wmorph::Complex> scaled = z.coords();
        scaled[0] *= lambda;
        scaled[1] *= lambda;
        const double lhs = wmorph::orbit_area_pointwise(wmorph::BallPoint(scaled),
                                                        wmorph::Convention::normalized);
        worst = std::max(worst, std::abs(lhs - lambda * lambda * lambda * lambda * base));

        const wmorph::SU2Element A = wmorph::haar_sample(stream);
        const double moved = wmorph::orbit_area_pointwise(wmorph::act_ball(A, z),
                                                          wmorph::Convention::normalized);
        worst = std::max(worst, std::abs(moved - base));
    }
    detail = "worst deviation " + wmorph::format_sig(worst, 3);
    return worst <= 1e-12;
}

// C9: two CLI runs with different worker counts produce identical bytes.
bool c9_cli_determinism(std::string& detail) {
#ifndef WMORPH_CLI_PATH
    detail = "CLI not built";
    return false;
#else
    const auto run = [](const std::string& args, std::string& output) {
        const std::string command = std::string(WMORPH_CLI_PATH) + " " + args;
        FILE* pipe = popen(command.c_str(), "r");
        if (!pipe) return -1;
        std::array<char, 4096> buffer{};
        size_t got = 0;
        while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
            output.append(buffer.data(), got);
        }
        return WEXITSTATUS(pclose(pipe));
    };
    const std::string args = "average --n 2 --samples 100000 --seed 42 --format json";
    std::string one, four;
    if (run(args + " --threads 1", one) != 0 || run(args + " --threads 4", four) != 0) {
        detail = "CLI run failed";
        return false;
    }
    if (one != four) {
        detail = "outputs differ between worker counts";
        return false;
    }
    detail = std::to_string(one.size()) + " identical bytes";
    return true;
#endif
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion("C1 pointwise chart-formula agreement (100 points, <=1e-6 rel, <=60s)",
              c1_pointwise_agreement);
    criterion("C2 oracle triangle at n in {2,3,5} (mc/quadrature/derived)",
              c2_oracle_triangle);
    criterion("C3 published formula fidelity (bit-exact rationals, singular n=4)",
              c3_paper_formula_fidelity);
    criterion("C4 discrepancy detection flags the published n=3 value",
              c4_discrepancy_flag);
    criterion("C5 order verdicts (exact and numeric)", c5_order_verdicts);
    criterion("C6 equivariance, 1e4 trials, <=1e-12", c6_equivariance);
    criterion("C7 cap independence, 20 warped caps, <=1e-6 rel", c7_cap_independence);
    criterion("C8 quartic scaling and orbit invariance, <=1e-12",
              c8_scaling_and_invariance);
    criterion("C9 CLI byte determinism across worker counts", c9_cli_determinism);
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
