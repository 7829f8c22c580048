#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmorph/arith.hpp"
#include "wmorph/exact.hpp"
#include "wmorph/forms.hpp"
#include "wmorph/projective.hpp"

namespace wmorph {

struct SamplerConfig {
    int n = 2;
    uint64_t samples = 1000000;
    uint64_t seed = 42;
    Convention convention = Convention::normalized;
    int workers = 0;  // 0 = hardware count; never affects the result
};

// Monte-Carlo value of the averaged morphism, with its reduction modulo the
// period group. Reproducible from (seed, samples) alone.
struct MorphismEstimate {
    double value;
    double std_error;
    uint64_t samples;
    uint64_t seed;
    Convention convention;
    double reduced;     // value mod period, in [0, period)
    ExactValue period;  // generator of the period group
};

// One SU(2)-orbit point; the set over all A is the orbit 3-sphere (or the
// fixed point when (z_1, z_2) = (0, 0)).
BallPoint orbit_point(const SU2Element& A, const BallPoint& z);

enum class PointwiseMethod { closed_form, numeric };

// Capped area of the SU(2)-orbit sphere through z: the closed form
// (pi^2/2)(|z_1|^2+|z_2|^2)^2, or the numeric pullback over the flat disk cap.
double orbit_area_pointwise(const BallPoint& z, Convention conv,
                            PointwiseMethod method = PointwiseMethod::closed_form,
                            const QuadratureSpec& spec = {}, int workers = 0);

// The same quantity in homogeneous coordinates, defined off the hypersurface:
//   (pi^2/2) * ((|w_1|^2 + |w_2|^2) / sum_j |w_j|^2)^2,
// doubled under the raw convention. Throws HypersurfacePoint at w_{n+1} = 0.
double chart_area_closed_form(const ProjPoint& p, Convention conv);

// Average of the pointwise closed form over B^{2n}(1), Monte Carlo with
// uniform ball samples. Deterministic for fixed (seed, samples) regardless of
// worker count: per-sample counter-based streams and a fixed pairwise
// reduction tree.
MorphismEstimate average_mc(const SamplerConfig& cfg);

// Same pipeline with the integrand replaced by the constant 1; the mean is
// exactly 1 and the standard error exactly 0. Normalization self-test hook.
MorphismEstimate average_mc_selftest(const SamplerConfig& cfg);

// Radial reduction of the ball average: value = factor(conv) * E with
//   E = 2n(n-1) * int_0^1 rho^7 (1 - rho^2)^(n-2) drho
// by adaptive quadrature to 1e-12 absolute. E is the mean of
// (|z_1|^2+|z_2|^2)^2 over the unit 2n-ball; factor is pi^2/2 or pi^2.
double average_quadrature(int n, Convention conv);

enum class ClosedFormSource { paper, derived };

// Exact closed forms for the averaged morphism.
//   paper:   97/256 pi^3 + 1/32 pi^2 at n = 2, and
//            96 / (n^2 (n^3 - 4n^2 - 4n + 16)) pi^(n-1) for n >= 3; the
//            denominator factors as n^2 (n-4)(n^2-4), so n = 4 throws
//            SingularFormula.
//   derived: 3 pi^2 / ((n+1)(n+2)), confirmed against average_quadrature to
//            1e-10 relative over n = 2..8 (the quadrature is the oracle).
// Raw convention doubles either value.
ExactValue closed_form_average(int n, ClosedFormSource source, Convention conv);

// Cross-validation record: Monte Carlo and quadrature oracles next to both
// closed forms, with gaps and verdict strings at the stated tolerances.
struct DiscrepancyReport {
    int n;
    Convention convention;
    MorphismEstimate mc;
    double quadrature;

    bool paper_singular;
    std::optional<ExactValue> paper_exact;
    std::optional<double> paper_real;
    ExactValue derived_exact;
    double derived_real;

    double mc_quadrature_gap;               // absolute
    double derived_rel_gap;                 // vs quadrature
    std::optional<double> paper_abs_gap;    // vs quadrature
    std::optional<double> paper_rel_gap;

    double reduced_value;
    ExactValue period;

    double selftest_value;  // constant-1 channel mean
    double selftest_gap;    // selftest_value - 1, exactly 0 when healthy

    std::vector<std::string> verdicts;
};

// Verdict strings, also used by the acceptance suite.
inline constexpr const char* kVerdictMcAgrees =
    "mc agrees with quadrature within 4 standard errors";
inline constexpr const char* kVerdictMcDisagrees =
    "mc value inconsistent with quadrature (gap exceeds 4 standard errors)";
inline constexpr const char* kVerdictDerivedMatches =
    "derived formula matches quadrature to 1e-10 relative";
inline constexpr const char* kVerdictDerivedMismatch =
    "derived formula inconsistent with quadrature";
inline constexpr const char* kVerdictPaperConsistent =
    "paper value consistent with oracles";
inline constexpr const char* kVerdictPaperInconsistent =
    "paper value inconsistent with oracles";
inline constexpr const char* kVerdictPaperNegative =
    "paper value negative although the integrand is nonnegative";
inline constexpr const char* kVerdictPaperSingular = "paper formula singular";
inline constexpr const char* kVerdictSelfTestExact =
    "constant-1 self-test channel exact";
inline constexpr const char* kVerdictSelfTestBroken =
    "constant-1 self-test channel broken";

DiscrepancyReport discrepancy_report(int n, const SamplerConfig& cfg);

}  // namespace wmorph
