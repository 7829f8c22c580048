#include "wmorph/arith.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wmorph {

OrderReport OrderReport::finite(uint64_t q) {
    OrderReport r{Verdict::finite, q, std::nullopt, std::nullopt, std::nullopt};
    return r;
}

OrderReport OrderReport::infinite(int witness_power) {
    OrderReport r{Verdict::infinite_by_irrationality, std::nullopt, witness_power,
                  std::nullopt, std::nullopt};
    return r;
}

OrderReport OrderReport::no_order(uint64_t qmax, double tol) {
    OrderReport r{Verdict::no_order_up_to, std::nullopt, std::nullopt, qmax, tol};
    return r;
}

const char* to_string(OrderReport::Verdict v) {
    switch (v) {
        case OrderReport::Verdict::finite:
            return "finite";
        case OrderReport::Verdict::infinite_by_irrationality:
            return "infinite_by_irrationality";
        case OrderReport::Verdict::no_order_up_to:
            return "no_order_up_to";
    }
    return "unknown";
}

PeriodGroup period_generator(int n, Convention conv) {
    if (n < 2) throw std::invalid_argument("period_generator: need n >= 2");
    // <omega^2, [CP^2]> = pi^2/2 and [CP^2] generates H_4 for every n >= 2.
    const Rational c = conv == Convention::normalized ? Rational(1, 2) : Rational(1);
    return {2, n, ExactValue::from_term(2, c)};
}

double reduce_mod(double v, const PeriodGroup& period) {
    const double g = period.generator.to_real();
    if (!(g > 0.0)) throw ZeroPeriod("reduce_mod: period generator must be positive");
    double r = std::fmod(v, g);  // exact for IEEE doubles
    if (r < 0.0) r += g;
    if (r >= g) r = 0.0;
    return r;
}

OrderReport order_exact(const ExactValue& v, const PeriodGroup& period) {
    if (period.generator.is_zero()) {
        throw ZeroPeriod("order_exact: zero period generator");
    }
    const auto& gen_terms = period.generator.terms();
    if (gen_terms.size() != 1 || gen_terms.begin()->first != 2 ||
        gen_terms.begin()->second <= 0) {
        throw std::invalid_argument("order_exact: generator must be c*pi^2 with c > 0");
    }
    const Rational& c = gen_terms.begin()->second;

    for (const auto& [power, coeff] : v.terms()) {
        if (power != 2 && coeff != 0) {
            // v/generator carries a nonzero rational multiple of pi^(m-2) with
            // m != 2: irrational by transcendence of pi, so no finite q works.
            return OrderReport::infinite(power);
        }
    }
    const Rational ratio = v.coefficient(2) / c;
    const BigInt den = denominator(ratio);  // canonical, > 0; 1 for the zero class
    if (den > BigInt(std::numeric_limits<uint64_t>::max())) {
        throw std::overflow_error("order_exact: image order exceeds uint64 range");
    }
    return OrderReport::finite(den.convert_to<uint64_t>());
}

OrderReport order_numeric(double v, const PeriodGroup& period, uint64_t qmax,
                          double tol) {
    if (qmax < 1) throw std::invalid_argument("order_numeric: need qmax >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("order_numeric: need tol > 0");
    const double g = period.generator.to_real();
    if (!(g > 0.0)) throw ZeroPeriod("order_numeric: period generator must be positive");

    const long double x = static_cast<long double>(v) / static_cast<long double>(g);
    long double frac = x - std::floor(x);  // in [0, 1)

    // Convergent recurrences for x mod 1. The smallest q with
    // dist(qx, Z) <= tol is always a convergent denominator (best
    // approximations of the second kind), so scanning convergents in order of
    // q yields the minimal one. e_i = q_i x - p_i is tracked directly to keep
    // full precision at large q.
    long double e_prev = -1.0L;  // q=0, p=1
    long double e_curr = frac;   // q=1, p=floor(x)
    uint64_t q_prev = 0, q_curr = 1;
    long double y = frac;
    for (int iter = 0; iter < 128; ++iter) {
        if (q_curr > qmax) break;
        if (std::abs(static_cast<double>(e_curr)) <= tol) {
            return OrderReport::finite(q_curr);
        }
        if (std::abs(e_curr) < 1e-18L || y == 0.0L) break;  // exhausted precision
        y = 1.0L / y;
        const long double a_ld = std::floor(y);
        if (a_ld > 1e18L) break;
        const uint64_t a = static_cast<uint64_t>(a_ld);
        y -= a_ld;
        if (a > (std::numeric_limits<uint64_t>::max() - q_prev) / q_curr) break;
        const uint64_t q_next = a * q_curr + q_prev;
        const long double e_next = a_ld * e_curr + e_prev;
        q_prev = q_curr;
        q_curr = q_next;
        e_prev = e_curr;
        e_curr = e_next;
    }
    return OrderReport::no_order(qmax, tol);
}

}  // namespace wmorph
