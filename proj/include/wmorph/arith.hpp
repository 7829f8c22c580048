#pragma once

#include <cstdint>
#include <optional>

#include "wmorph/exact.hpp"
#include "wmorph/geometry.hpp"

namespace wmorph {

// Image of the pairing <omega^k, H_{2k}>: a single generator. For the shipped
// case k = 2 on CP^n (n >= 2) the generator is pi^2/2 (normalized) or pi^2
// (raw).
struct PeriodGroup {
    int k;
    int n;
    ExactValue generator;
};

struct OrderReport {
    enum class Verdict { finite, infinite_by_irrationality, no_order_up_to };

    Verdict verdict;
    std::optional<uint64_t> q;              // finite
    std::optional<int> witness_power;       // infinite_by_irrationality
    std::optional<uint64_t> qmax;           // no_order_up_to
    std::optional<double> tol;              // no_order_up_to

    static OrderReport finite(uint64_t q);
    static OrderReport infinite(int witness_power);
    static OrderReport no_order(uint64_t qmax, double tol);
};

const char* to_string(OrderReport::Verdict v);

PeriodGroup period_generator(int n, Convention conv);

// Representative of v in [0, g) where g is the generator's real value;
// v - result is an integer multiple of g. Exactly idempotent.
double reduce_mod(double v, const PeriodGroup& period);

// Exact order analysis of the class of v in R / <generator>. With the
// generator c pi^2, any nonzero coefficient at a power m != 2 makes
// v / generator a nonzero rational combination of distinct powers of pi plus
// a rational, which is irrational (pi is transcendental): infinite order,
// witnessed by m. Otherwise the ratio is rational and the image order is its
// lowest-terms denominator.
OrderReport order_exact(const ExactValue& v, const PeriodGroup& period);

// Floating-point companion: scans continued-fraction convergents of
// x = v/generator mod 1 for the smallest q <= qmax with dist(q x, Z) <= tol.
// Can certify finite order up to tolerance, never infinitude.
OrderReport order_numeric(double v, const PeriodGroup& period, uint64_t qmax,
                          double tol);

}  // namespace wmorph
