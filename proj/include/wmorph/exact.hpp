#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <string_view>

namespace wmorph {

using BigInt = boost::multiprecision::cpp_int;

// Canonical rational: gcd(num, den) = 1, den > 0. Arbitrary precision so the
// closed-form denominators stay exact at every n.
using Rational = boost::multiprecision::cpp_rational;

// Parses "num/den" or a plain integer; throws std::invalid_argument on a zero
// denominator or malformed input.
Rational rational_from_string(std::string_view s);

// Always "num/den", e.g. "-32/15", "3/1".
std::string rational_to_string(const Rational& r);

// Finite sum  sum_m c_m pi^m  with exact rational coefficients and integer
// powers m >= 0. Zero coefficients are never stored, so the empty term map is
// the unique representation of zero and equality is structural.
class ExactValue {
public:
    ExactValue() = default;
    explicit ExactValue(std::map<int, Rational> terms);
    static ExactValue from_term(int power, Rational coefficient);

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(int power) const;

    ExactValue operator+(const ExactValue& other) const;
    ExactValue operator-() const;
    ExactValue operator-(const ExactValue& other) const;
    ExactValue scaled(const Rational& factor) const;
    bool operator==(const ExactValue& other) const = default;

    double to_real() const;
    std::string to_string() const;  // "97/256 pi^3 + 1/32 pi^2", "0" when empty

private:
    std::map<int, Rational> terms_;
};

inline double exact_to_real(const ExactValue& v) { return v.to_real(); }
inline ExactValue exact_add(const ExactValue& u, const ExactValue& v) { return u + v; }

}  // namespace wmorph
