#include "wmorph/exact.hpp"

#include <numbers>
#include <stdexcept>

namespace wmorph {

Rational rational_from_string(std::string_view s) {
    const auto strip = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    s = strip(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    try {
        const auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(s)));
        }
        BigInt num{std::string(strip(s.substr(0, slash)))};
        BigInt den{std::string(strip(s.substr(slash + 1)))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + std::string(s));
    }
}

std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

ExactValue::ExactValue(std::map<int, Rational> terms) {
    for (auto& [power, coeff] : terms) {
        if (power < 0) throw std::invalid_argument("negative pi power in ExactValue");
        if (coeff != 0) terms_.emplace(power, std::move(coeff));
    }
}

ExactValue ExactValue::from_term(int power, Rational coefficient) {
    ExactValue v;
    if (power < 0) throw std::invalid_argument("negative pi power in ExactValue");
    if (coefficient != 0) v.terms_.emplace(power, std::move(coefficient));
    return v;
}

Rational ExactValue::coefficient(int power) const {
    const auto it = terms_.find(power);
    return it == terms_.end() ? Rational(0) : it->second;
}

ExactValue ExactValue::operator+(const ExactValue& other) const {
    ExactValue out = *this;
    for (const auto& [power, coeff] : other.terms_) {
        auto [it, inserted] = out.terms_.emplace(power, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

ExactValue ExactValue::operator-() const {
    ExactValue out = *this;
    for (auto& [power, coeff] : out.terms_) coeff = -coeff;
    return out;
}

ExactValue ExactValue::operator-(const ExactValue& other) const {
    return *this + (-other);
}

ExactValue ExactValue::scaled(const Rational& factor) const {
    if (factor == 0) return {};
    ExactValue out = *this;
    for (auto& [power, coeff] : out.terms_) coeff *= factor;
    return out;
}

double ExactValue::to_real() const {
    double acc = 0.0;
    double pi_pow = 1.0;
    int current = 0;
    for (const auto& [power, coeff] : terms_) {  // ascending powers
        while (current < power) {
            pi_pow *= std::numbers::pi;
            ++current;
        }
        acc += coeff.convert_to<double>() * pi_pow;
    }
    return acc;
}

std::string ExactValue::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [power, coeff] = *it;
        std::string piece = rational_to_string(coeff < 0 ? Rational(-coeff) : coeff);
        if (power == 1) {
            piece += " pi";
        } else if (power > 1) {
            piece += " pi^" + std::to_string(power);
        }
        if (out.empty()) {
            out = (coeff < 0 ? "-" : "") + piece;
        } else {
            out += (coeff < 0 ? " - " : " + ") + piece;
        }
    }
    return out;
}

}  // namespace wmorph
