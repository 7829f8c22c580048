#include "wmorph/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace wmorph {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex scalar must be a two-element array [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json exact_to_json(const ExactValue& v) {
    Json terms = Json::array();
    for (const auto& [power, coeff] : v.terms()) {  // ascending powers
        terms.push_back(Json::array({power, rational_to_string(coeff)}));
    }
    return Json{{"terms", std::move(terms)}};
}

ExactValue exact_from_json(const Json& j) {
    if (!j.contains("terms")) throw std::invalid_argument("ExactValue JSON needs \"terms\"");
    std::map<int, Rational> terms;
    for (const auto& entry : j.at("terms")) {
        if (!entry.is_array() || entry.size() != 2) {
            throw std::invalid_argument("ExactValue term must be [power, \"num/den\"]");
        }
        terms.emplace(entry[0].get<int>(),
                      rational_from_string(entry[1].get<std::string>()));
    }
    return ExactValue(std::move(terms));
}

Json proj_to_json(const ProjPoint& p) {
    Json arr = Json::array();
    for (const auto& c : p.coords()) arr.push_back(complex_to_json(c));
    return arr;
}

Json ball_to_json(const BallPoint& z) {
    Json arr = Json::array();
    for (const auto& c : z.coords()) arr.push_back(complex_to_json(c));
    return arr;
}

ProjPoint proj_from_json(const Json& j) {
    std::vector<Complex> w;
    for (const auto& entry : j) w.push_back(complex_from_json(entry));
    return ProjPoint(std::move(w));
}

BallPoint ball_from_json(const Json& j) {
    std::vector<Complex> z;
    for (const auto& entry : j) z.push_back(complex_from_json(entry));
    return BallPoint(std::move(z));
}

Json estimate_to_json(const MorphismEstimate& e) {
    return Json{{"value", e.value},
                {"stderr", e.std_error},
                {"samples", e.samples},
                {"seed", e.seed},
                {"convention", to_string(e.convention)},
                {"reduced", e.reduced},
                {"period", exact_to_json(e.period)}};
}

Json order_report_to_json(const OrderReport& r) {
    Json j{{"verdict", to_string(r.verdict)}};
    if (r.q) j["q"] = *r.q;
    if (r.witness_power) j["witness_power"] = *r.witness_power;
    if (r.qmax) j["qmax"] = *r.qmax;
    if (r.tol) j["tol"] = *r.tol;
    return j;
}

Json discrepancy_to_json(const DiscrepancyReport& r) {
    Json j{{"n", r.n}, {"convention", to_string(r.convention)}};
    j["mc"] = Json{{"value", r.mc.value},
                   {"stderr", r.mc.std_error},
                   {"samples", r.mc.samples},
                   {"seed", r.mc.seed}};
    j["quadrature"] = r.quadrature;
    if (r.paper_singular) {
        j["paper"] = "singular";
    } else {
        j["paper"] = Json{{"exact", exact_to_json(*r.paper_exact)}, {"real", *r.paper_real}};
    }
    j["derived"] =
        Json{{"exact", exact_to_json(r.derived_exact)}, {"real", r.derived_real}};
    j["reduced"] = Json{{"value", r.reduced_value}, {"period", exact_to_json(r.period)}};
    j["verdicts"] = r.verdicts;
    j["gaps"] = Json{{"mc_quadrature", r.mc_quadrature_gap},
                     {"derived_rel", r.derived_rel_gap}};
    if (r.paper_abs_gap) {
        j["gaps"]["paper_abs"] = *r.paper_abs_gap;
        j["gaps"]["paper_rel"] = *r.paper_rel_gap;
    }
    j["selftest"] = Json{{"value", r.selftest_value}, {"gap", r.selftest_gap}};
    return j;
}

namespace {

std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string full_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string discrepancy_csv_header() {
    return "n,convention,mc.value,mc.stderr,mc.samples,mc.seed,quadrature,"
           "paper.exact,paper.real,derived.exact,derived.real,"
           "reduced.value,reduced.period,verdicts";
}

std::string discrepancy_csv_row(const DiscrepancyReport& r) {
    std::ostringstream os;
    os << r.n << ',' << to_string(r.convention) << ',' << full_double(r.mc.value) << ','
       << full_double(r.mc.std_error) << ',' << r.mc.samples << ',' << r.mc.seed << ','
       << full_double(r.quadrature) << ',';
    if (r.paper_singular) {
        os << csv_escape("singular") << ',' << "";
    } else {
        os << csv_escape(r.paper_exact->to_string()) << ',' << full_double(*r.paper_real);
    }
    os << ',' << csv_escape(r.derived_exact.to_string()) << ','
       << full_double(r.derived_real) << ',' << full_double(r.reduced_value) << ','
       << csv_escape(r.period.to_string()) << ',';
    std::string verdicts;
    for (size_t i = 0; i < r.verdicts.size(); ++i) {
        if (i > 0) verdicts += " | ";
        verdicts += r.verdicts[i];
    }
    os << csv_escape(verdicts);
    return os.str();
}

std::vector<Complex> parse_complex_list(std::string_view s) {
    std::vector<Complex> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t semi = s.find(';', pos);
        const std::string_view item =
            s.substr(pos, semi == std::string_view::npos ? std::string_view::npos
                                                         : semi - pos);
        const size_t comma = item.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("complex list entries must look like \"re,im\"");
        }
        const auto parse_double = [](std::string_view v) {
            double x = 0.0;
            const auto* begin = v.data();
            const auto* end = v.data() + v.size();
            while (begin < end && *begin == ' ') ++begin;
            const auto res = std::from_chars(begin, end, x);
            if (res.ec != std::errc{}) {
                throw std::invalid_argument("malformed number in complex list: " +
                                            std::string(v));
            }
            return x;
        };
        out.emplace_back(parse_double(item.substr(0, comma)),
                         parse_double(item.substr(comma + 1)));
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    return out;
}

ExactValue parse_exact_flag(std::string_view s) {
    std::map<int, Rational> terms;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t semi = s.find(';', pos);
        const std::string_view item =
            s.substr(pos, semi == std::string_view::npos ? std::string_view::npos
                                                         : semi - pos);
        const size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument(
                "exact-value entries must look like \"power:num/den\"");
        }
        const int power = std::stoi(std::string(item.substr(0, colon)));
        const Rational coeff = rational_from_string(item.substr(colon + 1));
        terms[power] += coeff;
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    return ExactValue(std::move(terms));
}

std::string format_sig(double x, int significant) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, x);
    return buf;
}

}  // namespace wmorph
