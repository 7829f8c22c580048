#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "wmorph/arith.hpp"
#include "wmorph/exact.hpp"
#include "wmorph/geometry.hpp"
#include "wmorph/morphism.hpp"

namespace wmorph {

// Insertion-ordered JSON keeps report bytes deterministic.
using Json = nlohmann::ordered_json;

// Complex scalars are two-element arrays [re, im] in all JSON interchange.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

// {"terms": [[m, "num/den"], ...]} with powers ascending.
Json exact_to_json(const ExactValue& v);
ExactValue exact_from_json(const Json& j);

Json proj_to_json(const ProjPoint& p);
Json ball_to_json(const BallPoint& z);
ProjPoint proj_from_json(const Json& j);
BallPoint ball_from_json(const Json& j);

Json estimate_to_json(const MorphismEstimate& e);
Json order_report_to_json(const OrderReport& r);
Json discrepancy_to_json(const DiscrepancyReport& r);

// CSV flattening with dotted column names matching the JSON fields.
std::string discrepancy_csv_header();
std::string discrepancy_csv_row(const DiscrepancyReport& r);

// CLI flag syntaxes.
// Complex list: "re,im;re,im;..."
std::vector<Complex> parse_complex_list(std::string_view s);
// Exact value: "power:num/den;power:num/den", e.g. "3:97/256;2:1/32".
ExactValue parse_exact_flag(std::string_view s);

std::string format_sig(double x, int significant = 12);

}  // namespace wmorph
