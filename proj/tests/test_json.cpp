#include <doctest.h>

#include <string>
#include <vector>

#include "test_helpers.hpp"
#include "wmorph/json_io.hpp"

using wmorph::Complex;
using wmorph::ExactValue;
using wmorph::Json;
using wmorph::Rational;

TEST_CASE("complex scalars are [re, im] pairs") {
    const Json j = wmorph::complex_to_json({1.5, -2.25});
    CHECK(j.dump() == "[1.5,-2.25]");
    CHECK(wmorph::complex_from_json(j) == Complex{1.5, -2.25});
    CHECK_THROWS_AS(wmorph::complex_from_json(Json::array({1.0})), std::invalid_argument);
}

TEST_CASE("exact values serialize with ascending powers") {
    const ExactValue v({{3, Rational(97, 256)}, {2, Rational(1, 32)}});
    const Json j = wmorph::exact_to_json(v);
    CHECK(j.dump() == R"({"terms":[[2,"1/32"],[3,"97/256"]]})");
    CHECK(wmorph::exact_from_json(j) == v);
    CHECK(wmorph::exact_to_json(ExactValue{}).dump() == R"({"terms":[]})");
}

TEST_CASE("points round trip through JSON") {
    const wmorph::ProjPoint p = pp({{1, 2}, {0, 0}, {-0.5, 0.25}});
    CHECK(wmorph::proj_equal(wmorph::proj_from_json(wmorph::proj_to_json(p)), p, 0.0));
    const wmorph::BallPoint z = bp({{0.25, -0.125}, {0, 0.5}});
    const wmorph::BallPoint z2 = wmorph::ball_from_json(wmorph::ball_to_json(z));
    for (int j = 0; j < 2; ++j) REQUIRE(z2[j] == z[j]);
}

TEST_CASE("order reports carry the schema fields") {
    CHECK(wmorph::order_report_to_json(wmorph::OrderReport::finite(15)).dump() ==
          R"({"verdict":"finite","q":15})");
    CHECK(wmorph::order_report_to_json(wmorph::OrderReport::infinite(3)).dump() ==
          R"({"verdict":"infinite_by_irrationality","witness_power":3})");
    const Json open = wmorph::order_report_to_json(
        wmorph::OrderReport::no_order(1000000, 1e-9));
    CHECK(open["verdict"] == "no_order_up_to");
    CHECK(open["qmax"] == 1000000);
    CHECK(open["tol"] == 1e-9);
}

TEST_CASE("complex list flag parsing") {
    const auto one = wmorph::parse_complex_list("1,0;1,0;1,0");
    REQUIRE(one.size() == 3);
    CHECK(one[0] == Complex{1, 0});
    const auto neg = wmorph::parse_complex_list("0.5,-0.25;-1e-2,3");
    CHECK(neg[0] == Complex{0.5, -0.25});
    CHECK(neg[1] == Complex{-0.01, 3});
    CHECK_THROWS_AS(wmorph::parse_complex_list("1;2"), std::invalid_argument);
    CHECK_THROWS_AS(wmorph::parse_complex_list("x,y"), std::invalid_argument);
}

TEST_CASE("exact flag parsing") {
    CHECK(wmorph::parse_exact_flag("2:1/4") == ExactValue::from_term(2, Rational(1, 4)));
    CHECK(wmorph::parse_exact_flag("3:97/256;2:1/32") ==
          ExactValue({{3, Rational(97, 256)}, {2, Rational(1, 32)}}));
    CHECK(wmorph::parse_exact_flag("2:-32/15") ==
          ExactValue::from_term(2, Rational(-32, 15)));
    CHECK_THROWS_AS(wmorph::parse_exact_flag("nope"), std::invalid_argument);
}

TEST_CASE("discrepancy report JSON carries the schema fields in order") {
    wmorph::SamplerConfig cfg;
    cfg.samples = 5000;
    cfg.seed = 3;
    const auto rep = wmorph::discrepancy_report(3, cfg);
    const Json j = wmorph::discrepancy_to_json(rep);
    const std::vector<std::string> expected_prefix = {
        "n", "convention", "mc", "quadrature", "paper", "derived", "reduced", "verdicts"};
    size_t i = 0;
    for (auto it = j.begin(); it != j.end() && i < expected_prefix.size(); ++it, ++i) {
        REQUIRE(it.key() == expected_prefix[i]);
    }
    CHECK(i == expected_prefix.size());
    CHECK(j["mc"].contains("value"));
    CHECK(j["mc"].contains("stderr"));
    CHECK(j["mc"].contains("samples"));
    CHECK(j["mc"].contains("seed"));
    CHECK(j["paper"].contains("exact"));
    CHECK(j["reduced"].contains("period"));

    const auto singular = wmorph::discrepancy_report(4, cfg);
    CHECK(wmorph::discrepancy_to_json(singular)["paper"] == "singular");

    // CSV flattening has matching column names
    const std::string header = wmorph::discrepancy_csv_header();
    CHECK(header.find("mc.value") != std::string::npos);
    CHECK(header.find("paper.exact") != std::string::npos);
    CHECK(header.find("reduced.period") != std::string::npos);
    const std::string row = wmorph::discrepancy_csv_row(rep);
    CHECK(row.rfind("3,normalized,", 0) == 0);
    CHECK(row.find("-32/15 pi^2") != std::string::npos);
    CHECK(wmorph::discrepancy_csv_row(singular).find("singular") != std::string::npos);
}
