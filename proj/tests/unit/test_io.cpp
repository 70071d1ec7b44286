#include <catch2/catch_amalgamated.hpp>

#include "frobforge/io/json.hpp"
#include "frobforge/quantum/p2.hpp"
#include "frobforge/singularity/an.hpp"

using namespace frobforge;

TEST_CASE("chart JSON round trip") {
    for (const FMChart& c : {an::build_an_chart(3), qh::build_p2_chart(4).chart}) {
        const io::json j = io::to_json(c);
        const FMChart back = io::chart_from_json(io::parse(j.dump()));
        CHECK(io::to_json(back).dump() == j.dump());
        CHECK(back.potential() == c.potential());
        CHECK(back.eta() == c.eta());
        CHECK(back.charge() == c.charge());
    }
}

TEST_CASE("rationals and series") {
    CHECK(io::rational_from_json(io::json("-3/6"), "x") == Rational(-1, 2));
    CHECK(io::rational_from_json(io::json(7), "x") == Rational(7));
    CHECK_THROWS_AS(io::rational_from_json(io::json(0.5), "x"), SchemaError);

    const auto s = qh::build_p2_chart(3).chart.potential();
    const io::json j = io::to_json(s);
    REQUIRE(j.is_object());
    CHECK(j["truncation"] == 3);
    const ExpSeries back = io::expseries_from_json(j, 3, "F");
    CHECK(back == s);
    CHECK(back.truncated() == s.truncated());
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(io::parse("{\"n\": 2,"), ParseError);
    io::json j = io::to_json(an::build_an_chart(2));
    j.erase("eta");
    CHECK_THROWS_AS(io::chart_from_json(j), SchemaError);
    j = io::to_json(an::build_an_chart(2));
    j["unity_index"] = 5;
    CHECK_THROWS_AS(io::chart_from_json(j), SchemaError);
    j = io::to_json(an::build_an_chart(2));
    j["potential"][0]["exps"] = io::json::array({1});
    CHECK_THROWS_AS(io::chart_from_json(j), SchemaError);
    CHECK_THROWS_AS(io::parse_double(io::json("1.5x"), "v"), SchemaError);
    CHECK(io::complex_from_json(io::to_json(std::complex<double>(0.1, -2.5)), "z") == std::complex<double>(0.1, -2.5));
}

TEST_CASE("complex text input") {
    using C = std::complex<double>;
    CHECK(io::parse_complex("1.5") == C(1.5, 0));
    CHECK(io::parse_complex("-2i") == C(0, -2));
    CHECK(io::parse_complex("0.3 - 0.1i") == C(0.3, -0.1));
    CHECK(io::parse_complex("1e-3+2e1i") == C(1e-3, 20));
    CHECK(io::parse_complex("-i") == C(0, -1));
    CHECK(io::parse_complex("2+i") == C(2, 1));
    CHECK_THROWS_AS(io::parse_complex("1+2"), ParseError);
    CHECK_THROWS_AS(io::parse_complex("1i+2i"), ParseError);
    CHECK_THROWS_AS(io::parse_complex("x"), ParseError);
    CHECK(io::parse_complex_list("1, 2+i,3i") == std::vector<C>{C(1, 0), C(2, 1), C(0, 3)});
}

TEST_CASE("exact matrices use integers where possible") {
    RationalMatrix m(1, 2, Rational(0));
    m(0, 0) = 3;
    m(0, 1) = Rational(-1, 2);
    CHECK(io::to_json(m).dump() == "[[3,\"-1/2\"]]");
    CHECK(io::matrix_from_json(io::to_json(m), "m") == m);
}
