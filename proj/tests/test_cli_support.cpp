#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "rgsrate/config.h"
#include "rgsrate/table.h"

using namespace rgsrate;

TEST_SUITE("config") {

TEST_CASE("parse key-value text") {
    const kv_pairs kv = parse_config_text(
        "# comment line\n"
        "\n"
        "command = optimize\n"
        "  L = 1000km  \n"
        "eta_c=0.95\n"
        "eta_c = 0.9\n");
    REQUIRE(kv.size() == 4);
    CHECK(kv[0] == std::pair<std::string, std::string>{"command", "optimize"});
    CHECK(kv[1] == std::pair<std::string, std::string>{"L", "1000km"});
    CHECK(kv[2] == std::pair<std::string, std::string>{"eta_c", "0.95"});
    // duplicates stay in order; appliers let the later one win
    CHECK(kv[3] == std::pair<std::string, std::string>{"eta_c", "0.9"});
}

TEST_CASE("parse errors carry the line number") {
    CHECK_THROWS_AS(parse_config_text("a = 1\nnot a pair\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("= value\n"), std::invalid_argument);
    try {
        parse_config_text("ok = 1\nbroken\n");
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("serialize round trip") {
    const kv_pairs kv = {{"command", "eval"}, {"L", "50Latt"}, {"m", "14"}};
    const std::string text = serialize_config(kv);
    CHECK(parse_config_text(text) == kv);
}

TEST_CASE("format_double survives a round trip") {
    for (double v : {1.0 / 3.0, 0.1, 2e5, 1e-12, 276.3840076447489,
                     6.636e-8, 0.0, -42.5, 1e300}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    // shortest representation is preferred
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(50.0) == "50");
    CHECK(format_double(-0.0) == "-0");
}

TEST_CASE("distance parsing") {
    CHECK(parse_distance_km("1000km", 20.0) == 1000.0);
    CHECK(parse_distance_km("50Latt", 20.0) == doctest::Approx(1000.0).epsilon(1e-15));
    CHECK(parse_distance_km("50latt", 20.0) == doctest::Approx(1000.0).epsilon(1e-15));
    CHECK(parse_distance_km(" 2.5 km ", 20.0) == 2.5);
    CHECK(parse_distance_km("100", 20.0) == 100.0); // bare numbers are km
    CHECK_THROWS_AS(parse_distance_km("", 20.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_distance_km("km", 20.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_distance_km("12 parsecs", 20.0),
                    std::invalid_argument);
}

} // TEST_SUITE

TEST_SUITE("table") {

TEST_CASE("row width is enforced") {
    table t;
    t.columns = {"a", "b"};
    CHECK_NOTHROW(t.add_row({"1", "2"}));
    CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
}

TEST_CASE("csv quoting follows RFC 4180") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("with,comma") == "\"with,comma\"");
    CHECK(csv_escape("with\"quote") == "\"with\"\"quote\"");
    CHECK(csv_escape("with\nnewline") == "\"with\nnewline\"");

    table t;
    t.columns = {"name", "value"};
    t.add_row({"tree", "10,5"});
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str() == "name,value\ntree,\"10,5\"\n");
}

TEST_CASE("json keeps column order") {
    table t;
    t.columns = {"zeta", "alpha"};
    t.add_row({"1", "2"});
    std::ostringstream os;
    write_json(os, t);
    const std::string s = os.str();
    CHECK(s.find("\"zeta\"") != std::string::npos);
    CHECK(s.find("\"zeta\"") < s.find("\"alpha\""));
    CHECK(s.back() == '\n');
}

} // TEST_SUITE
