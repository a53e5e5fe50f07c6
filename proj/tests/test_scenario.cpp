#include <doctest.h>

#include <string>

#include "qjp/scenario.hpp"

using namespace qjp;

namespace {

const std::string kUmScenario = R"({
  "kind": "um",
  "seed": 42,
  "output": {"prefix": "demo"},
  "system": {"operator": "pauli_z", "state": [0.8, 0.6]},
  "meter": {"n_points": 1024, "dx": 0.0390625, "h": 1.0},
  "sweep": {"g": {"from": -3, "to": 3, "count": 7}}
})";

std::string expect_validation_message(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("unconditioned sweep scenario runs clean") {
    Scenario s = parse_scenario(kUmScenario);
    CHECK(s.kind == "um");
    CHECK(s.seed == 42);
    CHECK(s.prefix == "demo");
    REQUIRE(s.g_values.size() == 7);
    CHECK(s.g_values.front() == doctest::Approx(-3.0));
    CHECK(s.g_values.back() == doctest::Approx(3.0));

    ReportBundle rep = run_scenario(s);
    CHECK(rep.ok);
    REQUIRE(rep.tables.size() == 1);
    CHECK(rep.tables[0].first == "demo_sweep.csv");
    CHECK(rep.tables[0].second.rfind("g,quantity,value", 0) == 0);
    for (const auto& c : rep.checks)
        CHECK(c.passed);
    CHECK(rep.summary_json.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical and job-count independent") {
    Scenario s = parse_scenario(kUmScenario);
    ReportBundle a = run_scenario(s, 1);
    ReportBundle b = run_scenario(s, 1);
    ReportBundle c = run_scenario(s, 4);
    REQUIRE(a.tables.size() == 1);
    CHECK(a.tables[0].second == b.tables[0].second);
    CHECK(a.tables[0].second == c.tables[0].second);
    CHECK(a.summary_json == b.summary_json);
    CHECK(a.summary_json == c.summary_json);
}

TEST_CASE("plot request produces a script referencing the table") {
    Scenario s = parse_scenario(kUmScenario);
    ReportBundle rep = run_scenario(s, 1, true);
    CHECK(rep.plot_script.find("demo_sweep.csv") != std::string::npos);
    CHECK(rep.plot_script.find("set datafile separator ','") != std::string::npos);
}

TEST_CASE("validation failures name the offending field") {
    SUBCASE("state dimension mismatch") {
        std::string text = kUmScenario;
        text.replace(text.find("[0.8, 0.6]"), 10, "[1, 0, 0]");
        std::string msg = expect_validation_message(text);
        CHECK(msg.find("system.state") != std::string::npos);
    }
    SUBCASE("unknown sweep key") {
        std::string text = kUmScenario;
        text.replace(text.find("\"g\":"), 4, "\"alpha_range\":");
        std::string msg = expect_validation_message(text);
        CHECK(msg.find("alpha_range") != std::string::npos);
        CHECK(msg.find("unknown key") != std::string::npos);
    }
    SUBCASE("missing required field") {
        std::string msg = expect_validation_message(R"({"kind": "um"})");
        CHECK(msg.find("missing required field") != std::string::npos);
    }
    SUBCASE("non-hermitian operator") {
        std::string text = kUmScenario;
        text.replace(text.find("\"pauli_z\""), 9, "[[0, 1], [2, 0]]");
        std::string msg = expect_validation_message(text);
        CHECK(msg.find("Hermitian") != std::string::npos);
    }
    SUBCASE("aliasing-unsafe sweep") {
        std::string text = kUmScenario;
        text.replace(text.find("\"to\": 3"), 7, "\"to\": 30");
        std::string msg = expect_validation_message(text);
        CHECK(msg.find("aliasing") != std::string::npos);
    }
    SUBCASE("invalid JSON is a parse error") {
        CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError);
    }
    SUBCASE("unknown kind") {
        std::string msg = expect_validation_message(R"({"kind": "wigner"})");
        CHECK(msg.find("unknown kind") != std::string::npos);
    }
}

TEST_CASE("conditioned sweep scenario") {
    Scenario s = parse_scenario(R"({
      "kind": "cm",
      "system": {"operator": "pauli_z", "state": [0.8, 0.6],
                 "conditioning": "pauli_x", "select": 1},
      "meter": {"n_points": 1024, "dx": 0.0390625, "h": 1.0},
      "sweep": {"g": [0.5, 1.0, 2.0]}
    })");
    ReportBundle rep = run_scenario(s, 2);
    CHECK(rep.ok);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].name == "amplification_bound_respected");
    CHECK(rep.checks[0].passed);
}

TEST_CASE("dichotomic closed-form scenario with an imaginary weak value") {
    // post = (1, -i) against pre = (1, 1) makes the weak value of diag(-1, 1)
    // equal to i, so the position mean stays pinned at zero.
    Scenario s = parse_scenario(R"({
      "kind": "gaussian",
      "system": {"a1": -1, "a2": 1,
                 "pre_state": [1, 1], "post_state": [1, [0, -1]]},
      "meter": {"n_points": 1024, "dx": 0.0390625, "h": 1.0},
      "sweep": {"g": {"from": 0.2, "to": 2.0, "count": 10}}
    })");
    ReportBundle rep = run_scenario(s);
    CHECK(rep.ok);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].value <= 1e-6);
}

TEST_CASE("joint-distribution scenario") {
    Scenario s = parse_scenario(R"({
      "kind": "qjp",
      "system": {"operator_a": "pauli_z", "operator_b": "pauli_x",
                 "state": [0.8, [0.3, 0.5]]},
      "sweep": {"alpha": [0, 1, [0, 1]]}
    })");
    CHECK(s.families.size() == 3); // defaults
    ReportBundle rep = run_scenario(s);
    CHECK(rep.ok);
    CHECK(rep.tables.size() >= 7); // 2 families x 3 parameters + bra-ket table
    for (const auto& c : rep.checks)
        CHECK(c.passed);
}

TEST_CASE("geometry scenario") {
    Scenario s = parse_scenario(R"({
      "kind": "geometry",
      "system": {"operator_a": "pauli_z", "operator_b": "pauli_x",
                 "state": [0.8, [0.3, 0.5]]},
      "sweep": {"alpha": [-1, 0, 0.5, 1]}
    })");
    ReportBundle rep = run_scenario(s);
    CHECK(rep.ok);
    CHECK(rep.checks.size() == 12); // three checks per parameter
    for (const auto& c : rep.checks)
        CHECK(c.passed);

    SUBCASE("complex parameters are refused at run time") {
        Scenario bad = s;
        bad.alphas = {Complex(0.0, 1.0)};
        ReportBundle r = run_scenario(bad);
        CHECK_FALSE(r.ok);
        CHECK(r.summary_json.find("[-1, 1]") != std::string::npos);
    }
}
