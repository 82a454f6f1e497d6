#include "doctest.h"

#include "measalg/errors.hpp"
#include "measalg/scenario.hpp"

#include <algorithm>

using namespace measalg;

namespace {

bool check_passes(const ScenarioReport& r, const std::string& name) {
    const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const ScenarioCheck& c) { return c.name == name; });
    REQUIRE(it != r.checks.end());
    return it->pass;
}

}  // namespace

TEST_CASE("run_all passes every scenario and round-trips through JSON") {
    const auto reports = run_all(42);
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
        INFO(r.id);
        CHECK(r.pass());
        CHECK(r.seed == 42);
        CHECK_FALSE(r.checks.empty());
    }
    const nlohmann::json j = run_to_json(reports, 42);
    CHECK(j.at("schema") == kScenarioRunSchema);
    CHECK(j.at("pass") == true);
    CHECK(run_from_json(nlohmann::json::parse(j.dump())) == reports);
}

TEST_CASE("torsion control fails the disc checks for every seed") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PropDnOptions options;
        options.samples = 2000;
        options.torsion_control = true;
        const ScenarioReport r = scenario_prop_dn(options, seed);
        CHECK(r.id == "prop-dn-control");
        CHECK_FALSE(r.pass());
        CHECK_FALSE(check_passes(r, "orbit_samples_fill_disc"));
        CHECK_FALSE(check_passes(r, "orbit_closure_is_disc"));
        CHECK(check_passes(r, "convolution_vanishes"));
    }
}

TEST_CASE("scenario pass status is stable across seeds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        INFO(seed);
        PropDnOptions options;
        options.levels = 3;
        options.samples = 2000;
        CHECK(scenario_prop_dn(options, seed).pass());
        CHECK(scenario_lemma_zn(12, seed).pass());
        CHECK(scenario_rational_obstruction(3 + static_cast<std::int64_t>(seed % 4), 3, seed).pass());
        CHECK(scenario_tm_and_shift(12, seed).pass());
        CHECK(scenario_isolation(12, 8, seed).pass());
    }
}

TEST_CASE("scenarios are deterministic given their seed") {
    const auto a = scenario_lemma_zn(16, 7);
    const auto b = scenario_lemma_zn(16, 7);
    CHECK(report_to_json(a, false) == report_to_json(b, false));
    const auto c = scenario_tm_and_shift(15, 3);
    const auto d = scenario_tm_and_shift(15, 3);
    CHECK(report_to_json(c, false) == report_to_json(d, false));
}

TEST_CASE("documented small instances") {
    PropDnOptions smallest;
    smallest.levels = 1;
    smallest.samples = 10000;
    CHECK(scenario_prop_dn(smallest, 42).pass());
    CHECK(scenario_rational_obstruction(3, 2, 0).pass());
    const ScenarioReport r = scenario_rational_obstruction(4, 4, 1);
    CHECK(r.pass());
    CHECK(check_passes(r, "idempotent_filter_recovers_riesz"));
    CHECK_THROWS_AS(scenario_rational_obstruction(2, 3, 0), InvalidBase);
    CHECK_THROWS_AS(scenario_isolation(1, 13, 0), std::invalid_argument);
}

TEST_CASE("report JSON rejects malformed input") {
    const ScenarioReport r = scenario_rational_obstruction(3, 2, 5);
    const nlohmann::json good = report_to_json(r);
    CHECK(report_from_json(good) == r);

    nlohmann::json bad_schema = good;
    bad_schema["schema"] = "measalg.scenario-report/0";
    CHECK_THROWS_AS(report_from_json(bad_schema), ParseError);

    nlohmann::json missing = good;
    missing.erase("checks");
    CHECK_THROWS_AS(report_from_json(missing), ParseError);

    nlohmann::json inconsistent = good;
    inconsistent["pass"] = false;
    CHECK_THROWS_AS(report_from_json(inconsistent), ParseError);

    CHECK_THROWS_AS(run_from_json(nlohmann::json::array()), ParseError);
}

TEST_CASE("JUnit output lists one testcase per check") {
    PropDnOptions options;
    options.samples = 1000;
    options.torsion_control = true;
    const std::vector<ScenarioReport> reports{scenario_rational_obstruction(3, 2, 0), scenario_prop_dn(options, 0)};
    const std::string xml = junit_xml(reports);
    std::size_t cases = 0;
    for (std::size_t pos = xml.find("<testcase"); pos != std::string::npos; pos = xml.find("<testcase", pos + 1)) ++cases;
    CHECK(cases == reports[0].checks.size() + reports[1].checks.size());
    CHECK(xml.find("<failure") != std::string::npos);
    CHECK(xml.find("name=\"prop-dn-control\"") != std::string::npos);
}
