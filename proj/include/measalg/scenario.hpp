#pragma once

/**
 * @file scenario.hpp
 * @brief End-to-end scenarios with pass/fail checks and serializable reports.
 *
 * Every scenario is a pure function of its parameters and seed. Reports
 * serialize to JSON (schema "measalg.scenario-report/1") and to JUnit XML.
 */

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace measalg {

inline constexpr const char* kScenarioReportSchema = "measalg.scenario-report/1";
inline constexpr const char* kScenarioRunSchema = "measalg.scenario-run/1";

/// Hausdorff tolerance for disc-filling checks with orbit samples |n| ≤ 10⁴.
inline constexpr double kDiscTol = 0.08;

struct ScenarioCheck {
    std::string name;
    nlohmann::json expected;
    nlohmann::json observed;
    /// Null when the check is exact.
    nlohmann::json tolerance;
    bool pass = false;
    friend bool operator==(const ScenarioCheck&, const ScenarioCheck&) = default;
};

struct ScenarioReport {
    std::string id;
    nlohmann::json inputs = nlohmann::json::object();
    std::vector<ScenarioCheck> checks;
    std::uint64_t seed = 0;
    double runtime_seconds = 0.0;

    bool pass() const;
    friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

struct PropDnOptions {
    int levels = 5;
    std::int64_t samples = 10000;
    double disc_tol = kDiscTol;
    /// Replace the independent atoms by the torsion angles 1/4 and 1/3; the disc check must then fail.
    bool torsion_control = false;
};

ScenarioReport scenario_prop_dn(const PropDnOptions& options, std::uint64_t seed);
ScenarioReport scenario_lemma_zn(int trials, std::uint64_t seed);
/// Throws InvalidBase for l < 3.
ScenarioReport scenario_rational_obstruction(std::int64_t l, int levels, std::uint64_t seed);
ScenarioReport scenario_tm_and_shift(int trials, std::uint64_t seed);
ScenarioReport scenario_isolation(int trials, std::size_t max_atoms, std::uint64_t seed);

/// Every scenario with its default parameters.
std::vector<ScenarioReport> run_all(std::uint64_t seed);

/// Scenario ids accepted by run_scenario: prop-dn, lemma-zn, rational-obstruction, tm-shift, isolation.
const std::vector<std::string>& scenario_ids();
/// Default-parameter run of one scenario by id ("all" is not accepted here).
ScenarioReport run_scenario(const std::string& id, std::uint64_t seed);

nlohmann::json report_to_json(const ScenarioReport& r, bool include_runtime = true);
/// Throws ParseError on schema violations.
ScenarioReport report_from_json(const nlohmann::json& j);

nlohmann::json run_to_json(const std::vector<ScenarioReport>& reports, std::uint64_t seed);
std::vector<ScenarioReport> run_from_json(const nlohmann::json& j);

std::string junit_xml(const std::vector<ScenarioReport>& reports);

}  // namespace measalg
