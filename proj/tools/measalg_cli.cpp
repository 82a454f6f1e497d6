/**
 * @file measalg_cli.cpp
 * @brief Command-line front end: Riesz truncations, spectra, naturality,
 * annihilator polynomials, atom isolation and scenario verification.
 *
 * Exit codes: 0 success, 1 a verification failed, 2 invalid input.
 */

#include "measalg/errors.hpp"
#include "measalg/measure_json.hpp"
#include "measalg/poly_lemma.hpp"
#include "measalg/riesz.hpp"
#include "measalg/scenario.hpp"
#include "measalg/spectra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace measalg;
using nlohmann::json;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

std::string error_kind(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const MissingGeneratorValue*>(&e)) return "MissingGeneratorValue";
    if (dynamic_cast<const InvalidBase*>(&e)) return "InvalidBase";
    if (dynamic_cast<const NotCheckable*>(&e)) return "NotCheckable";
    if (dynamic_cast<const EmptyDiscretePart*>(&e)) return "EmptyDiscretePart";
    if (dynamic_cast<const NonTorsionAtom*>(&e)) return "NonTorsionAtom";
    if (dynamic_cast<const GroupTooLarge*>(&e)) return "GroupTooLarge";
    if (dynamic_cast<const DomainViolation*>(&e)) return "DomainViolation";
    if (dynamic_cast<const DegenerateEqualAngles*>(&e)) return "DegenerateEqualAngles";
    if (dynamic_cast<const NonDiscreteMeasure*>(&e)) return "NonDiscreteMeasure";
    if (dynamic_cast<const TargetWeightZero*>(&e)) return "TargetWeightZero";
    if (dynamic_cast<const IntegerOverflow*>(&e)) return "IntegerOverflow";
    return "Error";
}

void report_error(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", {{"type", kind}, {"message", message}}}}.dump() << '\n';
}

/// Writes to `path`, or to stdout when the path is empty or "-".
void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json scalar_list(const std::vector<Scalar>& values, bool exact) {
    json out = json::array();
    for (const Scalar& s : values) out.push_back(exact ? scalar_to_json(s) : complex_json(s.numeric()));
    return out;
}

int cmd_riesz(std::int64_t base, int levels, const std::string& out) {
    write_text(out, dump_measure(riesz_partial({base, levels})) + "\n");
    return 0;
}

int cmd_spectrum(const std::string& measure, const std::string& measure2, std::size_t samples, std::uint64_t seed,
                 const std::string& out) {
    const Measure m = load_measure(measure);
    const bool joint = !measure2.empty();
    const SpectrumSet s = joint ? joint_spectrum(m, load_measure(measure2)) : spectrum(m);
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << (joint ? "cell_id,re,im,re2,im2\n" : "cell_id,re,im\n");
    const auto cells = s.sample(samples, seed);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const Point& p : cells[i]) {
            csv << i << ',' << p[0].real() << ',' << p[0].imag();
            if (joint) csv << ',' << p[1].real() << ',' << p[1].imag();
            csv << '\n';
        }
    }
    write_text(out, csv.str());
    return 0;
}

int cmd_naturality(const std::string& measure, const std::string& measure2, double tol, std::size_t samples,
                   std::uint64_t seed, const std::string& out) {
    const Measure m = load_measure(measure);
    const NaturalityReport r = measure2.empty() ? naturality_report(m, tol, samples, seed)
                                                : naturality_report(m, load_measure(measure2), tol, samples, seed);
    json witnesses = json::array();
    for (const auto& w : r.witness_frequencies) witnesses.push_back(w ? json(*w) : json(nullptr));
    const json j = {{"verdict", r.natural ? "NATURAL" : "UNDETERMINED"},
                    {"hausdorff", r.hausdorff},
                    {"structural_match", r.structural_match},
                    {"witness_frequencies", witnesses}};
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int cmd_polylemma(const std::string& alpha, const std::string& beta, bool exact) {
    const AnnihilatorPolynomial p = annihilator_polynomial(Angle::parse(alpha), Angle::parse(beta));
    if (exact && !p.is_exact()) {
        report_error("NotExact", "alpha - beta is not torsion of small enough order for exact weights");
        return kExitInput;
    }
    const Scalar at_alpha = p.evaluate(p.alpha);
    const Scalar gap = p.evaluate(p.beta) - p.l1_norm();
    json residuals = {{"f_alpha", at_alpha.abs()}, {"f_beta_minus_l1", gap.abs()}};
    if (p.is_exact()) residuals["exact_identities"] = at_alpha.is_zero() && gap.is_zero();
    const json j = {{"alpha", p.alpha.str()},
                    {"beta", p.beta.str()},
                    {"N", p.hull_index},
                    {"weights", scalar_list(p.weights, exact)},
                    {"coefficients", scalar_list(p.coefficients, exact)},
                    {"residuals", residuals}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_isolate(const std::string& measure, std::size_t target, std::size_t max_steps, const std::string& out) {
    const Measure m = load_measure(measure);
    const IsolationTrace t = isolate_atom(m, target, max_steps);
    json steps = json::array();
    for (const IsolationStep& s : t.steps) {
        steps.push_back({{"eliminated_atom", s.eliminated_atom},
                         {"eliminated_angle", m.atoms()[s.eliminated_atom].position.str()},
                         {"N", s.polynomial.hull_index},
                         {"coefficients", scalar_list(s.polynomial.coefficients, true)},
                         {"tail_norm", s.tail_norm},
                         {"measure_after", measure_to_json(s.measure_after)}});
    }
    const json j = {{"target_atom", t.target_atom},
                    {"target_angle", m.atoms()[t.target_atom].position.str()},
                    {"isolated", t.isolated},
                    {"initial_tail_norm", t.initial_tail_norm},
                    {"steps", steps},
                    {"result", measure_to_json(t.result())}};
    write_text(out, j.dump(2) + "\n");
    return t.isolated ? 0 : kExitFailed;
}

int cmd_verify(const std::string& scenario, std::uint64_t seed, const std::string& report, const std::string& junit) {
    std::vector<ScenarioReport> reports;
    if (scenario == "all") {
        reports = run_all(seed);
    } else {
        reports.push_back(run_scenario(scenario, seed));
    }
    bool pass = true;
    for (const ScenarioReport& r : reports) {
        std::cout << (r.pass() ? "PASS " : "FAIL ") << r.id << " (" << r.checks.size() << " checks, "
                  << std::fixed << std::setprecision(3) << r.runtime_seconds << " s)\n";
        for (const ScenarioCheck& c : r.checks)
            if (!c.pass) std::cout << "  failed: " << c.name << " observed " << c.observed.dump() << '\n';
        pass = pass && r.pass();
    }
    if (!report.empty()) write_text(report, run_to_json(reports, seed).dump(2) + "\n");
    if (!junit.empty()) write_text(junit, junit_xml(reports));
    return pass ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measures on the circle: spectra, naturality, annihilator polynomials and scenarios"};
    app.require_subcommand(1);
    int code = 0;

    auto* riesz = app.add_subcommand("riesz", "Write a truncated Riesz product as measure JSON");
    std::int64_t base = 4;
    int levels = 1;
    std::string riesz_out;
    riesz->add_option("--base", base, "Base b >= 3")->required();
    riesz->add_option("--levels", levels, "Number of factors N")->required()->check(CLI::Range(0, 12));
    riesz->add_option("--out", riesz_out, "Output path (stdout if omitted)");
    riesz->callback([&] { code = cmd_riesz(base, levels, riesz_out); });

    auto* spec = app.add_subcommand("spectrum", "Sample the spectrum (or joint spectrum) as CSV");
    std::string measure, measure2, spec_out;
    std::size_t samples = 256;
    std::uint64_t seed = 0;
    spec->add_option("--measure", measure, "Measure JSON")->required()->check(CLI::ExistingFile);
    spec->add_option("--measure2", measure2, "Second measure JSON for the joint spectrum")->check(CLI::ExistingFile);
    spec->add_option("--samples", samples, "Samples per torus cell");
    spec->add_option("--seed", seed, "Sampling seed");
    spec->add_option("--out", spec_out, "CSV output path (stdout if omitted)");
    spec->callback([&] { code = cmd_spectrum(measure, measure2, samples, seed, spec_out); });

    auto* nat = app.add_subcommand("naturality", "Compare the spectrum with the closure of the Fourier orbit");
    double tol = 1e-6;
    std::string nat_out;
    std::size_t nat_samples = 512;
    std::uint64_t nat_seed = 0;
    nat->add_option("--measure", measure, "Measure JSON")->required()->check(CLI::ExistingFile);
    nat->add_option("--measure2", measure2, "Second measure JSON for the joint version")->check(CLI::ExistingFile);
    nat->add_option("--tol", tol, "Hausdorff tolerance");
    nat->add_option("--samples", nat_samples, "Samples per torus cell");
    nat->add_option("--seed", nat_seed, "Sampling seed");
    nat->add_option("--out", nat_out, "JSON output path (stdout if omitted)");
    nat->callback([&] { code = cmd_naturality(measure, measure2, tol, nat_samples, nat_seed, nat_out); });

    auto* poly = app.add_subcommand("polylemma", "Annihilator polynomial with f(alpha) = 0 and f(beta) = |f|_1");
    std::string alpha, beta;
    bool exact = false;
    poly->add_option("--alpha", alpha, "Angle such as 1/3 or 1/5+2*g1")->required();
    poly->add_option("--beta", beta, "Angle")->required();
    poly->add_flag("--exact", exact, "Require exact cyclotomic weights and print them exactly");
    poly->callback([&] { code = cmd_polylemma(alpha, beta, exact); });

    auto* iso = app.add_subcommand("isolate", "Isolate one atom of a discrete measure by polynomial filters");
    std::size_t target = 0;
    std::size_t max_steps = 64;
    std::string iso_out;
    iso->add_option("--measure", measure, "Measure JSON")->required()->check(CLI::ExistingFile);
    iso->add_option("--target", target, "Index of the target atom")->required();
    iso->add_option("--max-steps", max_steps, "Step limit");
    iso->add_option("--out", iso_out, "Trace JSON output path (stdout if omitted)");
    iso->callback([&] { code = cmd_isolate(measure, target, max_steps, iso_out); });

    auto* verify = app.add_subcommand("verify", "Run scenarios and write a JSON report");
    std::string scenario = "all";
    std::uint64_t verify_seed = 42;
    std::string report, junit;
    std::vector<std::string> choices = scenario_ids();
    choices.emplace_back("all");
    verify->add_option("--scenario", scenario, "Scenario id or all")->check(CLI::IsMember(choices));
    verify->add_option("--seed", verify_seed, "Seed");
    verify->add_option("--report", report, "JSON report path");
    verify->add_option("--junit", junit, "JUnit XML path");
    verify->callback([&] { code = cmd_verify(scenario, verify_seed, report, junit); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    } catch (const Error& e) {
        report_error(error_kind(e), e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        report_error("Error", e.what());
        return kExitInput;
    }
    return code;
}
