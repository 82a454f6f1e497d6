#include "measalg/scenario.hpp"

#include "measalg/corpus.hpp"
#include "measalg/errors.hpp"
#include "measalg/measure_json.hpp"
#include "measalg/poly_lemma.hpp"
#include "measalg/riesz.hpp"
#include "measalg/spectra.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace measalg {

using nlohmann::json;

namespace {

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void add_check(ScenarioReport& r, std::string name, json expected, json observed, json tolerance, bool pass) {
    r.checks.push_back(ScenarioCheck{std::move(name), std::move(expected), std::move(observed), std::move(tolerance), pass});
}

void add_count(ScenarioReport& r, std::string name, int passed, int total) {
    add_check(r, std::move(name), total, passed, nullptr, passed == total);
}

Measure half_difference(const Angle& a) {
    return scaled(Measure::dirac(Angle()) - Measure::dirac(a), Scalar(Rational(1, 2)));
}

Measure half_sum(const Angle& a, const Angle& b) {
    return scaled(Measure::dirac(a) + Measure::dirac(b), Scalar(Rational(1, 2)));
}

/// Points of the closed unit disc on a square grid of the given spacing.
std::vector<Complex> disc_grid(double spacing) {
    std::vector<Complex> grid;
    const int steps = static_cast<int>(std::ceil(1.0 / spacing));
    for (int i = -steps; i <= steps; ++i) {
        for (int j = -steps; j <= steps; ++j) {
            const Complex z(i * spacing, j * spacing);
            if (std::abs(z) <= 1.0) grid.push_back(z);
        }
    }
    return grid;
}

/// Symmetric Hausdorff distance from a finite cloud to the closed unit disc,
/// with the disc side evaluated on a grid of spacing 0.02.
double disc_hausdorff(const std::vector<Complex>& cloud) {
    if (cloud.empty()) return std::numeric_limits<double>::infinity();
    double h = 0.0;
    for (const Complex& z : cloud) h = std::max(h, std::abs(z) - 1.0);

    constexpr double kCell = 0.05;
    constexpr int kBins = 44;
    auto bin = [](double x) { return std::clamp(static_cast<int>(std::floor((x + 1.1) / kCell)), 0, kBins - 1); };
    std::vector<std::vector<Complex>> buckets(kBins * kBins);
    for (const Complex& z : cloud) buckets[bin(z.real()) * kBins + bin(z.imag())].push_back(z);

    for (const Complex& g : disc_grid(0.02)) {
        const int bx = bin(g.real());
        const int by = bin(g.imag());
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < kBins; ++ring) {
            if (ring > 0 && best <= (ring - 1) * kCell) break;
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    const int x = bx + dx;
                    const int y = by + dy;
                    if (x < 0 || y < 0 || x >= kBins || y >= kBins) continue;
                    for (const Complex& z : buckets[x * kBins + y]) best = std::min(best, std::abs(z - g));
                }
            }
        }
        h = std::max(h, best);
    }
    return h;
}

std::vector<Complex> first_coordinates(const std::vector<std::vector<Point>>& samples) {
    std::vector<Complex> out;
    for (const auto& cell : samples)
        for (const Point& p : cell) out.push_back(p[0]);
    return out;
}

/// True when some torus cell of the set is exactly the closed unit disc.
bool has_disc_cell(const SpectrumSet& s) {
    for (const TorusCell* t : s.tori()) {
        const auto ann = t->annulus(1);
        if (ann && std::abs(ann->center) <= 1e-12 && ann->inner <= 1e-12 && std::abs(ann->outer - 1.0) <= 1e-12)
            return true;
    }
    return false;
}

struct DiscObservation {
    double orbit_hausdorff = 0.0;
    double closure_hausdorff = 0.0;
    bool disc_cell = false;
};

DiscObservation observe_disc(const Measure& nu, std::int64_t samples, std::uint64_t seed) {
    DiscObservation out;
    std::vector<Complex> orbit;
    orbit.reserve(static_cast<std::size_t>(2 * samples + 1));
    for (std::int64_t n = -samples; n <= samples; ++n) orbit.push_back(fourier_coefficient(nu, n).numeric());
    out.orbit_hausdorff = disc_hausdorff(orbit);
    const SpectrumSet closure = fourier_orbit_closure(nu);
    out.closure_hausdorff = disc_hausdorff(first_coordinates(closure.sample(4096, seed)));
    out.disc_cell = has_disc_cell(closure);
    return out;
}

void add_disc_checks(ScenarioReport& r, const std::string& prefix, const DiscObservation& d, double tol) {
    add_check(r, prefix + "orbit_samples_fill_disc", "hausdorff <= tol", d.orbit_hausdorff, tol,
              d.orbit_hausdorff <= tol);
    add_check(r, prefix + "orbit_closure_is_disc", true,
              json{{"disc_cell", d.disc_cell}, {"hausdorff", d.closure_hausdorff}}, tol,
              d.disc_cell && d.closure_hausdorff <= tol);
}

bool sets_match(const SpectrumSet& a, const SpectrumSet& b, bool exact, std::uint64_t seed) {
    if (structurally_equal(a, b)) return true;
    return !exact && sampled_hausdorff(a, b, 256, seed) <= 1e-6;
}

SpectrumSet with_zero(SpectrumSet s) {
    s.add_point(make_point({0.0, 0.0}));
    return s.normalized();
}

}  // namespace

bool ScenarioReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.pass; });
}

ScenarioReport scenario_prop_dn(const PropDnOptions& options, std::uint64_t seed) {
    if (options.levels < 1 || options.levels > 8) throw std::invalid_argument("levels must be in [1, 8]");
    if (options.samples < 1) throw std::invalid_argument("samples must be positive");
    const Timer timer;
    ScenarioReport r;
    r.id = options.torsion_control ? "prop-dn-control" : "prop-dn";
    r.seed = seed;

    const Angle alpha = options.torsion_control ? Angle::turns(1, 4) : Angle::generator(1);
    const Angle beta = options.torsion_control ? Angle::turns(1, 3) : Angle::generator(2);
    const Measure mu = riesz_partial({4, options.levels});
    const Measure nu = convolve(half_difference(Angle::turns(1, 2)), half_sum(alpha, beta));
    r.inputs = {{"levels", options.levels},  {"samples", options.samples},
                {"disc_tol", options.disc_tol}, {"torsion_control", options.torsion_control},
                {"mu", measure_to_json(mu)},  {"nu", measure_to_json(nu)}};

    const bool annihilate = convolve(mu, nu).is_zero();
    add_check(r, "convolution_vanishes", true, annihilate, nullptr, annihilate);

    const double radius = spectral_radius(mu);
    add_check(r, "riesz_spectral_radius", 1.0, radius, 1e-9, std::abs(radius - 1.0) <= 1e-9);

    add_disc_checks(r, "", observe_disc(nu, options.samples, seed), options.disc_tol);

    const auto per_cell = static_cast<std::size_t>(std::min<std::int64_t>(options.samples, 2048));
    const NaturalityReport nat = naturality_report(mu + nu, options.disc_tol, per_cell, seed);
    add_check(r, "sum_is_natural", "NATURAL",
              json{{"verdict", nat.natural ? "NATURAL" : "UNDETERMINED"},
                   {"hausdorff", nat.hausdorff},
                   {"structural_match", nat.structural_match}},
              options.disc_tol, nat.natural && nat.hausdorff <= options.disc_tol);

    if (!options.torsion_control) {
        const Measure control = convolve(half_difference(Angle::turns(1, 2)), half_sum(Angle::turns(1, 4), Angle::turns(1, 3)));
        const DiscObservation d = observe_disc(control, options.samples, seed);
        const bool control_fails = !(d.orbit_hausdorff <= options.disc_tol) &&
                                   !(d.disc_cell && d.closure_hausdorff <= options.disc_tol);
        add_check(r, "torsion_control_fails_disc_check", "FAIL",
                  json{{"orbit_hausdorff", d.orbit_hausdorff},
                       {"closure_hausdorff", d.closure_hausdorff},
                       {"disc_cell", d.disc_cell}},
                  options.disc_tol, control_fails);
    }

    r.runtime_seconds = timer.seconds();
    return r;
}

ScenarioReport scenario_lemma_zn(int trials, std::uint64_t seed) {
    const Timer timer;
    ScenarioReport r;
    r.id = "lemma-zn";
    r.seed = seed;
    r.inputs = {{"trials", trials}};

    Corpus corpus(seed);
    int exact_total = 0;
    int exact_ok = 0;
    int approx_total = 0;
    int approx_ok = 0;
    int annihilate_ok = 0;
    int natural_ok = 0;
    for (int i = 0; i < trials; ++i) {
        const bool torsion = i % 4 != 3;
        const auto [mu, nu] = corpus.annihilating_pair(torsion);
        if (convolve(mu, nu).is_zero()) ++annihilate_ok;

        const SpectrumSet lhs = with_zero(spectrum(mu + nu));
        SpectrumSet rhs = spectrum(mu);
        rhs.merge(spectrum(nu));
        const bool match = sets_match(lhs, with_zero(rhs), torsion, seed + i);
        if (torsion) {
            ++exact_total;
            exact_ok += match;
        } else {
            ++approx_total;
            approx_ok += match;
        }
        if (naturality_report(mu + nu, 1e-6, 256, seed + i).natural) ++natural_ok;
    }
    add_count(r, "pairs_annihilate", annihilate_ok, trials);
    add_count(r, "spectrum_union_identity_torsion_structural", exact_ok, exact_total);
    add_check(r, "spectrum_union_identity_general", approx_total, approx_ok, 1e-6, approx_ok == approx_total);
    add_count(r, "sum_is_natural", natural_ok, trials);

    r.runtime_seconds = timer.seconds();
    return r;
}

ScenarioReport scenario_rational_obstruction(std::int64_t l, int levels, std::uint64_t seed) {
    if (l < 3) throw InvalidBase("rational obstruction needs l >= 3");
    if (levels < 1 || levels > 8) throw std::invalid_argument("levels must be in [1, 8]");
    const Timer timer;
    ScenarioReport r;
    r.id = "rational-obstruction";
    r.seed = seed;

    const Angle alpha = Angle::turns(1, l);
    const Measure riesz = riesz_partial({l, levels});
    const Measure diff = half_difference(alpha);
    const Measure mu = riesz + convolve(diff, half_sum(Angle::generator(1), Angle::generator(2)));
    r.inputs = {{"l", l}, {"levels", levels}, {"mu", measure_to_json(mu)}};

    const bool kills_riesz = convolve(diff, riesz).is_zero();
    add_check(r, "difference_annihilates_riesz", true, kills_riesz, nullptr, kills_riesz);

    const bool kills_haar = convolve(diff, Measure::haar_cyclic(l)).is_zero();
    add_check(r, "difference_annihilates_haar", true, kills_haar, nullptr, kills_haar);

    const NaturalityReport nat = naturality_report(mu, 1e-6, 512, seed);
    add_check(r, "measure_is_natural", "NATURAL",
              json{{"verdict", nat.natural ? "NATURAL" : "UNDETERMINED"},
                   {"hausdorff", nat.hausdorff},
                   {"structural_match", nat.structural_match}},
              1e-6, nat.natural);

    const bool recovers = convolve(mu, Measure::haar_cyclic(l)) == riesz;
    add_check(r, "idempotent_filter_recovers_riesz", true, recovers, nullptr, recovers);

    const RieszConvergence conv = riesz_convergence({l, levels});
    add_check(r, "riesz_truncations_stable", true,
              json{{"stable", conv.stable}, {"compared", conv.compared}, {"new_frequencies", conv.new_frequencies}},
              nullptr, conv.stable);

    r.runtime_seconds = timer.seconds();
    return r;
}

ScenarioReport scenario_tm_and_shift(int trials, std::uint64_t seed) {
    const Timer timer;
    ScenarioReport r;
    r.id = "tm-shift";
    r.seed = seed;
    r.inputs = {{"trials", trials}};

    Corpus corpus(seed);
    int invariance_ok = 0;
    int coefficient_ok = 0;
    int translate_ok = 0;
    int identity_ok = 0;
    for (int i = 0; i < trials; ++i) {
        const int kind = i % 3;
        const Measure m = kind == 0   ? corpus.exact_torsion_measure(6)
                          : kind == 1 ? corpus.generator_measure(5, 2)
                                      : corpus.hybrid_measure(5);
        const bool exact = kind != 1;
        const std::int64_t k = corpus.uniform(-6, 6);
        const Measure shifted = shift_automorphism(m, k);

        if (structurally_equal(spectrum(shifted), spectrum(m))) ++invariance_ok;

        bool coeffs = true;
        for (std::int64_t n = -20; n <= 20 && coeffs; ++n) {
            const Scalar a = fourier_coefficient(shifted, n);
            const Scalar b = fourier_coefficient(m, n - k);
            coeffs = exact ? (a.is_exact() && b.is_exact() && a == b) : std::abs(a.numeric() - b.numeric()) <= 1e-12;
        }
        coefficient_ok += coeffs;

        Angle tau = Angle::turns(corpus.uniform(0, 11), 12);
        if (!exact) tau = tau + Angle::generator(static_cast<int>(corpus.uniform(1, 2)));
        const Measure d = Measure::dirac(tau);
        const SpectrumSet translated = spectrum(convolve(m, d));
        const SpectrumSet product = joint_spectrum(m, d).product_map().normalized();
        translate_ok += sets_match(translated, product, false, seed + i);

        identity_ok += shift_automorphism(m, 0) == m;
    }
    add_count(r, "spectrum_invariant_under_shift", invariance_ok, trials);
    add_count(r, "coefficient_shift_identity", coefficient_ok, trials);
    add_check(r, "translate_matches_characterwise_product", trials, translate_ok, 1e-6, translate_ok == trials);
    add_count(r, "zero_shift_is_identity", identity_ok, trials);

    r.runtime_seconds = timer.seconds();
    return r;
}

ScenarioReport scenario_isolation(int trials, std::size_t max_atoms, std::uint64_t seed) {
    if (max_atoms < 1 || max_atoms > 12) throw std::invalid_argument("max_atoms must be in [1, 12]");
    const Timer timer;
    ScenarioReport r;
    r.id = "isolation";
    r.seed = seed;
    r.inputs = {{"trials", trials}, {"max_atoms", max_atoms}};

    Corpus corpus(seed);
    int terminate_ok = 0;
    int exact_total = 0;
    int exact_ok = 0;
    int approx_total = 0;
    int approx_ok = 0;
    int monotone_ok = 0;
    for (int i = 0; i < trials; ++i) {
        const bool torsion = i % 4 != 3;
        const Measure m = torsion ? corpus.exact_torsion_measure(max_atoms) : corpus.generator_measure(max_atoms, 2);
        const std::size_t atoms = m.atoms().size();
        const auto target = static_cast<std::size_t>(corpus.uniform(0, static_cast<std::int64_t>(atoms) - 1));
        const Angle at = m.atoms()[target].position;
        const IsolationTrace trace = isolate_atom(m, target, max_atoms);

        terminate_ok += trace.isolated && trace.steps.size() + 1 <= atoms;

        const Measure& out = trace.result();
        if (torsion) {
            ++exact_total;
            exact_ok += out == Measure::dirac(at);
        } else {
            ++approx_total;
            approx_ok += tv_norm(out - Measure::dirac(at)) <= 1e-9;
        }

        bool monotone = true;
        double prev = trace.initial_tail_norm;
        for (const IsolationStep& s : trace.steps) {
            if (s.tail_norm > prev * (1.0 + 1e-12) + 1e-15) monotone = false;
            prev = s.tail_norm;
        }
        monotone_ok += monotone;
    }
    add_count(r, "terminates_within_atom_count", terminate_ok, trials);
    add_count(r, "exact_target_dirac_torsion", exact_ok, exact_total);
    add_check(r, "target_dirac_general", approx_total, approx_ok, 1e-9, approx_ok == approx_total);
    add_count(r, "tail_norms_non_increasing", monotone_ok, trials);

    const IsolationTrace single = isolate_atom(Measure::dirac(Angle::turns(1, 5), 3), 0, max_atoms);
    add_check(r, "single_atom_needs_no_step", 0, single.steps.size(), nullptr, single.steps.empty() && single.isolated);

    const Measure pair = Measure::dirac(Angle()) + Measure::dirac(Angle::turns(1, 2));
    const IsolationTrace antipodal = isolate_atom(pair, 0, max_atoms);
    const bool one_step = antipodal.steps.size() == 1 && antipodal.result() == Measure::dirac(Angle());
    add_check(r, "antipodal_pair_one_exact_step", 1, antipodal.steps.size(), nullptr, one_step);

    r.runtime_seconds = timer.seconds();
    return r;
}

const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids{"prop-dn", "lemma-zn", "rational-obstruction", "tm-shift", "isolation"};
    return ids;
}

ScenarioReport run_scenario(const std::string& id, std::uint64_t seed) {
    if (id == "prop-dn") return scenario_prop_dn(PropDnOptions{}, seed);
    if (id == "lemma-zn") return scenario_lemma_zn(100, seed);
    if (id == "rational-obstruction") return scenario_rational_obstruction(4, 4, seed);
    if (id == "tm-shift") return scenario_tm_and_shift(50, seed);
    if (id == "isolation") return scenario_isolation(100, 8, seed);
    throw std::invalid_argument("unknown scenario: " + id);
}

std::vector<ScenarioReport> run_all(std::uint64_t seed) {
    std::vector<ScenarioReport> out;
    for (const std::string& id : scenario_ids()) out.push_back(run_scenario(id, seed));
    return out;
}

json report_to_json(const ScenarioReport& r, bool include_runtime) {
    json checks = json::array();
    for (const ScenarioCheck& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    json j = {{"schema", kScenarioReportSchema}, {"id", r.id},         {"seed", r.seed},
              {"pass", r.pass()},                {"inputs", r.inputs}, {"checks", checks}};
    if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

ScenarioReport report_from_json(const json& j) {
    try {
        if (!j.is_object() || j.at("schema") != kScenarioReportSchema) throw ParseError("unsupported report schema");
        ScenarioReport r;
        r.id = j.at("id").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.inputs = j.at("inputs");
        r.runtime_seconds = j.value("runtime_seconds", 0.0);
        for (const json& c : j.at("checks")) {
            r.checks.push_back(ScenarioCheck{c.at("name").get<std::string>(), c.at("expected"), c.at("observed"),
                                             c.at("tolerance"), c.at("pass").get<bool>()});
        }
        if (j.at("pass").get<bool>() != r.pass()) throw ParseError("report pass flag disagrees with its checks");
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scenario report: ") + e.what());
    }
}

json run_to_json(const std::vector<ScenarioReport>& reports, std::uint64_t seed) {
    json list = json::array();
    bool pass = true;
    for (const ScenarioReport& r : reports) {
        list.push_back(report_to_json(r));
        pass = pass && r.pass();
    }
    return {{"schema", kScenarioRunSchema}, {"seed", seed}, {"pass", pass}, {"reports", list}};
}

std::vector<ScenarioReport> run_from_json(const json& j) {
    try {
        if (!j.is_object() || j.at("schema") != kScenarioRunSchema) throw ParseError("unsupported run schema");
        std::vector<ScenarioReport> out;
        for (const json& r : j.at("reports")) out.push_back(report_from_json(r));
        return out;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scenario run: ") + e.what());
    }
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string junit_xml(const std::vector<ScenarioReport>& reports) {
    std::ostringstream os;
    std::size_t tests = 0;
    std::size_t failures = 0;
    for (const ScenarioReport& r : reports) {
        tests += r.checks.size();
        for (const ScenarioCheck& c : r.checks) failures += !c.pass;
    }
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<testsuites name=\"measalg\" tests=\"" << tests << "\" failures=\"" << failures << "\">\n";
    for (const ScenarioReport& r : reports) {
        std::size_t fails = 0;
        for (const ScenarioCheck& c : r.checks) fails += !c.pass;
        os << "  <testsuite name=\"" << xml_escape(r.id) << "\" tests=\"" << r.checks.size() << "\" failures=\""
           << fails << "\" time=\"" << r.runtime_seconds << "\">\n";
        os << "    <properties><property name=\"seed\" value=\"" << r.seed << "\"/></properties>\n";
        for (const ScenarioCheck& c : r.checks) {
            os << "    <testcase classname=\"" << xml_escape(r.id) << "\" name=\"" << xml_escape(c.name) << "\"";
            if (c.pass) {
                os << "/>\n";
            } else {
                os << ">\n      <failure message=\""
                   << xml_escape("expected " + c.expected.dump() + ", observed " + c.observed.dump()) << "\"/>\n"
                   << "    </testcase>\n";
            }
        }
        os << "  </testsuite>\n";
    }
    os << "</testsuites>\n";
    return os.str();
}

}  // namespace measalg
