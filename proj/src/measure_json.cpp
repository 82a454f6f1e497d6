#include "measalg/measure_json.hpp"

#include "measalg/errors.hpp"

#include <fstream>
#include <sstream>

namespace measalg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) {
    throw ParseError("measure JSON: " + where + ": " + why);
}

json exact_block(const Cyclotomic& c) {
    json coeffs = json::array();
    for (const auto& r : c.coefficients()) coeffs.push_back(r.str());
    return json{{"order", c.order()}, {"coeffs", coeffs}};
}

Cyclotomic exact_from_block(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) fail(where, "malformed exact block");
    if (!j["order"].is_number_integer()) fail(where, "exact order must be an integer");
    const int order = j["order"].get<int>();
    if (order < 1 || order > Cyclotomic::kMaxOrder) fail(where, "exact order out of range");
    if (!j["coeffs"].is_array()) fail(where, "exact coeffs must be an array");
    std::vector<Rational> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_string()) fail(where, "exact coefficients must be rational strings");
        coeffs.push_back(Rational::parse(c.get<std::string>()));
    }
    return Cyclotomic::from_power_coefficients(order, coeffs);
}

json part_to_json(const Scalar& s, bool real) {
    if (s.is_exact()) {
        if (auto g = s.exact().as_gaussian()) return (real ? g->first : g->second).str();
    }
    const Complex z = s.numeric();
    return real ? z.real() : z.imag();
}

Scalar scalar_from_parts(const json& re, const json& im, const json* exact, const std::string& where) {
    if (exact != nullptr) return exact_from_block(*exact, where);
    auto as_double = [&](const json& v) {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) return Rational::parse(v.get<std::string>()).to_double();
        fail(where, "weight components must be strings or numbers");
    };
    if (re.is_string() && im.is_string())
        return Scalar::gaussian(Rational::parse(re.get<std::string>()), Rational::parse(im.get<std::string>()));
    return Complex(as_double(re), as_double(im));
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    json j{{"re", part_to_json(s, true)}, {"im", part_to_json(s, false)}};
    if (s.is_exact() && !s.exact().as_gaussian()) j["exact"] = exact_block(s.exact());
    return j;
}

Scalar scalar_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) fail("scalar", "expected object with re, im");
    return scalar_from_parts(j["re"], j["im"], j.contains("exact") ? &j["exact"] : nullptr, "scalar");
}

json measure_to_json(const Measure& m) {
    json discrete = json::array();
    for (const auto& a : m.atoms()) {
        json atom = scalar_to_json(a.weight);
        atom["angle"] = a.position.str();
        discrete.push_back(std::move(atom));
    }
    json ac = json::array();
    for (const auto& [n, v] : m.ac()) {
        json row = json::array({n, part_to_json(v, true), part_to_json(v, false)});
        if (v.is_exact() && !v.exact().as_gaussian()) row.push_back(exact_block(v.exact()));
        ac.push_back(std::move(row));
    }
    return json{{"discrete", discrete}, {"ac", ac}};
}

Measure measure_from_json(const json& j) {
    if (!j.is_object()) fail("root", "expected an object");
    for (const auto& [key, value] : j.items())
        if (key != "discrete" && key != "ac") fail("root", "unknown key '" + key + "'");
    std::vector<Atom> atoms;
    AcTable ac;
    if (j.contains("discrete")) {
        const json& d = j["discrete"];
        if (!d.is_array()) fail("discrete", "expected an array");
        for (std::size_t i = 0; i < d.size(); ++i) {
            const std::string where = "discrete[" + std::to_string(i) + "]";
            const json& atom = d[i];
            if (!atom.is_object() || !atom.contains("re") || !atom.contains("im") || !atom.contains("angle"))
                fail(where, "expected object with re, im, angle");
            if (!atom["angle"].is_string()) fail(where, "angle must be a string");
            const json* exact = atom.contains("exact") ? &atom["exact"] : nullptr;
            try {
                atoms.push_back(Atom{scalar_from_parts(atom["re"], atom["im"], exact, where),
                                     Angle::parse(atom["angle"].get<std::string>())});
            } catch (const ParseError& e) {
                fail(where, e.what());
            }
        }
    }
    if (j.contains("ac")) {
        const json& rows = j["ac"];
        if (!rows.is_array()) fail("ac", "expected an array");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string where = "ac[" + std::to_string(i) + "]";
            const json& row = rows[i];
            if (!row.is_array() || row.size() < 3 || row.size() > 4) fail(where, "expected [n, re, im]");
            if (!row[0].is_number_integer()) fail(where, "frequency must be an integer");
            const auto n = row[0].get<std::int64_t>();
            if (ac.count(n) != 0) fail(where, "duplicate frequency");
            try {
                ac[n] = scalar_from_parts(row[1], row[2], row.size() == 4 ? &row[3] : nullptr, where);
            } catch (const ParseError& e) {
                fail(where, e.what());
            }
        }
    }
    return Measure::from_parts(std::move(atoms), std::move(ac));
}

std::string dump_measure(const Measure& m) { return measure_to_json(m).dump(2); }

Measure parse_measure(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("measure JSON: ") + e.what());
    }
    return measure_from_json(j);
}

Measure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open measure file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_measure(buffer.str());
}

void save_measure(const std::string& path, const Measure& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << dump_measure(m) << '\n';
}

}  // namespace measalg
