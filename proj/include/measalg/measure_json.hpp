#pragma once

/**
 * @file measure_json.hpp
 * @brief JSON form of measures and scalars.
 *
 *     { "discrete": [ { "re": "1/2", "im": "0", "angle": "1/3+g1" }, ... ],
 *       "ac": [ [ n, re, im ], ... ] }
 *
 * Exact Gaussian-rational values are written as "p/q" strings, numeric values
 * as JSON numbers (shortest round-trip decimal). Exact values outside ℚ(i)
 * additionally carry {"order": N, "coeffs": ["p/q", ...]} (key "exact" on
 * atoms, fourth array element on ac rows) so that reading back is lossless.
 */

#include "measalg/measure.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace measalg {

nlohmann::json scalar_to_json(const Scalar& s);
/// Accepts an object {"re","im"[, "exact"]}.
Scalar scalar_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const Measure& m);
/// Throws ParseError with the offending location.
Measure measure_from_json(const nlohmann::json& j);

std::string dump_measure(const Measure& m);
Measure parse_measure(std::string_view text);

Measure load_measure(const std::string& path);
void save_measure(const std::string& path, const Measure& m);

}  // namespace measalg
