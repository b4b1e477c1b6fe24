#ifndef NORMDERIV_TOOLS_REPORT_HPP
#define NORMDERIV_TOOLS_REPORT_HPP

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "normderiv/normderiv.hpp"

namespace normderiv::cli {

using Json = nlohmann::ordered_json;

/// Serializes with 2-space indentation, keys in insertion order and every
/// floating-point number printed with 17 significant digits. Non-finite
/// numbers become null.
std::string dump_report(const Json& report);

/// Checks the top-level report layout. Returns a description of the first
/// problem, or nullopt when the report conforms.
std::optional<std::string> validate_report(const Json& report);

Json to_json(const Vector& v);
Json to_json(const Tolerance& tol);
Json to_json(const Verdict& v);
Json to_json(const std::pair<Vector, Vector>& pair);

}  // namespace normderiv::cli

#endif  // NORMDERIV_TOOLS_REPORT_HPP
